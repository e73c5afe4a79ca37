#pragma once

#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "sepstab/errors.hpp"

namespace sepstab {

// One closed-surface factor, genus g >= 2, standard one-relator presentation
// [a_1,b_1]...[a_g,b_g].  Words over the factor are sequences of letter codes
// 2*index + (inverted ? 1 : 0), index in [0, 2g).  The presentation satisfies
// C'(1/6), so Dehn's algorithm decides the word problem, and Dehn-reduced
// words are geodesic in the {4g,4g} tessellation.
class SurfaceGroup {
public:
  using FWord = std::vector<std::uint8_t>;

  explicit SurfaceGroup(int genus);

  int genus() const { return genus_; }
  int alphabet() const { return 4 * genus_; }
  const FWord& relator() const { return relator_; }

  static std::uint8_t inv(std::uint8_t c) { return c ^ 1; }
  static FWord inverse(const FWord& w);
  static FWord free_reduce(const FWord& w);

  // Greedy Dehn reduction: replace any subword longer than half the relator
  // by the shorter complement until none remains.
  FWord dehn_reduce(FWord w) const;
  bool is_trivial(const FWord& w) const { return dehn_reduce(w).empty(); }
  bool equal(const FWord& u, const FWord& v) const;

  // Unique per-element key: lexicographically least geodesic representative,
  // the minimum of the orbit of the Dehn-reduced word under half-relator
  // swaps (length-preserving).
  FWord canonical(const FWord& w) const;

  // Least representative of the conjugacy class: orbit under rotations and
  // half-relator swaps of the cyclically Dehn-reduced word.  Does not fold in
  // inversion; callers wanting class-up-to-inversion take the min with the
  // canonical of the inverse.
  FWord cyclic_canonical(const FWord& w) const;

  // Exact geodesic length by breadth-first search of the Cayley ball,
  // memoized.  Throws UndeterminedError past radius_cap.
  int geodesic_length(const FWord& w, int radius_cap = 10) const;

  // All canonical words at distance exactly r (grows the memo as needed).
  std::vector<FWord> sphere(int r, int radius_cap = 10) const;

private:
  struct SeqHash {
    size_t operator()(const FWord& w) const {
      size_t h = 1469598103934665603ull;
      for (auto c : w) h = (h ^ c) * 1099511628211ull;
      return h;
    }
  };

  // Equal-length neighbors via half-relator swaps; cyclic=true lets windows
  // wrap around the end of the word.
  std::vector<FWord> half_swaps(const FWord& w, bool cyclic) const;
  FWord cyclic_dehn_reduce(FWord w) const;
  void grow_ball(int radius) const;

  int genus_;
  FWord relator_;
  // window (length 2g+1) -> replacement (length 2g-1), and the equal-length
  // half tables (length 2g -> 2g)
  std::unordered_map<FWord, FWord, SeqHash> long_window_;
  std::unordered_map<FWord, FWord, SeqHash> half_window_;

  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<FWord, int, SeqHash> dist_;
  mutable std::vector<std::vector<FWord>> spheres_;
};

}  // namespace sepstab
