#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sepstab/presentation.hpp"
#include "sepstab/surface_group.hpp"

namespace sepstab {

// Shared per-genus factor machinery (Dehn tables, BFS memo).
const SurfaceGroup& surface_group(int genus);

// One syllable of a free-product normal form: a nontrivial element of a
// single factor, stored as a geodesic-length representative (canonical for
// surface factors, t^n for cyclic ones).
struct Syllable {
  int factor = 0;
  SurfaceGroup::FWord word;

  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable& x, const Syllable& y) {
    if (auto c = x.factor <=> y.factor; c != 0) return c;
    return x.word <=> y.word;
  }
};

struct NormalForm {
  std::vector<Syllable> syllables;

  bool trivial() const { return syllables.empty(); }
  int length() const;
  GroupWord word() const;  // flattened letters
  std::string key() const;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

// A conjugacy class up to inversion: lexicographically least cyclically
// reduced representative, plus the Cayley translation length ||g||.
struct CyclicClass {
  std::vector<Syllable> canonical;
  int cayley_length = 0;

  GroupWord word() const;
  std::string key() const;

  friend bool operator==(const CyclicClass&, const CyclicClass&) = default;
  friend bool operator<(const CyclicClass& x, const CyclicClass& y) {
    if (x.cayley_length != y.cayley_length) return x.cayley_length < y.cayley_length;
    return x.canonical < y.canonical;
  }
};

NormalForm reduce(const Presentation& p, const GroupWord& w);
bool is_trivial(const Presentation& p, const GroupWord& w);

// Exact geodesic word length inside one factor; letters of w must lie in the
// named factor.  Surface factors go through the memoized BFS ball.
int factor_geodesic_length(const Presentation& p, int factor, const GroupWord& w,
                           int radius_cap = 10);

CyclicClass cyclic_class(const Presentation& p, const GroupWord& w);
CyclicClass cyclic_class(const Presentation& p, const NormalForm& nf);

struct BallElement {
  NormalForm nf;
  int distance = 0;
};

// Every group element with Cayley distance <= radius, exact distances by
// breadth-first search.  This is the oracle the normal-form lengths are
// tested against.
std::vector<BallElement> enumerate_ball(const Presentation& p, int radius, int radius_cap = 8);

// Sound enumeration of separable cyclic classes with ||g|| <= max_length:
// factor-omitting classes, plus the Whitehead-certified classes for
// handlebody shape (complete there), optionally enlarged by automorphism
// images.  Sorted and deduplicated.
std::vector<CyclicClass> enumerate_separable_classes(const Presentation& p, int max_length,
                                                     int enlargement_depth = 0);

}  // namespace sepstab
