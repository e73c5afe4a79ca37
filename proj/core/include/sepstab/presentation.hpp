#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sepstab/errors.hpp"

namespace sepstab {

enum class Shape {
  Handlebody,     // no surface factors, free rank >= 2
  SmallBody,      // exactly one surface factor, free rank >= 1
  LargeBody,      // at least two surface factors, at least three Grushko factors
  DoubleIBundle,  // exactly two surface factors, free rank 0; constructible, unsupported
};

const char* shape_name(Shape s);

// One generator occurrence: factor index, generator index within the factor,
// inversion flag.  Surface factor of genus g has generators 0..2g-1 where
// even indices are the a_i and odd the b_i; a cyclic factor has the single
// generator 0 (its handle letter).
struct Letter {
  std::uint16_t factor = 0;
  std::uint16_t index = 0;
  bool inv = false;

  Letter() = default;
  Letter(std::uint16_t f, std::uint16_t i, bool v) : factor(f), index(i), inv(v) {}

  Letter inverse() const { return Letter(factor, index, !inv); }

  friend bool operator==(const Letter& x, const Letter& y) {
    return x.factor == y.factor && x.index == y.index && x.inv == y.inv;
  }
  friend auto operator<=>(const Letter& x, const Letter& y) {
    if (auto c = x.factor <=> y.factor; c != 0) return c;
    if (auto c = x.index <=> y.index; c != 0) return c;
    return (int)x.inv <=> (int)y.inv;
  }
};

using GroupWord = std::vector<Letter>;

inline GroupWord inverse(const GroupWord& w) {
  GroupWord r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(it->inverse());
  return r;
}

// A compression-body group shape: a free product of closed surface groups
// (one per entry of surface_genera, each genus >= 2) and free_rank infinite
// cyclic handle factors.
class Presentation {
public:
  Presentation(std::vector<int> surface_genera, int free_rank);

  const std::vector<int>& surface_genera() const { return genera_; }
  int free_rank() const { return free_rank_; }
  Shape shape() const { return shape_; }

  int num_surface_factors() const { return (int)genera_.size(); }
  int num_factors() const { return (int)genera_.size() + free_rank_; }
  bool is_surface_factor(int f) const { return f < (int)genera_.size(); }
  int genus(int f) const { return genera_.at(f); }
  // Generators of factor f (1 for cyclic, 2g for surface).
  int factor_generators(int f) const {
    return is_surface_factor(f) ? 2 * genera_[f] : 1;
  }

  bool valid(Letter l) const;
  void require_valid(const GroupWord& w) const;

  // Dense id used as the fixed total order on the symmetric generating set.
  int letter_id(Letter l) const;
  int alphabet_size() const { return 2 * positive_letters_; }
  Letter letter_from_id(int id) const;
  // Number of positive generators.
  int rank() const { return positive_letters_; }

  std::string letter_name(Letter l) const;
  std::string word_to_string(const GroupWord& w) const;
  // Space-separated letters, "'" suffix for inverse; for pure free shapes
  // single letters a..z are accepted and also concatenated words like "ab'a".
  GroupWord parse_word(const std::string& text) const;

  std::string to_json() const;
  static Presentation from_json(const std::string& text);

  friend bool operator==(const Presentation& x, const Presentation& y) {
    return x.genera_ == y.genera_ && x.free_rank_ == y.free_rank_;
  }

private:
  std::vector<int> genera_;
  int free_rank_;
  Shape shape_;
  int positive_letters_;
  std::vector<int> factor_letter_base_;  // id offset per factor
};

}  // namespace sepstab
