#pragma once

#include <complex>
#include <vector>

#include "sepstab/errors.hpp"

namespace sepstab {

using Complex = std::complex<double>;

struct H3Point {
  double x = 0, y = 0, h = 1;  // upper half-space, h > 0

  Complex horizontal() const { return Complex(x, y); }
};

// Element of PSL(2,C): unit-determinant matrix identified with its negation.
struct MoebiusMap {
  Complex a{1}, b{0}, c{0}, d{1};
  int chain = 0;  // compositions since the last renormalization

  static MoebiusMap identity() { return MoebiusMap{}; }

  Complex det() const { return a * d - b * c; }
  Complex trace() const { return a + d; }
  MoebiusMap inverse() const { return MoebiusMap{d, -b, -c, a, chain}; }

  // divide by a square root of the determinant
  MoebiusMap normalized() const;

  // boundary action (z may be infinity via huge values; callers avoid poles)
  Complex apply(Complex z) const;
  H3Point apply(const H3Point& p) const;

  // composition, renormalizing every 32 steps to bound determinant drift
  friend MoebiusMap operator*(const MoebiusMap& m, const MoebiusMap& n);
};

double frobenius_gap(const MoebiusMap& m, const MoebiusMap& n);  // min over +-n

enum class IsometryClass { Identity, Parabolic, Elliptic, Loxodromic };

const char* isometry_class_name(IsometryClass c);

struct IsometryInfo {
  IsometryClass cls = IsometryClass::Identity;
  Complex trace{2};
  double real_translation_length = 0;
  std::vector<Complex> fixed_points;  // boundary fixed points when defined
};

// Trace classification; tol bounds both the identity test and the parabolic
// band |tr^2 - 4|.  Throws InputError when the determinant is off unit.
IsometryInfo classify(const MoebiusMap& m, double tol = 1e-10);

double distance(const H3Point& p, const H3Point& q);

}  // namespace sepstab
