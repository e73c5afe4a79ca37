#pragma once

#include "sepstab/moebius.hpp"

namespace sepstab {

// Totally geodesic plane: hemisphere over a boundary circle, or vertical
// half-plane over a boundary line.
struct GeodesicPlane {
  bool vertical = false;
  // hemisphere
  Complex center{0};
  double radius = 1;
  // vertical: line through `point` with unit `direction`
  Complex point{0};
  Complex direction{1};

  static GeodesicPlane hemisphere(Complex center, double radius);
  static GeodesicPlane half_plane(Complex point, Complex direction);
};

// Perpendicular bisector of the segment [p, q]; reflection through it swaps
// p and q.  Throws InputError when p = q.
GeodesicPlane bisector_plane(const H3Point& p, const H3Point& q);

// hyperbolic reflection (inversion in the boundary circle / Euclidean
// reflection across the boundary line)
H3Point reflect(const GeodesicPlane& plane, const H3Point& p);

// True iff A and B lie in different closed half-spaces bounded by P, decided
// on the boundary circles.  Throws UndeterminedError on tangency within tol
// and InputError when a plane meets P.
bool plane_separates(const GeodesicPlane& P, const GeodesicPlane& A, const GeodesicPlane& B,
                     double tol = 1e-9);

// 0 for intersecting (or asymptotic) planes, else arccosh of the inversive
// distance of the boundary circles.
double plane_distance(const GeodesicPlane& P, const GeodesicPlane& Q);

}  // namespace sepstab
