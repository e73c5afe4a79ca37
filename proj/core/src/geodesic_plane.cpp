#include "sepstab/geodesic_plane.hpp"

#include <cmath>

namespace sepstab {

GeodesicPlane GeodesicPlane::hemisphere(Complex center, double radius) {
  if (!(radius > 0)) throw InputError("plane: hemisphere radius must be positive");
  GeodesicPlane p;
  p.vertical = false;
  p.center = center;
  p.radius = radius;
  return p;
}

GeodesicPlane GeodesicPlane::half_plane(Complex point, Complex direction) {
  double n = std::abs(direction);
  if (n == 0.0) throw InputError("plane: direction must be nonzero");
  GeodesicPlane p;
  p.vertical = true;
  p.point = point;
  p.direction = direction / n;
  return p;
}

GeodesicPlane bisector_plane(const H3Point& p, const H3Point& q) {
  Complex z1 = p.horizontal(), z2 = q.horizontal();
  double h1 = p.h, h2 = q.h;
  double sep = std::abs(z1 - z2) + std::abs(h1 - h2);
  if (sep < 1e-14 * (std::abs(z1) + std::abs(z2) + h1 + h2))
    throw InputError("bisector: points coincide");
  // h2 |X - p|^2 = h1 |X - q|^2 describes the equidistant set
  if (std::abs(h1 - h2) < 1e-12 * (h1 + h2)) {
    Complex mid = (z1 + z2) / 2.0;
    Complex dir = (z2 - z1) * Complex(0, 1);
    return GeodesicPlane::half_plane(mid, dir);
  }
  Complex c = (h2 * z1 - h1 * z2) / (h2 - h1);
  // |center|^2 - e simplifies exactly to h1 h2 (|dz|^2 + dh^2) / dh^2
  double dh = h2 - h1;
  double r2 = h1 * h2 * (std::norm(z1 - z2) + dh * dh) / (dh * dh);
  if (!(r2 > 0)) throw InputError("bisector: degenerate configuration");
  return GeodesicPlane::hemisphere(c, std::sqrt(r2));
}

H3Point reflect(const GeodesicPlane& plane, const H3Point& p) {
  if (plane.vertical) {
    Complex w = plane.point + plane.direction * plane.direction * std::conj(p.horizontal() - plane.point);
    return H3Point{w.real(), w.imag(), p.h};
  }
  Complex dz = p.horizontal() - plane.center;
  double n = std::norm(dz) + p.h * p.h;
  double s = plane.radius * plane.radius / n;
  Complex w = plane.center + s * dz;
  return H3Point{w.real(), w.imag(), s * p.h};
}

namespace {

// signed distance of z from the boundary line of a vertical plane
double line_offset(const GeodesicPlane& line, Complex z) {
  return std::imag((z - line.point) / line.direction);
}

// which closed half-space of P a disjoint plane lies in; -1/+1, throws on
// tangency or crossing
int side_of(const GeodesicPlane& P, const GeodesicPlane& A, double tol) {
  if (!P.vertical && !A.vertical) {
    double d = std::abs(A.center - P.center);
    double eps = tol * (d + P.radius + A.radius);  // scale-free tangency band
    if (std::abs(P.radius - (d + A.radius)) <= eps || std::abs(d - (P.radius + A.radius)) <= eps ||
        std::abs(A.radius - (d + P.radius)) <= eps)
      throw UndeterminedError("plane separation: tangent boundary circles");
    if (d + A.radius < P.radius) return -1;  // A inside the disc of P
    if (d > P.radius + A.radius || d + P.radius < A.radius) return 1;
    throw InputError("plane separation: planes intersect");
  }
  if (!P.vertical && A.vertical) {
    double off = std::abs(line_offset(A, P.center));
    if (std::abs(off - P.radius) <= tol * (off + P.radius))
      throw UndeterminedError("plane separation: line tangent to circle");
    if (off > P.radius) return 1;  // a line never sits inside the disc
    throw InputError("plane separation: planes intersect");
  }
  if (P.vertical && !A.vertical) {
    double off = line_offset(P, A.center);
    if (std::abs(std::abs(off) - A.radius) <= tol * (std::abs(off) + A.radius))
      throw UndeterminedError("plane separation: line tangent to circle");
    if (std::abs(off) > A.radius) return off > 0 ? 1 : -1;
    throw InputError("plane separation: planes intersect");
  }
  double cross = std::abs(std::imag(A.direction / P.direction));
  if (cross > tol) throw InputError("plane separation: planes intersect");
  double off = line_offset(P, A.point);
  if (std::abs(off) <= tol) throw UndeterminedError("plane separation: coincident lines");
  return off > 0 ? 1 : -1;
}

}  // namespace

bool plane_separates(const GeodesicPlane& P, const GeodesicPlane& A, const GeodesicPlane& B,
                     double tol) {
  return side_of(P, A, tol) != side_of(P, B, tol);
}

double plane_distance(const GeodesicPlane& P, const GeodesicPlane& Q) {
  if (!P.vertical && !Q.vertical) {
    double d = std::abs(P.center - Q.center);
    double delta = (d * d - P.radius * P.radius - Q.radius * Q.radius) / (2 * P.radius * Q.radius);
    if (std::abs(delta) <= 1.0) return 0.0;
    return std::acosh(std::abs(delta));
  }
  if (P.vertical && Q.vertical) return 0.0;  // parallel lines are asymptotic
  const GeodesicPlane& line = P.vertical ? P : Q;
  const GeodesicPlane& circ = P.vertical ? Q : P;
  double off = std::abs(line_offset(line, circ.center));
  if (off <= circ.radius) return 0.0;
  return std::acosh(off / circ.radius);
}

}  // namespace sepstab
