#include "sepstab/moebius.hpp"

#include <algorithm>
#include <cmath>

namespace sepstab {

MoebiusMap MoebiusMap::normalized() const {
  Complex s = std::sqrt(det());
  if (std::abs(s) == 0.0) throw InputError("moebius: singular matrix");
  return MoebiusMap{a / s, b / s, c / s, d / s, 0};
}

Complex MoebiusMap::apply(Complex z) const {
  return (a * z + b) / (c * z + d);
}

H3Point MoebiusMap::apply(const H3Point& p) const {
  Complex z = p.horizontal();
  Complex cz_d = c * z + d;
  double den = std::norm(cz_d) + std::norm(c) * p.h * p.h;
  Complex w = ((a * z + b) * std::conj(cz_d) + a * std::conj(c) * p.h * p.h) / den;
  return H3Point{w.real(), w.imag(), p.h / den};
}

MoebiusMap operator*(const MoebiusMap& m, const MoebiusMap& n) {
  MoebiusMap r{m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
               m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d,
               std::max(m.chain, n.chain) + 1};
  if (r.chain >= 32) r = r.normalized();
  return r;
}

double frobenius_gap(const MoebiusMap& m, const MoebiusMap& n) {
  auto gap = [&](double sign) {
    return std::sqrt(std::norm(m.a - sign * n.a) + std::norm(m.b - sign * n.b) +
                     std::norm(m.c - sign * n.c) + std::norm(m.d - sign * n.d));
  };
  return std::min(gap(1.0), gap(-1.0));
}

const char* isometry_class_name(IsometryClass c) {
  switch (c) {
    case IsometryClass::Identity: return "IDENTITY";
    case IsometryClass::Parabolic: return "PARABOLIC";
    case IsometryClass::Elliptic: return "ELLIPTIC";
    case IsometryClass::Loxodromic: return "LOXODROMIC";
  }
  return "?";
}

namespace {

std::vector<Complex> boundary_fixed_points(const MoebiusMap& m, double tol) {
  // c z^2 + (d - a) z - b = 0
  std::vector<Complex> out;
  if (std::abs(m.c) <= tol) {
    if (std::abs(m.d - m.a) > tol) out.push_back(m.b / (m.d - m.a));
    return out;  // infinity is fixed too; finite points only
  }
  Complex disc = std::sqrt((m.d - m.a) * (m.d - m.a) + 4.0 * m.b * m.c);
  out.push_back((m.a - m.d + disc) / (2.0 * m.c));
  if (std::abs(disc) > tol) out.push_back((m.a - m.d - disc) / (2.0 * m.c));
  return out;
}

}  // namespace

IsometryInfo classify(const MoebiusMap& m0, double tol) {
  // the determinant check scales with the entry magnitudes: a d - b c loses
  // relative precision once the entries are large
  double scale = std::max(1.0, std::norm(m0.a) + std::norm(m0.b) + std::norm(m0.c) + std::norm(m0.d));
  if (std::abs(m0.det() - 1.0) > 1e-9 * scale) throw InputError("classify: determinant is not 1");
  MoebiusMap m = m0.normalized();
  IsometryInfo info;
  info.trace = m.trace();
  Complex t2 = info.trace * info.trace;

  bool scalar = std::abs(m.b) <= tol && std::abs(m.c) <= tol && std::abs(m.a - m.d) <= tol;
  if (scalar && std::abs(t2 - 4.0) <= tol) {
    info.cls = IsometryClass::Identity;
    return info;
  }
  if (std::abs(t2 - 4.0) <= tol) {
    info.cls = IsometryClass::Parabolic;
    info.fixed_points = boundary_fixed_points(m, tol);
    if (info.fixed_points.size() > 1) info.fixed_points.resize(1);
    return info;
  }
  // elliptic needs a real trace strictly inside (-2, 2); a purely imaginary
  // trace also makes tr^2 - 4 negative real but the element translates
  if (std::abs(info.trace.imag()) <= tol && t2.real() - 4.0 < -tol) {
    info.cls = IsometryClass::Elliptic;
    info.fixed_points = boundary_fixed_points(m, tol);
    return info;
  }
  info.cls = IsometryClass::Loxodromic;
  info.real_translation_length = 2.0 * std::abs(std::real(std::acosh(info.trace / 2.0)));
  info.fixed_points = boundary_fixed_points(m, tol);
  return info;
}

double distance(const H3Point& p, const H3Point& q) {
  double dx = p.x - q.x, dy = p.y - q.y, dh = p.h - q.h;
  double arg = 1.0 + (dx * dx + dy * dy + dh * dh) / (2.0 * p.h * q.h);
  return std::acosh(std::max(1.0, arg));
}

}  // namespace sepstab
