#pragma once

#include <string>
#include <vector>

#include "sepstab/moebius.hpp"
#include "sepstab/presentation.hpp"

namespace sepstab {

// Assignment of a Moebius map to each positive generator.  Surface-factor
// relators are checked on construction; defects beyond 1e-8 become warnings
// (scan slices legitimately cross non-representation points).
class Representation {
public:
  Representation(Presentation p, std::vector<MoebiusMap> generators,
                 H3Point basepoint = H3Point{0, 0, 1});

  const Presentation& presentation() const { return presentation_; }
  const H3Point& basepoint() const { return basepoint_; }
  const std::vector<MoebiusMap>& generators() const { return generators_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  const MoebiusMap& generator(int positive_index) const { return generators_.at(positive_index); }
  MoebiusMap evaluate(const GroupWord& w) const;

  std::string to_json() const;
  static Representation from_json(const Presentation& p, const std::string& text);

private:
  Presentation presentation_;
  std::vector<MoebiusMap> generators_;
  H3Point basepoint_;
  std::vector<std::string> warnings_;
};

// Orbit of the basepoint over every prefix of w (empty prefix included).
// Falls back to per-step renormalization on overflow, then throws
// UndeterminedError.
std::vector<H3Point> orbit_path(const Representation& r, const GroupWord& w);

// F2 representation with trace(A) = x, trace(B) = y, trace(AB) = z.
Representation rep_from_traces(Complex x, Complex y, Complex z);

}  // namespace sepstab
