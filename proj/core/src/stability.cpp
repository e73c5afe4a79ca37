#include "sepstab/stability.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "sepstab/geodesic_plane.hpp"

namespace sepstab {

const char* verdict_kind_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::CertifiedAtDepth: return "CERTIFIED_AT_DEPTH";
    case VerdictKind::RejectedParabolic: return "REJECTED_PARABOLIC";
    case VerdictKind::RejectedElliptic: return "REJECTED_ELLIPTIC";
    case VerdictKind::Undetermined: return "UNDETERMINED";
  }
  return "?";
}

int verdict_kind_code(VerdictKind k) {
  switch (k) {
    case VerdictKind::CertifiedAtDepth: return 0;
    case VerdictKind::RejectedParabolic: return 1;
    case VerdictKind::RejectedElliptic: return 2;
    case VerdictKind::Undetermined: return 3;
  }
  return 3;
}

ScoreRecord score(const Representation& rep, const Presentation& p, int N, int enlargement) {
  std::vector<CyclicClass> classes = enumerate_separable_classes(p, N, enlargement);
  if (classes.empty()) throw InputError("score: no separable classes at this depth");
  ScoreRecord rec;
  rec.depth = N;
  rec.classes_tested = (int)classes.size();
  bool first = true;
  for (const CyclicClass& g : classes) {
    IsometryInfo info = classify(rep.evaluate(g.word()).normalized(), 1e-9);
    double ratio = info.real_translation_length / g.cayley_length;
    if (first || ratio < rec.min_ratio) {
      rec.min_ratio = ratio;
      rec.argmin = g;
    }
    rec.max_ratio = first ? ratio : std::max(rec.max_ratio, ratio);
    first = false;
  }
  return rec;
}

NestingResult nesting_certificate(const Representation& rep, const CyclicClass& g,
                                  const NestingParams& params) {
  if (params.stride < 1 || params.reps < 3 || !(params.spacing > 0))
    throw InputError("nesting: stride >= 1, reps >= 3, spacing > 0 required");
  GroupWord period = g.word();
  if (period.empty()) throw InputError("nesting: trivial class");
  GroupWord laid;
  for (int k = 0; k < params.reps; ++k) laid.insert(laid.end(), period.begin(), period.end());

  const size_t stride = (size_t)params.stride;
  const size_t nsamples = laid.size() / stride + 1;
  NestingResult res;
  if (nsamples < 3) {
    res.note = "too few subsample points for a nested chain";
    return res;
  }
  // relative isometries between consecutive subsample frames; each plane is
  // examined in the frame of its left endpoint, which keeps coordinates near
  // the basepoint while long orbits would underflow toward the boundary
  std::vector<MoebiusMap> rel;
  for (size_t k = 0; k + 1 < nsamples; ++k) {
    GroupWord seg(laid.begin() + (long)(k * stride), laid.begin() + (long)((k + 1) * stride));
    rel.push_back(rep.evaluate(seg).normalized());
  }
  const H3Point o = rep.basepoint();
  res.min_spacing = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j + 1 < rel.size(); ++j) {
    H3Point b = o;
    H3Point c = rel[j].apply(o);
    H3Point d = (rel[j] * rel[j + 1]).apply(o);
    if (distance(b, c) < 1e-12 || distance(c, d) < 1e-12) {
      res.note = "coincident subsample points at index " + std::to_string(j);
      return res;
    }
    GeodesicPlane plane_j = bisector_plane(b, c);
    GeodesicPlane plane_next = bisector_plane(c, d);
    if (j > 0) {
      H3Point a = rel[j - 1].inverse().normalized().apply(o);
      if (distance(a, b) < 1e-12) {
        res.note = "coincident subsample points at index " + std::to_string(j - 1);
        return res;
      }
      GeodesicPlane plane_prev = bisector_plane(a, b);
      bool sep;
      try {
        sep = plane_separates(plane_j, plane_prev, plane_next);
      } catch (const InputError&) {
        res.note = "planes cross at index " + std::to_string(j);
        return res;
      }
      if (!sep) {
        res.note = "plane " + std::to_string(j) + " fails to separate its neighbors";
        return res;
      }
    }
    res.min_spacing = std::min(res.min_spacing, plane_distance(plane_j, plane_next));
  }
  res.passed = res.min_spacing > params.spacing;
  if (!res.passed && res.note.empty()) res.note = "plane spacing below the floor";
  return res;
}

StabilityVerdict certify(const Representation& rep, const Presentation& p, int N,
                         const NestingParams& params, double tol, int enlargement,
                         double advisory_ratio) {
  return certify_with_classes(rep, p, N, enumerate_separable_classes(p, N, enlargement), params,
                              tol, advisory_ratio);
}

StabilityVerdict certify_with_classes(const Representation& rep, const Presentation& p, int N,
                                      const std::vector<CyclicClass>& classes,
                                      const NestingParams& params, double tol,
                                      double advisory_ratio) {
  StabilityVerdict v;
  v.params = params;
  v.tol = tol;
  v.advisory_ratio = advisory_ratio;
  if (classes.empty()) throw InputError("certify: no separable classes at this depth");

  v.score.depth = N;
  v.score.classes_tested = (int)classes.size();
  bool first = true;
  for (const CyclicClass& g : classes) {
    IsometryInfo info = classify(rep.evaluate(g.word()).normalized(), tol);
    double ratio = info.real_translation_length / g.cayley_length;
    if (first || ratio < v.score.min_ratio) {
      v.score.min_ratio = ratio;
      v.score.argmin = g;
    }
    v.score.max_ratio = first ? ratio : std::max(v.score.max_ratio, ratio);
    first = false;
    if (!v.witness && info.cls != IsometryClass::Loxodromic) {
      v.witness = g;
      v.witness_isometry = isometry_class_name(info.cls);
      v.kind = info.cls == IsometryClass::Parabolic ? VerdictKind::RejectedParabolic
                                                    : VerdictKind::RejectedElliptic;
    }
  }
  v.advisory_met = v.score.min_ratio >= advisory_ratio;
  if (v.witness) return v;

  bool all_passed = true;
  bool any_undetermined = false;
  for (const CyclicClass& g : classes) {
    StabilityVerdict::ClassNesting cn;
    cn.cls = g;
    try {
      cn.result = nesting_certificate(rep, g, params);
    } catch (const UndeterminedError& e) {
      cn.undetermined = true;
      cn.result.note = e.what();
      any_undetermined = true;
    }
    all_passed = all_passed && cn.result.passed;
    v.nesting.push_back(std::move(cn));
  }
  if (all_passed && !any_undetermined && v.score.min_ratio > 0)
    v.kind = VerdictKind::CertifiedAtDepth;
  else
    v.kind = VerdictKind::Undetermined;
  return v;
}

std::string StabilityVerdict::to_json(const Presentation& p) const {
  nlohmann::json j;
  j["kind"] = verdict_kind_name(kind);
  j["score"] = {{"depth", score.depth},
                {"min_ratio", score.min_ratio},
                {"max_ratio", score.max_ratio},
                {"argmin", p.word_to_string(score.argmin.word())},
                {"classes_tested", score.classes_tested}};
  if (witness) {
    j["witness"] = p.word_to_string(witness->word());
    j["witness_isometry"] = witness_isometry;
  }
  nlohmann::json nests = nlohmann::json::array();
  for (const auto& cn : nesting) {
    nests.push_back({{"class", p.word_to_string(cn.cls.word())},
                     {"passed", cn.result.passed},
                     {"min_spacing", cn.result.min_spacing},
                     {"undetermined", cn.undetermined},
                     {"note", cn.result.note}});
  }
  j["nesting"] = nests;
  j["params"] = {{"stride", params.stride}, {"spacing", params.spacing}, {"reps", params.reps}};
  j["tol"] = tol;
  j["advisory_ratio"] = advisory_ratio;
  j["advisory_met"] = advisory_met;
  return j.dump(2);
}

std::vector<CyclicClass> default_test_set(const Presentation& p) {
  std::vector<CyclicClass> out;
  for (int i = 0; i < p.rank(); ++i) {
    GroupWord w{p.letter_from_id(2 * i)};
    out.push_back(cyclic_class(p, w));
  }
  for (int i = 0; i < p.rank(); ++i)
    for (int j = i + 1; j < p.rank(); ++j) {
      for (bool inv : {false, true}) {
        GroupWord w{p.letter_from_id(2 * i), p.letter_from_id(2 * j + (inv ? 1 : 0))};
        out.push_back(cyclic_class(p, w));
      }
    }
  return out;
}

}  // namespace sepstab
