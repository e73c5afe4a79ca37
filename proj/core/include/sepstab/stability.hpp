#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sepstab/normal_form.hpp"
#include "sepstab/representation.hpp"

namespace sepstab {

struct ScoreRecord {
  int depth = 0;
  double min_ratio = 0;
  double max_ratio = 0;
  CyclicClass argmin;
  int classes_tested = 0;
};

struct NestingParams {
  int stride = 2;       // orbit subsample step i
  double spacing = 0.01;  // required plane gap c
  int reps = 6;         // periods of the cyclic word laid out
};

struct NestingResult {
  bool passed = false;
  double min_spacing = 0;
  std::string note;
};

enum class VerdictKind {
  CertifiedAtDepth,
  RejectedParabolic,
  RejectedElliptic,  // also finite-order images collapsing to the identity
  Undetermined,
};

const char* verdict_kind_name(VerdictKind k);
int verdict_kind_code(VerdictKind k);  // 0 certified, 1 parabolic, 2 elliptic, 3 undetermined

struct StabilityVerdict {
  VerdictKind kind = VerdictKind::Undetermined;
  ScoreRecord score;
  std::optional<CyclicClass> witness;  // non-loxodromic separable class
  std::string witness_isometry;
  struct ClassNesting {
    CyclicClass cls;
    NestingResult result;
    bool undetermined = false;
  };
  std::vector<ClassNesting> nesting;
  NestingParams params;
  double tol = 1e-10;
  // advisory score floor: reported alongside the verdict, never changes it
  double advisory_ratio = 0.05;
  bool advisory_met = false;

  std::string to_json(const Presentation& p) const;
};

// min and max of translation length over Cayley length across the separable
// enumeration at depth N
ScoreRecord score(const Representation& rep, const Presentation& p, int N, int enlargement = 0);

// Lay out g^reps from the basepoint, subsample every `stride` steps, and
// check that consecutive bisector planes nest with gaps above `spacing`.
NestingResult nesting_certificate(const Representation& rep, const CyclicClass& g,
                                  const NestingParams& params);

StabilityVerdict certify(const Representation& rep, const Presentation& p, int N,
                         const NestingParams& params = {}, double tol = 1e-10,
                         int enlargement = 0, double advisory_ratio = 0.05);

// same verdict with the separable enumeration supplied by the caller, so a
// scan over many representations enumerates once
StabilityVerdict certify_with_classes(const Representation& rep, const Presentation& p, int N,
                                      const std::vector<CyclicClass>& classes,
                                      const NestingParams& params = {}, double tol = 1e-10,
                                      double advisory_ratio = 0.05);

// generators plus two-fold products of distinct generators
std::vector<CyclicClass> default_test_set(const Presentation& p);

struct CensusResult {
  std::size_t qualifying = 0;  // outer classes with ||f(w)|| <= N ||w|| on all of W
  std::size_t outer_classes = 0;
  bool complete = true;  // false when the dedup budget was exhausted
};

// Outer automorphisms reached by at most move_budget Whitehead moves,
// deduplicated up to inner automorphisms.
CensusResult automorphism_census(const Presentation& p, const std::vector<CyclicClass>& w_set,
                                 double N, int move_budget,
                                 std::size_t state_budget = 2'000'000);

}  // namespace sepstab
