#include <doctest.h>

#include <cmath>
#include <random>

#include "sepstab/stability.hpp"
#include "sepstab/whitehead.hpp"

using namespace sepstab;

namespace {

const double kE = std::exp(1.0);

MoebiusMap diag(double lambda) { return MoebiusMap{lambda, 0.0, 0.0, 1.0 / lambda}; }

// two loxodromics with orthogonal axes and disjoint isometric circles
Representation schottky(double mu = 1.5) {
  double c = std::cosh(mu), s = std::sinh(mu);
  MoebiusMap A{c, s, s, c};
  MoebiusMap B{c, Complex(0, s), Complex(0, -s), c};
  return Representation(Presentation({}, 2), {A, B});
}

MoebiusMap random_map(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  MoebiusMap m;
  do {
    m = MoebiusMap{Complex(u(rng), u(rng)), Complex(u(rng), u(rng)),
                   Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
  } while (std::abs(m.det()) < 0.1);
  return m.normalized();
}

}  // namespace

TEST_CASE("score basics") {
  Presentation p({}, 2);
  Representation r(p, {diag(kE), diag(2.0)});
  ScoreRecord s2 = score(r, p, 2);
  // the class a contributes translation length 2 over word length 1
  CyclicClass a = cyclic_class(p, p.parse_word("a"));
  ScoreRecord s1 = score(r, p, 1);
  CHECK(s1.classes_tested == 2);
  // b's axis is shorter, so b is the argmin at depth 1
  CHECK(s1.argmin == cyclic_class(p, p.parse_word("b")));
  CHECK(s1.max_ratio == doctest::Approx(2.0).epsilon(1e-12));
  ScoreRecord s4 = score(r, p, 4);
  CHECK(s4.min_ratio <= s2.min_ratio);
  CHECK(s2.min_ratio <= s1.min_ratio);
  (void)a;
}

TEST_CASE("score is conjugation invariant and basepoint free") {
  Presentation p({}, 2);
  Representation base = schottky();
  ScoreRecord ref = score(base, p, 3);
  std::mt19937 rng(10101);
  for (int i = 0; i < 100; ++i) {
    MoebiusMap g = random_map(rng);
    std::vector<MoebiusMap> gens;
    for (const MoebiusMap& m : base.generators()) gens.push_back((g * m * g.inverse()).normalized());
    Representation conj(p, gens, H3Point{0.3, -0.2, 2.0});
    ScoreRecord got = score(conj, p, 3);
    CHECK(got.min_ratio == doctest::Approx(ref.min_ratio).epsilon(1e-8));
    CHECK(got.max_ratio == doctest::Approx(ref.max_ratio).epsilon(1e-8));
  }
}

TEST_CASE("score is exactly invariant under signed generator permutations") {
  Presentation p({}, 2);
  Representation base = schottky();
  ScoreRecord ref = score(base, p, 3);
  int count = 0;
  for (const WhiteheadMove& m : whitehead_generators(2)) {
    if (m.kind != WhiteheadMove::Kind::Permutation) continue;
    ++count;
    std::vector<MoebiusMap> gens;
    for (int i = 0; i < 2; ++i) {
      int img = m.image[2 * i];
      MoebiusMap g = base.generators()[img / 2];
      gens.push_back(img & 1 ? g.inverse() : g);
    }
    ScoreRecord got = score(Representation(p, gens), p, 3);
    CHECK(got.min_ratio == ref.min_ratio);
    CHECK(got.max_ratio == ref.max_ratio);
  }
  CHECK(count == 3);  // the generating inversions and the swap
}

TEST_CASE("score decreases with depth on random representations") {
  Presentation p({}, 2);
  std::mt19937 rng(432432);
  for (int i = 0; i < 20; ++i) {
    Representation r(p, {random_map(rng), random_map(rng)});
    CHECK(score(r, p, 4).min_ratio <= score(r, p, 2).min_ratio + 1e-12);
  }
}

TEST_CASE("nesting certificate on a diagonal axis") {
  Presentation p({}, 2);
  Representation r(p, {diag(kE * kE), diag(2.0)});
  CyclicClass a = cyclic_class(p, p.parse_word("a"));
  NestingResult res = nesting_certificate(r, a, NestingParams{1, 0.5, 5});
  CHECK(res.passed);
  CHECK(res.min_spacing == doctest::Approx(4.0).epsilon(1e-9));
  // any c below 4 passes, anything above fails
  CHECK_FALSE(nesting_certificate(r, a, NestingParams{1, 4.5, 5}).passed);
}

TEST_CASE("nesting certificate fails on a parabolic") {
  Presentation p({}, 2);
  Representation r(p, {MoebiusMap{1, 1, 0, 1}, diag(2.0)});
  CyclicClass a = cyclic_class(p, p.parse_word("a"));
  NestingResult res = nesting_certificate(r, a, NestingParams{1, 0.05, 8});
  CHECK_FALSE(res.passed);
}

TEST_CASE("certify rejects parabolic separable witnesses") {
  Presentation p({}, 2);
  Representation r = rep_from_traces(2, 3, 3);
  StabilityVerdict v = certify(r, p, 4);
  CHECK(v.kind == VerdictKind::RejectedParabolic);
  REQUIRE(v.witness.has_value());
  CHECK(p.word_to_string(v.witness->word()) == "a");
  // stable under tightening the tolerance tenfold
  CHECK(certify(r, p, 4, NestingParams{}, 1e-11).kind == VerdictKind::RejectedParabolic);
}

TEST_CASE("certify rejects elliptic separable witnesses") {
  Presentation p({}, 2);
  Representation r = rep_from_traces(1, 3, 3);
  StabilityVerdict v = certify(r, p, 3);
  CHECK(v.kind == VerdictKind::RejectedElliptic);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness_isometry == "ELLIPTIC");
}

TEST_CASE("certify passes a Schottky representation") {
  Presentation p({}, 2);
  StabilityVerdict v = certify(schottky(), p, 4);
  CHECK(v.kind == VerdictKind::CertifiedAtDepth);
  CHECK(v.score.min_ratio > 0);
  for (const auto& cn : v.nesting) {
    CHECK(cn.result.passed);
    // a passed nesting implies a loxodromic image with positive ratio
    IsometryInfo info = classify(schottky().evaluate(cn.cls.word()).normalized(), 1e-9);
    CHECK(info.cls == IsometryClass::Loxodromic);
    CHECK(info.real_translation_length > 0);
  }
  std::string j = v.to_json(p);
  CHECK(j.find("CERTIFIED_AT_DEPTH") != std::string::npos);
  CHECK(j.find("advisory_ratio") != std::string::npos);
  CHECK(v.advisory_met);
  // the advisory floor is reported but never changes the verdict kind
  StabilityVerdict strict = certify(schottky(), p, 4, NestingParams{}, 1e-10, 0, 100.0);
  CHECK(strict.kind == VerdictKind::CertifiedAtDepth);
  CHECK_FALSE(strict.advisory_met);
}

TEST_CASE("default test set for F2") {
  Presentation p({}, 2);
  auto w = default_test_set(p);
  REQUIRE(w.size() == 4);
  CHECK(w[0] == cyclic_class(p, p.parse_word("a")));
  CHECK(w[1] == cyclic_class(p, p.parse_word("b")));
  CHECK(w[2] == cyclic_class(p, p.parse_word("ab")));
  CHECK(w[3] == cyclic_class(p, p.parse_word("ab'")));
}

TEST_CASE("census counts signed permutations at the length-preserving bound") {
  Presentation p({}, 2);
  auto w = default_test_set(p);
  CensusResult r = automorphism_census(p, w, 1.0, 4);
  CHECK(r.complete);
  // 2^n n! signed permutation classes always qualify at N = 1
  CHECK(r.qualifying >= 8);
  // below N = 1 nothing qualifies: images of length-1 classes never shorten
  CensusResult strict = automorphism_census(p, w, 0.5, 4);
  CHECK(strict.qualifying == 0);
}
