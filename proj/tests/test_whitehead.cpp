#include <doctest.h>

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "sepstab/whitehead.hpp"

using namespace sepstab;

namespace {

Presentation f2() { return Presentation({}, 2); }
Presentation f3() { return Presentation({}, 3); }
Presentation small2() { return Presentation({2}, 1); }

std::vector<std::pair<int, int>> edge_multiset(const WhiteheadGraph& g) {
  std::vector<std::pair<int, int>> es;
  for (auto [a, b] : g.edges) es.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(es.begin(), es.end());
  return es;
}

// every cyclic class of cyclic word length <= cap, as canonical free words
std::vector<FreeWord> all_classes(int rank, int cap) {
  std::set<FreeWord> out;
  FreeWord w;
  auto rec = [&](auto&& self, int remaining) -> void {
    if (!w.empty()) out.insert(free_cyclic_canonical(w));
    if (remaining == 0) return;
    for (int c = 0; c < 2 * rank; ++c) {
      if (!w.empty() && w.back() == free_inv(c)) continue;
      w.push_back(c);
      self(self, remaining - 1);
      w.pop_back();
    }
  };
  rec(rec, cap);
  std::set<FreeWord> dedup;
  for (const FreeWord& v : out)
    if (!v.empty()) dedup.insert(v);
  return {dedup.begin(), dedup.end()};
}

bool word_omits_letter(int rank, const FreeWord& w) {
  std::vector<bool> used(rank, false);
  for (int c : w) used[c / 2] = true;
  return std::any_of(used.begin(), used.end(), [](bool b) { return !b; });
}

// independent separability oracle: close the letter-omitting classes under
// Whitehead moves within the length cap; peak reduction makes this complete
// for classes of length <= cap
std::set<FreeWord> separable_closure(int rank, int cap) {
  auto moves = whitehead_generators(rank);
  std::set<FreeWord> seen;
  std::deque<FreeWord> queue;
  for (const FreeWord& w : all_classes(rank, cap))
    if (word_omits_letter(rank, w)) {
      seen.insert(w);
      queue.push_back(w);
    }
  while (!queue.empty()) {
    FreeWord u = queue.front();
    queue.pop_front();
    for (const auto& m : moves) {
      FreeWord v = free_cyclic_canonical(apply_move(m, u));
      if (v.empty() || (int)v.size() > cap) continue;
      if (seen.insert(v).second) queue.push_back(v);
    }
  }
  return seen;
}

// exhaustive orbit minimum within the starting length (peak reduction again)
size_t orbit_min_length(int rank, const FreeWord& w0) {
  auto moves = whitehead_generators(rank);
  FreeWord start = free_cyclic_canonical(w0);
  std::set<FreeWord> seen{start};
  std::deque<FreeWord> queue{start};
  size_t best = start.size();
  while (!queue.empty()) {
    FreeWord u = queue.front();
    queue.pop_front();
    for (const auto& m : moves) {
      FreeWord v = free_cyclic_canonical(apply_move(m, u));
      if (v.size() > u.size()) continue;
      best = std::min(best, v.size());
      if (seen.insert(v).second) queue.push_back(v);
    }
  }
  return best;
}

FreeWord fw(const Presentation& p, const char* s) {
  return to_free_word(p, cyclic_class(p, p.parse_word(s)));
}

}  // namespace

TEST_CASE("whitehead graph examples") {
  Presentation p = f2();
  // a=0, a'=1, b=2, b'=3
  WhiteheadGraph g1 = whitehead_graph(p, cyclic_class(p, p.parse_word("ab")));
  CHECK(edge_multiset(g1) == std::vector<std::pair<int, int>>{{0, 3}, {1, 2}});
  CHECK_FALSE(is_connected(g1));

  WhiteheadGraph g2 = whitehead_graph(p, cyclic_class(p, p.parse_word("aba'b'")));
  CHECK(g2.edges.size() == 4);
  CHECK(is_connected(g2));
  CHECK(cut_vertices(g2).empty());

  WhiteheadGraph g3 = whitehead_graph(p, cyclic_class(p, p.parse_word("a")));
  CHECK(edge_multiset(g3) == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(isolated_vertices(g3) == std::vector<int>{2, 3});

  WhiteheadGraph g4 = whitehead_graph_of(2, fw(p, "aab"));
  CHECK(is_connected(g4));
  CHECK_FALSE(cut_vertices(g4).empty());

  CHECK_THROWS_AS(whitehead_graph(small2(), cyclic_class(small2(), small2().parse_word("t1"))),
                  InputError);
}

TEST_CASE("whitehead graph is a conjugacy invariant with |w| edges") {
  std::mt19937 rng(777);
  Presentation p = f2();
  std::uniform_int_distribution<int> pick(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    FreeWord w;
    for (int i = 0; i < 1 + trial % 8; ++i) w.push_back(pick(rng));
    w = free_cyclic_reduce(w);
    if (w.empty()) continue;
    auto base = edge_multiset(whitehead_graph_of(2, w));
    CHECK(base.size() == w.size());
    FreeWord rot(w.begin() + w.size() / 2, w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + w.size() / 2);
    CHECK(edge_multiset(whitehead_graph_of(2, rot)) == base);
    FreeWord inv;
    for (auto it = w.rbegin(); it != w.rend(); ++it) inv.push_back(free_inv(*it));
    CHECK(edge_multiset(whitehead_graph_of(2, inv)) == base);
  }
}

TEST_CASE("minimize examples") {
  Presentation p3 = f3();
  MinimizeResult r1 = minimize(p3, cyclic_class(p3, p3.parse_word("abc")));
  CHECK(r1.minimal.cayley_length == 1);

  Presentation p = f2();
  MinimizeResult r2 = minimize(p, cyclic_class(p, p.parse_word("a")));
  CHECK(r2.minimal.cayley_length == 1);
  CHECK(r2.moves.empty());

  MinimizeResult r3 = minimize(p, cyclic_class(p, p.parse_word("aba'b'")));
  CHECK(r3.minimal.cayley_length == 4);
}

TEST_CASE("minimize matches the exhaustive orbit minimum in F2 up to length 6") {
  Presentation p = f2();
  for (const FreeWord& w : all_classes(2, 6)) {
    MinimizeResult r = minimize(p, from_free_word(p, w));
    CHECK((size_t)r.minimal.cayley_length == orbit_min_length(2, w));
  }
}

TEST_CASE("is_separable_free examples") {
  Presentation p = f2();
  CHECK(is_separable_free(p, cyclic_class(p, p.parse_word("ab"))).separable);
  CHECK_FALSE(is_separable_free(p, cyclic_class(p, p.parse_word("aba'b'"))).separable);
  CHECK_FALSE(is_separable_free(p, cyclic_class(p, p.parse_word("aabb"))).separable);
  CHECK_THROWS_AS(
      is_separable_free(small2(), cyclic_class(small2(), small2().parse_word("t1"))),
      InputError);
}

TEST_CASE("is_separable_free agrees with the closure oracle in F2 (length <= 8)") {
  Presentation p = f2();
  auto oracle = separable_closure(2, 8);
  for (const FreeWord& w : all_classes(2, 8)) {
    SeparabilityCertificate cert = is_separable_free(p, from_free_word(p, w));
    CHECK(cert.separable == (oracle.count(w) != 0));
    if (!cert.separable) {
      // Whitehead's lemma direction: a non-separable minimal form fills the graph
      MinimizeResult r = minimize(p, from_free_word(p, w));
      CHECK(is_connected(whitehead_graph(p, r.minimal)));
    }
  }
}

TEST_CASE("is_separable_free agrees with the closure oracle in F3 (length <= 6)") {
  Presentation p = f3();
  auto oracle = separable_closure(3, 6);
  for (const FreeWord& w : all_classes(3, 6)) {
    CHECK(is_separable_free(p, from_free_word(p, w)).separable == (oracle.count(w) != 0));
  }
}

TEST_CASE("labeled graph construction examples") {
  Presentation q = small2();
  LabeledWhiteheadGraph g1 = labeled_whitehead_graph(q, cyclic_class(q, q.parse_word("t1")));
  REQUIRE(g1.edges.size() == 1);
  CHECK(g1.edges[0].label.empty());
  CHECK(g1.vertices.size() == 2);
  CHECK(g1.cycle_vertex_count == 1);

  LabeledWhiteheadGraph g2 = labeled_whitehead_graph(q, cyclic_class(q, q.parse_word("t1 a1")));
  REQUIRE(g2.edges.size() == 1);
  CHECK(g2.edges[0].label == SurfaceGroup::FWord{0});

  LabeledWhiteheadGraph g3 =
      labeled_whitehead_graph(q, cyclic_class(q, q.parse_word("t1 a1 t1' b1")));
  REQUIRE(g3.edges.size() == 2);
  std::set<SurfaceGroup::FWord> labels{g3.edges[0].label, g3.edges[1].label};
  CHECK(labels == std::set<SurfaceGroup::FWord>{{0}, {2}});  // a1 and b1

  LabeledWhiteheadGraph g4 = labeled_whitehead_graph(q, cyclic_class(q, q.parse_word("a1 b1")));
  CHECK(g4.no_crossings);
  CHECK(g4.edges.empty());
  CHECK(g4.note.find("no crossings") != std::string::npos);

  CHECK_THROWS_AS(labeled_whitehead_graph(f2(), cyclic_class(f2(), f2().parse_word("ab"))),
                  InputError);
}

TEST_CASE("labeled graph for a large body routes through separating discs") {
  Presentation p({2, 2}, 1);
  CyclicClass c = cyclic_class(p, p.parse_word("a1_1 a2_1"));
  LabeledWhiteheadGraph g = labeled_whitehead_graph(p, c);
  // two crossings of the separating disc, one label per piece
  REQUIRE(g.edges.size() == 2);
  CHECK(g.cycle_vertex_count == 2);  // one handle, one separating disc
  std::set<int> pieces{g.edges[0].piece, g.edges[1].piece};
  CHECK(pieces == std::set<int>{0, 1});
}

TEST_CASE("strong connectivity examples") {
  Presentation q = small2();
  auto report = [&](const char* w) {
    return strong_connectivity(q, labeled_whitehead_graph(q, cyclic_class(q, q.parse_word(w))));
  };
  CHECK_FALSE(report("t1").all_strongly_connected());
  CHECK(report("t1 a1").all_strongly_connected());
  CHECK(report("t1 a1 t1' b1").all_strongly_connected());
}

TEST_CASE("isolated disc vertices keep components from being strongly connected") {
  Presentation p({2, 2}, 1);
  // lives in the two surface pieces, never meets the handle disc
  CyclicClass c = cyclic_class(p, p.parse_word("a1_1 a2_1"));
  StrongConnectivityReport r = strong_connectivity(p, labeled_whitehead_graph(p, c));
  CHECK_FALSE(r.all_strongly_connected());
  CHECK(classify_labeled(p, c) == LabeledClassification::ConsistentWithSeparable);
}

TEST_CASE("strong connectivity is invariant under vertex-potential relabeling") {
  std::mt19937 rng(424242);
  Presentation q = small2();
  std::uniform_int_distribution<int> pick(0, 7);
  std::uniform_int_distribution<int> len(0, 3);
  for (const char* w : {"t1", "t1 a1", "t1 a1 t1' b1", "t1 t1 a1", "t1 b1 t1 a1"}) {
    LabeledWhiteheadGraph g = labeled_whitehead_graph(q, cyclic_class(q, q.parse_word(w)));
    StrongConnectivityReport base = strong_connectivity(q, g);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<SurfaceGroup::FWord> pots(g.cycle_vertex_count);
      for (auto& h : pots) {
        int n = len(rng);
        for (int i = 0; i < n; ++i) h.push_back((std::uint8_t)pick(rng));
      }
      StrongConnectivityReport rel = strong_connectivity(q, relabel(g, pots));
      REQUIRE(rel.components.size() == base.components.size());
      for (size_t i = 0; i < base.components.size(); ++i)
        CHECK(rel.components[i].strongly_connected == base.components[i].strongly_connected);
    }
  }
}

TEST_CASE("strong cutpoint search") {
  Presentation q = small2();
  CHECK_FALSE(
      has_strong_cutpoint(q, labeled_whitehead_graph(q, cyclic_class(q, q.parse_word("t1 a1"))))
          .has_value());
  // frozen from the exhaustive partition search: the two nontrivially
  // labeled loops admit no decomposition with a dead side
  CHECK_FALSE(has_strong_cutpoint(
                  q, labeled_whitehead_graph(q, cyclic_class(q, q.parse_word("t1 a1 t1' b1"))))
                  .has_value());

  // two edges at a shared vertex, one labeled a1 and one labeled identity
  Presentation p3({2}, 3);
  LabeledWhiteheadGraph g;
  for (int h = 0; h < 3; ++h) {
    g.vertices.push_back(DiscSide{DiscSide::Kind::Handle, h, false});
    g.vertices.push_back(DiscSide{DiscSide::Kind::Handle, h, true});
    g.piece_of_vertex.push_back(0);
    g.piece_of_vertex.push_back(0);
    g.cycle_vertex.push_back(h);
    g.cycle_vertex.push_back(h);
  }
  g.cycle_vertex_count = 3;
  g.edges.push_back(LabeledEdge{0, 2, 0, {0}});
  g.edges.push_back(LabeledEdge{0, 4, 0, {}});
  auto cut = has_strong_cutpoint(p3, g);
  REQUIRE(cut.has_value());
  CHECK(*cut == 0);
}

TEST_CASE("classify_labeled examples") {
  Presentation q = small2();
  auto classify = [&](const char* w) {
    return classify_labeled(q, cyclic_class(q, q.parse_word(w)));
  };
  CHECK(classify("t1") == LabeledClassification::ConsistentWithSeparable);
  CHECK(classify("t1 a1") == LabeledClassification::NotSeparableCertified);
  CHECK(classify("a1 b1") == LabeledClassification::ConsistentWithSeparable);
  CHECK_THROWS_AS(classify_labeled(Presentation({2, 2}, 0),
                                   cyclic_class(q, q.parse_word("a1"))),
                  UnsupportedShapeError);

  // the enumerator never emits anything the labeled criterion rules out
  for (const CyclicClass& c : enumerate_separable_classes(q, 2))
    CHECK(classify_labeled(q, c) == LabeledClassification::ConsistentWithSeparable);
}
