#include <algorithm>
#include <deque>
#include <numeric>

#include "sepstab/whitehead.hpp"

namespace sepstab {

namespace {

int num_handles(const Presentation& p) { return p.free_rank(); }
int num_separating(const Presentation& p) { return std::max(0, p.num_surface_factors() - 1); }

void require_labeled_shape(const Presentation& p) {
  if (p.shape() == Shape::DoubleIBundle)
    throw UnsupportedShapeError("labeled graph: double I-bundle shape is not supported");
  if (p.shape() == Shape::Handlebody)
    throw InputError("labeled graph: free presentation, use the classical Whitehead graph");
}

}  // namespace

int LabeledWhiteheadGraph::vertex_index(DiscSide s) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == s) return (int)i;
  throw InputError("labeled graph: no such disc side");
}

LabeledWhiteheadGraph labeled_whitehead_graph(const Presentation& p, const CyclicClass& g) {
  require_labeled_shape(p);
  const int nh = num_handles(p);
  const int ns = num_separating(p);

  LabeledWhiteheadGraph out;
  for (int h = 0; h < nh; ++h) {
    out.vertices.push_back(DiscSide{DiscSide::Kind::Handle, h, false});
    out.vertices.push_back(DiscSide{DiscSide::Kind::Handle, h, true});
    out.piece_of_vertex.push_back(0);
    out.piece_of_vertex.push_back(0);
    out.cycle_vertex.push_back(h);
    out.cycle_vertex.push_back(h);
  }
  for (int m = 1; m <= ns; ++m) {
    out.vertices.push_back(DiscSide{DiscSide::Kind::Separating, m, false});
    out.vertices.push_back(DiscSide{DiscSide::Kind::Separating, m, true});
    out.piece_of_vertex.push_back(0);
    out.piece_of_vertex.push_back(m);
    out.cycle_vertex.push_back(nh + m - 1);
    out.cycle_vertex.push_back(nh + m - 1);
  }
  out.cycle_vertex_count = nh + ns;

  // crossing sequence: walk the cyclic syllable word, inserting separating
  // disc crossings whenever the path changes piece (all routes pass piece 0)
  struct Cross {
    int exit_v, entry_v;
    int piece_after;
  };
  std::vector<Cross> crossings;
  std::vector<int> label_piece;
  std::vector<SurfaceGroup::FWord> label_word;
  SurfaceGroup::FWord prefix;
  int prefix_piece = -1;

  auto handle_vertex = [&](int h, bool plus) { return 2 * h + (plus ? 1 : 0); };
  auto sep_vertex = [&](int m, bool plus) { return 2 * nh + 2 * (m - 1) + (plus ? 1 : 0); };

  auto emit_crossing = [&](int exit_v, int entry_v, int piece_after) {
    crossings.push_back(Cross{exit_v, entry_v, piece_after});
    label_piece.push_back(piece_after);
    label_word.push_back({});
  };
  auto emit_segment = [&](int piece, const SurfaceGroup::FWord& w) {
    if (crossings.empty()) {
      prefix.insert(prefix.end(), w.begin(), w.end());
      prefix_piece = piece;
    } else {
      label_word.back().insert(label_word.back().end(), w.begin(), w.end());
    }
  };

  const std::vector<Syllable>& syls = g.canonical;
  // initial piece matches the state after the last syllable so the cyclic
  // wrap-around transition is emitted while processing the first one
  int piece = 0;
  if (!syls.empty()) {
    const Syllable& last = syls.back();
    piece = p.is_surface_factor(last.factor) ? last.factor : 0;
  }
  auto route_to = [&](int target) {
    if (piece == target) return;
    if (piece != 0) {
      emit_crossing(sep_vertex(piece, true), sep_vertex(piece, false), 0);
      piece = 0;
    }
    if (target != 0) {
      emit_crossing(sep_vertex(target, false), sep_vertex(target, true), target);
      piece = target;
    }
  };

  for (const Syllable& s : syls) {
    if (p.is_surface_factor(s.factor)) {
      route_to(s.factor);
      emit_segment(s.factor, s.word);
    } else {
      route_to(0);
      int h = s.factor - p.num_surface_factors();
      for (auto c : s.word) {
        if (c & 1)
          emit_crossing(handle_vertex(h, true), handle_vertex(h, false), 0);
        else
          emit_crossing(handle_vertex(h, false), handle_vertex(h, true), 0);
      }
    }
  }

  if (crossings.empty()) {
    out.no_crossings = true;
    out.note = "no crossings: w lies in a complementary piece";
    return out;
  }
  if (!prefix.empty()) {
    // wraps around to sit after the final crossing
    label_word.back().insert(label_word.back().end(), prefix.begin(), prefix.end());
  }

  const size_t m = crossings.size();
  for (size_t j = 0; j < m; ++j) {
    LabeledEdge e;
    e.from = crossings[j].entry_v;
    e.to = crossings[(j + 1) % m].exit_v;
    e.piece = label_piece[j];
    e.label = surface_group(p.genus(label_piece[j])).dehn_reduce(label_word[j]);
    out.edges.push_back(std::move(e));
  }
  return out;
}

namespace {

// label of an edge as letters of the free product, read from->to
GroupWord edge_letters(const LabeledEdge& e, bool reversed) {
  SurfaceGroup::FWord w = reversed ? SurfaceGroup::inverse(e.label) : e.label;
  GroupWord out;
  for (auto c : w) out.push_back(Letter((std::uint16_t)e.piece, (std::uint16_t)(c / 2), c & 1));
  return out;
}

GroupWord concat(GroupWord a, const GroupWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct QuotientGraph {
  int n = 0;
  // per cycle vertex: (edge index, reversed?) for each incidence
  std::vector<std::vector<std::pair<int, bool>>> inc;
  std::vector<int> eu, ev;  // quotient endpoints per edge
};

QuotientGraph quotient(const LabeledWhiteheadGraph& g) {
  QuotientGraph q;
  q.n = g.cycle_vertex_count;
  q.inc.resize(q.n);
  for (size_t i = 0; i < g.edges.size(); ++i) {
    int u = g.cycle_vertex[g.edges[i].from];
    int v = g.cycle_vertex[g.edges[i].to];
    q.eu.push_back(u);
    q.ev.push_back(v);
    q.inc[u].emplace_back((int)i, false);
    if (v != u) q.inc[v].emplace_back((int)i, true);
  }
  return q;
}

// true iff the edge subset, viewed at its quotient endpoints, carries a
// nontrivial cycle label; `extra` conjoins vertex potentials along a tree
bool subgraph_strongly_connected(const Presentation& p, const LabeledWhiteheadGraph& g,
                                 const QuotientGraph& q, const std::vector<int>& edge_set) {
  if (edge_set.empty()) return false;
  std::vector<std::vector<std::pair<int, bool>>> inc(q.n);
  for (int ei : edge_set) {
    inc[q.eu[ei]].emplace_back(ei, false);
    if (q.ev[ei] != q.eu[ei]) inc[q.ev[ei]].emplace_back(ei, true);
  }
  std::vector<int> state(q.n, 0);  // 0 unseen, 1 seen
  std::vector<GroupWord> pot(q.n);
  std::vector<bool> in_tree(g.edges.size(), false);
  int root = q.eu[edge_set[0]];
  state[root] = 1;
  std::deque<int> queue{root};
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (auto [ei, rev] : inc[u]) {
      int v = rev ? q.eu[ei] : q.ev[ei];
      if (v == u || state[v]) continue;
      state[v] = 1;
      pot[v] = concat(pot[u], edge_letters(g.edges[ei], rev));
      in_tree[ei] = true;
      queue.push_back(v);
    }
  }
  // every non-tree edge inside the reached part yields a fundamental cycle
  for (int ei : edge_set) {
    if (in_tree[ei]) continue;
    int u = q.eu[ei], v = q.ev[ei];
    if (!state[u]) continue;  // disconnected remainder cannot certify
    GroupWord cycle = concat(concat(pot[u], edge_letters(g.edges[ei], false)),
                             inverse(pot[v]));
    if (!is_trivial(p, cycle)) return true;
  }
  return false;
}

std::vector<std::vector<int>> component_edge_sets(const QuotientGraph& q,
                                                  std::vector<std::vector<int>>* comp_verts) {
  std::vector<int> comp(q.n, -1);
  int nc = 0;
  for (int s = 0; s < q.n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = nc;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (auto [ei, rev] : q.inc[u]) {
        int v = rev ? q.eu[ei] : q.ev[ei];
        if (comp[v] == -1) {
          comp[v] = nc;
          queue.push_back(v);
        }
      }
    }
    ++nc;
  }
  std::vector<std::vector<int>> edge_sets(nc);
  for (size_t ei = 0; ei < q.eu.size(); ++ei) edge_sets[comp[q.eu[ei]]].push_back((int)ei);
  if (comp_verts) {
    comp_verts->assign(nc, {});
    for (int v = 0; v < q.n; ++v) (*comp_verts)[comp[v]].push_back(v);
  }
  return edge_sets;
}

}  // namespace

bool StrongConnectivityReport::all_strongly_connected() const {
  return std::all_of(components.begin(), components.end(),
                     [](const Component& c) { return c.strongly_connected; });
}

StrongConnectivityReport strong_connectivity(const Presentation& p,
                                             const LabeledWhiteheadGraph& g) {
  QuotientGraph q = quotient(g);
  std::vector<std::vector<int>> comp_verts;
  auto edge_sets = component_edge_sets(q, &comp_verts);
  StrongConnectivityReport report;
  for (size_t c = 0; c < edge_sets.size(); ++c) {
    StrongConnectivityReport::Component comp;
    comp.cycle_vertices = comp_verts[c];
    comp.edge_indices = edge_sets[c];
    comp.strongly_connected = subgraph_strongly_connected(p, g, q, edge_sets[c]);
    report.components.push_back(std::move(comp));
  }
  return report;
}

std::optional<int> has_strong_cutpoint(const Presentation& p, const LabeledWhiteheadGraph& g) {
  QuotientGraph q = quotient(g);
  auto edge_sets = component_edge_sets(q, nullptr);
  for (const auto& comp_edges : edge_sets) {
    if (comp_edges.size() < 2) continue;
    std::vector<int> comp_vertices;
    {
      std::vector<bool> seen(q.n, false);
      for (int ei : comp_edges) seen[q.eu[ei]] = seen[q.ev[ei]] = true;
      for (int v = 0; v < q.n; ++v)
        if (seen[v]) comp_vertices.push_back(v);
    }
    for (int v : comp_vertices) {
      // units: connected pieces of (component - v) with their v-incident
      // edges attached, plus each self-loop at v on its own
      std::vector<int> unit_of_edge(g.edges.size(), -1);
      int nu = 0;
      {
        // group non-loop edges by connectivity away from v
        std::vector<int> vert_unit(q.n, -1);
        for (int start : comp_vertices) {
          if (start == v || vert_unit[start] != -1) continue;
          vert_unit[start] = nu;
          std::deque<int> queue{start};
          while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (auto [ei, rev] : q.inc[u]) {
              int w = rev ? q.eu[ei] : q.ev[ei];
              if (w == v || vert_unit[w] != -1) continue;
              vert_unit[w] = nu;
              queue.push_back(w);
            }
          }
          ++nu;
        }
        for (int ei : comp_edges) {
          int a = q.eu[ei], b = q.ev[ei];
          if (a == v && b == v) {
            unit_of_edge[ei] = nu++;  // self-loop, freely assignable
          } else {
            unit_of_edge[ei] = vert_unit[a == v ? b : a];
          }
        }
      }
      if (nu < 2) continue;
      if (nu > 16)
        throw UndeterminedError("strong cutpoint search: partition budget exceeded");
      for (int mask = 1; mask + 1 < (1 << nu); ++mask) {
        std::vector<int> side[2];
        for (int ei : comp_edges) side[(mask >> unit_of_edge[ei]) & 1].push_back(ei);
        if (side[0].empty() || side[1].empty()) continue;
        if (!subgraph_strongly_connected(p, g, q, side[0]) ||
            !subgraph_strongly_connected(p, g, q, side[1]))
          return v;
      }
    }
  }
  return std::nullopt;
}

LabeledWhiteheadGraph relabel(const LabeledWhiteheadGraph& g,
                              const std::vector<SurfaceGroup::FWord>& potentials) {
  if ((int)potentials.size() != g.cycle_vertex_count)
    throw InputError("relabel: one potential per cycle vertex required");
  LabeledWhiteheadGraph out = g;
  for (LabeledEdge& e : out.edges) {
    const SurfaceGroup::FWord& hu = potentials[g.cycle_vertex[e.from]];
    const SurfaceGroup::FWord& hv = potentials[g.cycle_vertex[e.to]];
    SurfaceGroup::FWord w = hu;
    w.insert(w.end(), e.label.begin(), e.label.end());
    SurfaceGroup::FWord hvi = SurfaceGroup::inverse(hv);
    w.insert(w.end(), hvi.begin(), hvi.end());
    e.label = SurfaceGroup::free_reduce(w);
  }
  return out;
}

LabeledClassification classify_labeled(const Presentation& p, const CyclicClass& g) {
  require_labeled_shape(p);
  LabeledWhiteheadGraph graph = labeled_whitehead_graph(p, g);
  if (graph.no_crossings) return LabeledClassification::ConsistentWithSeparable;
  if (!strong_connectivity(p, graph).all_strongly_connected())
    return LabeledClassification::ConsistentWithSeparable;
  if (has_strong_cutpoint(p, graph))
    return LabeledClassification::ConsistentWithSeparable;
  return LabeledClassification::NotSeparableCertified;
}

}  // namespace sepstab
