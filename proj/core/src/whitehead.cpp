#include "sepstab/whitehead.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace sepstab {

FreeWord free_cyclic_reduce(FreeWord w) {
  FreeWord out;
  for (int c : w) {
    if (!out.empty() && out.back() == free_inv(c))
      out.pop_back();
    else
      out.push_back(c);
  }
  while (out.size() >= 2 && out.front() == free_inv(out.back())) {
    out.erase(out.begin());
    out.pop_back();
  }
  return out;
}

static FreeWord free_word_inverse(const FreeWord& w) {
  FreeWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(free_inv(*it));
  return r;
}

FreeWord free_cyclic_canonical(const FreeWord& w0) {
  FreeWord w = free_cyclic_reduce(w0);
  if (w.empty()) return w;
  FreeWord best = w;
  for (const FreeWord& seq : {w, free_word_inverse(w)}) {
    FreeWord d = seq;
    d.insert(d.end(), seq.begin(), seq.end());
    for (size_t i = 0; i < seq.size(); ++i) {
      FreeWord rot(d.begin() + i, d.begin() + i + seq.size());
      if (rot < best) best = rot;
    }
  }
  return best;
}

FreeWord to_free_word(const Presentation& p, const CyclicClass& g) {
  if (p.num_surface_factors() != 0)
    throw InputError("whitehead: classical graph needs a free (handlebody) presentation");
  FreeWord w;
  for (Letter l : g.word()) w.push_back(p.letter_id(l));
  return w;
}

CyclicClass from_free_word(const Presentation& p, const FreeWord& w) {
  GroupWord gw;
  for (int id : w) gw.push_back(p.letter_from_id(id));
  return cyclic_class(p, gw);
}

int WhiteheadGraph::degree(int v) const {
  int d = 0;
  for (auto [a, b] : edges) d += (a == v) + (b == v);
  return d;
}

WhiteheadGraph whitehead_graph_of(int rank, const FreeWord& w) {
  WhiteheadGraph g;
  g.rank = rank;
  if (w.empty()) return g;
  for (size_t i = 0; i < w.size(); ++i) {
    int x = w[i];
    int y = w[(i + 1) % w.size()];
    g.edges.emplace_back(x, free_inv(y));
  }
  return g;
}

WhiteheadGraph whitehead_graph(const Presentation& p, const CyclicClass& g) {
  return whitehead_graph_of(p.rank(), to_free_word(p, g));
}

namespace {

std::vector<std::vector<int>> adjacency(const WhiteheadGraph& g) {
  std::vector<std::vector<int>> adj(2 * g.rank);
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

bool connected_on(const std::vector<std::vector<int>>& adj, const std::vector<int>& verts,
                  int skip = -1) {
  std::vector<int> live;
  for (int v : verts)
    if (v != skip) live.push_back(v);
  if (live.empty()) return true;
  std::set<int> liveset(live.begin(), live.end());
  std::set<int> seen;
  std::deque<int> queue{live[0]};
  seen.insert(live[0]);
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : adj[u])
      if (v != skip && liveset.count(v) && seen.insert(v).second) queue.push_back(v);
  }
  return seen.size() == liveset.size();
}

std::vector<int> used_vertices(const WhiteheadGraph& g) {
  std::set<int> used;
  for (auto [a, b] : g.edges) {
    used.insert(a);
    used.insert(b);
  }
  return {used.begin(), used.end()};
}

}  // namespace

bool is_connected(const WhiteheadGraph& g) {
  return connected_on(adjacency(g), used_vertices(g));
}

std::vector<int> isolated_vertices(const WhiteheadGraph& g) {
  std::vector<int> out;
  auto used = used_vertices(g);
  std::set<int> u(used.begin(), used.end());
  for (int v = 0; v < 2 * g.rank; ++v)
    if (!u.count(v)) out.push_back(v);
  return out;
}

std::vector<int> cut_vertices(const WhiteheadGraph& g) {
  std::vector<int> out;
  auto adj = adjacency(g);
  auto used = used_vertices(g);
  if (used.size() < 3) return out;
  for (int v : used) {
    if (!connected_on(adj, used, v)) out.push_back(v);
  }
  return out;
}

std::string WhiteheadMove::describe(const Presentation& p) const {
  auto name = [&](int id) { return p.letter_name(p.letter_from_id(id)); };
  switch (kind) {
    case Kind::Permutation: {
      std::string s = "perm[";
      for (size_t i = 0; i < image.size(); i += 2) {
        if (i) s += ' ';
        s += name((int)i) + "->" + name(image[i]);
      }
      return s + "]";
    }
    case Kind::Multiplier: {
      std::string s = "mult(" + name(multiplier) + "; {";
      bool first = true;
      for (size_t i = 0; i < set.size(); ++i)
        if (set[i] && (int)i != multiplier) {
          if (!first) s += ' ';
          first = false;
          s += name((int)i);
        }
      return s + "})";
    }
    case Kind::FactorConjugation:
      return "conj(factor " + std::to_string(factor) + " by " + p.letter_name(conjugator) + ")";
  }
  return "?";
}

FreeWord apply_move(const WhiteheadMove& m, const FreeWord& w) {
  FreeWord out;
  switch (m.kind) {
    case WhiteheadMove::Kind::Permutation:
      for (int c : w) out.push_back(m.image[c]);
      break;
    case WhiteheadMove::Kind::Multiplier: {
      const int a = m.multiplier;
      for (int c : w) {
        if (c == a || c == free_inv(a)) {
          out.push_back(c);
          continue;
        }
        if (m.set[c]) out.push_back(a);
        out.push_back(c);
        if (m.set[free_inv(c)]) out.push_back(free_inv(a));
      }
      break;
    }
    case WhiteheadMove::Kind::FactorConjugation:
      throw InputError("apply_move: factor conjugation does not act on free words");
  }
  return free_cyclic_reduce(out);
}

std::vector<WhiteheadMove> whitehead_generators(int rank) {
  std::vector<WhiteheadMove> moves;
  const int n = 2 * rank;
  auto identity_image = [&] {
    std::vector<int> im(n);
    for (int i = 0; i < n; ++i) im[i] = i;
    return im;
  };
  // single inversions
  for (int k = 0; k < rank; ++k) {
    WhiteheadMove m;
    m.kind = WhiteheadMove::Kind::Permutation;
    m.image = identity_image();
    std::swap(m.image[2 * k], m.image[2 * k + 1]);
    moves.push_back(std::move(m));
  }
  // transpositions
  for (int k = 0; k < rank; ++k)
    for (int l = k + 1; l < rank; ++l) {
      WhiteheadMove m;
      m.kind = WhiteheadMove::Kind::Permutation;
      m.image = identity_image();
      std::swap(m.image[2 * k], m.image[2 * l]);
      std::swap(m.image[2 * k + 1], m.image[2 * l + 1]);
      moves.push_back(std::move(m));
    }
  // multiplier moves: a in A, a^-1 not in A, A != {a}
  for (int a = 0; a < n; ++a) {
    std::vector<int> others;
    for (int c = 0; c < n; ++c)
      if (c != a && c != free_inv(a)) others.push_back(c);
    const int subsets = 1 << others.size();
    for (int mask = 1; mask < subsets; ++mask) {
      WhiteheadMove m;
      m.kind = WhiteheadMove::Kind::Multiplier;
      m.multiplier = a;
      m.set.assign(n, false);
      m.set[a] = true;
      for (size_t i = 0; i < others.size(); ++i)
        if (mask & (1 << i)) m.set[others[i]] = true;
      moves.push_back(std::move(m));
    }
  }
  return moves;
}

MinimizeResult minimize(const Presentation& p, const CyclicClass& g) {
  FreeWord w = free_cyclic_canonical(to_free_word(p, g));
  auto moves = whitehead_generators(p.rank());
  std::vector<WhiteheadMove> applied;
  bool improved = true;
  while (improved) {
    improved = false;
    for (const auto& m : moves) {
      if (m.kind != WhiteheadMove::Kind::Multiplier) continue;
      FreeWord v = apply_move(m, w);
      if (v.size() < w.size()) {
        w = free_cyclic_canonical(v);
        applied.push_back(m);
        improved = true;
        break;
      }
    }
  }
  return MinimizeResult{from_free_word(p, w), std::move(applied)};
}

namespace {

bool omits_letter(int rank, const FreeWord& w) {
  std::vector<bool> used(rank, false);
  for (int c : w) used[c / 2] = true;
  return std::any_of(used.begin(), used.end(), [](bool b) { return !b; });
}

}  // namespace

SeparabilityCertificate is_separable_free(const Presentation& p, const CyclicClass& g,
                                          std::size_t budget) {
  if (p.num_surface_factors() != 0)
    throw InputError("is_separable_free: handlebody shape required");
  MinimizeResult min = minimize(p, g);
  FreeWord start = free_cyclic_canonical(to_free_word(p, min.minimal));
  const size_t min_len = start.size();
  auto moves = whitehead_generators(p.rank());

  SeparabilityCertificate cert;
  cert.moves = min.moves;
  if (omits_letter(p.rank(), start)) {
    cert.separable = true;
    cert.witness = from_free_word(p, start);
    return cert;
  }
  std::set<FreeWord> seen{start};
  std::deque<FreeWord> queue{start};
  while (!queue.empty()) {
    if (seen.size() > budget)
      throw UndeterminedError("is_separable_free: level-set budget exceeded");
    FreeWord u = queue.front();
    queue.pop_front();
    for (const auto& m : moves) {
      FreeWord v = free_cyclic_canonical(apply_move(m, u));
      if (v.size() != min_len) continue;  // level set only; smaller is impossible
      if (seen.insert(v).second) {
        if (omits_letter(p.rank(), v)) {
          cert.separable = true;
          cert.witness = from_free_word(p, v);
          cert.level_set_explored = seen.size();
          return cert;
        }
        queue.push_back(std::move(v));
      }
    }
  }
  cert.separable = false;
  cert.level_set_explored = seen.size();
  return cert;
}

}  // namespace sepstab
