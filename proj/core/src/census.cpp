#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "sepstab/stability.hpp"
#include "sepstab/whitehead.hpp"

namespace sepstab {

namespace {

using Tuple = std::vector<FreeWord>;  // images of the positive basis letters

FreeWord free_reduce_word(const FreeWord& w) {
  FreeWord out;
  for (int c : w) {
    if (!out.empty() && out.back() == free_inv(c))
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

// image of a single letter under the automorphism given by basis images
FreeWord letter_image(const Tuple& t, int c) {
  FreeWord w = t[c / 2];
  if (c & 1) {
    FreeWord r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(free_inv(*it));
    return r;
  }
  return w;
}

FreeWord map_word(const Tuple& t, const FreeWord& w) {
  FreeWord out;
  for (int c : w) {
    FreeWord img = letter_image(t, c);
    out.insert(out.end(), img.begin(), img.end());
  }
  return free_reduce_word(out);
}

// compose a Whitehead move on the left: x -> m(f(x)), without cyclic
// reduction (automorphism images are plain words)
Tuple compose_move(const WhiteheadMove& m, const Tuple& t) {
  Tuple out;
  out.reserve(t.size());
  for (const FreeWord& w : t) {
    FreeWord img;
    switch (m.kind) {
      case WhiteheadMove::Kind::Permutation:
        for (int c : w) img.push_back(m.image[c]);
        break;
      case WhiteheadMove::Kind::Multiplier: {
        const int a = m.multiplier;
        for (int c : w) {
          if (c == a || c == free_inv(a)) {
            img.push_back(c);
            continue;
          }
          if (m.set[c]) img.push_back(a);
          img.push_back(c);
          if (m.set[free_inv(c)]) img.push_back(free_inv(a));
        }
        break;
      }
      case WhiteheadMove::Kind::FactorConjugation:
        throw InputError("census: factor conjugation outside the free shape");
    }
    out.push_back(free_reduce_word(img));
  }
  return out;
}

size_t total_length(const Tuple& t) {
  size_t n = 0;
  for (const FreeWord& w : t) n += w.size();
  return n;
}

Tuple conjugate(const Tuple& t, int c) {
  Tuple out;
  for (const FreeWord& w : t) {
    FreeWord v;
    v.push_back(free_inv(c));
    v.insert(v.end(), w.begin(), w.end());
    v.push_back(c);
    out.push_back(free_reduce_word(v));
  }
  return out;
}

// canonical representative of the inner-automorphism orbit: minimize total
// length by single-letter conjugations (the length sum is convex along
// geodesics of the Cayley tree, so greedy descent reaches the minimum),
// then take the least tuple of the connected minimal level set
Tuple outer_canonical(const Tuple& t0, int alphabet) {
  Tuple t = t0;
restart:
  std::set<Tuple> seen{t};
  std::deque<Tuple> queue{t};
  Tuple best = t;
  while (!queue.empty()) {
    Tuple u = queue.front();
    queue.pop_front();
    for (int c = 0; c < alphabet; ++c) {
      Tuple v = conjugate(u, c);
      if (total_length(v) < total_length(t)) {
        t = v;
        goto restart;
      }
      if (total_length(v) > total_length(t)) continue;
      if (seen.insert(v).second) {
        if (v < best) best = v;
        queue.push_back(v);
      }
    }
  }
  return best;
}

}  // namespace

CensusResult automorphism_census(const Presentation& p, const std::vector<CyclicClass>& w_set,
                                 double N, int move_budget, std::size_t state_budget) {
  if (p.shape() != Shape::Handlebody)
    throw InputError("automorphism census: free (handlebody) shape required");
  const int rank = p.rank();
  const int alphabet = 2 * rank;
  auto moves = whitehead_generators(rank);

  Tuple identity;
  for (int i = 0; i < rank; ++i) identity.push_back(FreeWord{2 * i});

  std::set<Tuple> outer{outer_canonical(identity, alphabet)};
  std::deque<std::pair<Tuple, int>> queue{{identity, 0}};
  CensusResult res;
  while (!queue.empty()) {
    auto [t, depth] = queue.front();
    queue.pop_front();
    if (depth >= move_budget) continue;
    for (const auto& m : moves) {
      Tuple next = compose_move(m, t);
      Tuple key = outer_canonical(next, alphabet);
      if (outer.size() >= state_budget) {
        res.complete = false;
        break;
      }
      if (outer.insert(std::move(key)).second) queue.emplace_back(std::move(next), depth + 1);
    }
    if (!res.complete) break;
  }

  std::vector<std::pair<FreeWord, int>> targets;  // word and its ||w||
  for (const CyclicClass& w : w_set) {
    FreeWord fwd = to_free_word(p, w);
    targets.emplace_back(fwd, w.cayley_length);
  }
  res.outer_classes = outer.size();
  for (const Tuple& t : outer) {
    bool ok = true;
    for (const auto& [w, len] : targets) {
      FreeWord img = free_cyclic_reduce(map_word(t, w));
      if ((double)img.size() > N * len + 1e-12) {
        ok = false;
        break;
      }
    }
    if (ok) ++res.qualifying;
  }
  return res;
}

}  // namespace sepstab
