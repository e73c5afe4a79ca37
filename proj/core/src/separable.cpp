#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "sepstab/whitehead.hpp"

namespace sepstab {

namespace {

bool omits_factor(const Presentation& p, const CyclicClass& g) {
  std::vector<bool> used(p.num_factors(), false);
  for (Letter l : g.word()) used[l.factor] = true;
  return std::any_of(used.begin(), used.end(), [](bool b) { return !b; });
}

// t_i -> t_i x or x t_i with x outside factor i extends to an automorphism
// of the free product (a Fouxe-Rabinovitch / Nielsen move); images of
// separable classes stay separable
struct HandleSubstitution {
  int factor = 0;
  Letter x;
  bool right = false;
};

std::vector<HandleSubstitution> handle_substitutions(const Presentation& p) {
  std::vector<HandleSubstitution> moves;
  for (int f = p.num_surface_factors(); f < p.num_factors(); ++f) {
    for (int id = 0; id < p.alphabet_size(); ++id) {
      Letter x = p.letter_from_id(id);
      if (x.factor == f) continue;
      moves.push_back(HandleSubstitution{f, x, true});
      moves.push_back(HandleSubstitution{f, x, false});
    }
  }
  return moves;
}

GroupWord apply_substitution(const HandleSubstitution& m, const GroupWord& w) {
  GroupWord out;
  for (Letter l : w) {
    if (l.factor != m.factor) {
      out.push_back(l);
      continue;
    }
    // t -> t x means t^-1 -> x^-1 t^-1
    bool after = l.inv ? !m.right : m.right;
    if (!after) out.push_back(l.inv ? m.x.inverse() : m.x);
    out.push_back(l);
    if (after) out.push_back(l.inv ? m.x.inverse() : m.x);
  }
  return out;
}

// Free shape: every separable class of length <= cap is reachable from a
// letter-omitting class through Whitehead moves that never exceed cap (peak
// reduction plus minimal level-set connectivity), so a capped closure from
// the omitting classes enumerates them without per-class orbit searches.
std::vector<CyclicClass> free_separable_closure(const Presentation& p, int cap) {
  const int rank = p.rank();
  std::set<FreeWord> seen;
  std::deque<FreeWord> queue;
  for (int omit = 0; omit < rank; ++omit) {
    FreeWord w;
    auto rec = [&](auto&& self) -> void {
      if (!w.empty() && w.front() != free_inv(w.back())) {
        FreeWord c = free_cyclic_canonical(w);
        if (seen.insert(c).second) queue.push_back(c);
      }
      if ((int)w.size() == cap) return;
      for (int c = 0; c < 2 * rank; ++c) {
        if (c / 2 == omit) continue;
        if (!w.empty() && w.back() == free_inv(c)) continue;
        w.push_back(c);
        self(self);
        w.pop_back();
      }
    };
    rec(rec);
  }
  auto moves = whitehead_generators(rank);
  while (!queue.empty()) {
    FreeWord u = queue.front();
    queue.pop_front();
    for (const auto& m : moves) {
      FreeWord v = free_cyclic_canonical(apply_move(m, u));
      if (v.empty() || (int)v.size() > cap) continue;
      if (seen.insert(v).second) queue.push_back(v);
    }
  }
  std::vector<CyclicClass> out;
  out.reserve(seen.size());
  for (const FreeWord& w : seen) out.push_back(from_free_word(p, w));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<CyclicClass> enumerate_separable_classes(const Presentation& p, int max_length,
                                                     int enlargement_depth) {
  if (p.shape() == Shape::DoubleIBundle)
    throw UnsupportedShapeError("separable enumeration: double I-bundle shape is not supported");
  if (max_length < 1) throw InputError("separable enumeration: max_length must be >= 1");

  const bool free_shape = p.shape() == Shape::Handlebody;
  // automorphism images cannot enlarge the free-shape closure, so the
  // enlargement rounds only matter for shapes with surface factors
  if (free_shape) return free_separable_closure(p, max_length);

  std::map<std::string, CyclicClass> out;
  std::vector<CyclicClass> seeds;

  auto ball = enumerate_ball(p, max_length, std::max(max_length, 8));
  std::map<std::string, CyclicClass> classes;
  for (const BallElement& e : ball) {
    if (e.nf.trivial()) continue;
    CyclicClass cc = cyclic_class(p, e.nf);
    if (cc.cayley_length > max_length) continue;
    classes.emplace(cc.key(), std::move(cc));
  }
  for (auto& [key, cc] : classes) {
    if (omits_factor(p, cc)) {
      seeds.push_back(cc);
      out.emplace(key, cc);
    }
  }

  auto moves = handle_substitutions(p);
  std::vector<CyclicClass> frontier = seeds;
  for (int d = 0; d < enlargement_depth; ++d) {
    std::vector<CyclicClass> next;
    for (const CyclicClass& cc : frontier) {
      GroupWord w = cc.word();
      for (const auto& m : moves) {
        CyclicClass img = cyclic_class(p, apply_substitution(m, w));
        if (img.cayley_length > max_length) continue;
        if (out.emplace(img.key(), img).second) next.push_back(std::move(img));
      }
    }
    frontier = std::move(next);
  }

  std::vector<CyclicClass> result;
  result.reserve(out.size());
  for (auto& [key, cc] : out) result.push_back(std::move(cc));
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace sepstab
