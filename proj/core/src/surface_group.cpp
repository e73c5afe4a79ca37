#include "sepstab/surface_group.hpp"

#include <algorithm>
#include <deque>

namespace sepstab {

SurfaceGroup::SurfaceGroup(int genus) : genus_(genus) {
  if (genus < 2) throw InputError("surface factor: genus must be >= 2");
  for (int i = 0; i < genus; ++i) {
    // a_i b_i a_i^-1 b_i^-1
    relator_.push_back((std::uint8_t)(4 * i));
    relator_.push_back((std::uint8_t)(4 * i + 2));
    relator_.push_back((std::uint8_t)(4 * i + 1));
    relator_.push_back((std::uint8_t)(4 * i + 3));
  }
  const int n = 4 * genus;
  for (const FWord& base : {relator_, inverse(relator_)}) {
    FWord doubled = base;
    doubled.insert(doubled.end(), base.begin(), base.end());
    for (int rot = 0; rot < n; ++rot) {
      FWord rotation(doubled.begin() + rot, doubled.begin() + rot + n);
      {
        FWord win(rotation.begin(), rotation.begin() + (2 * genus + 1));
        FWord comp(rotation.begin() + (2 * genus + 1), rotation.end());
        long_window_.emplace(std::move(win), inverse(comp));
      }
      {
        FWord win(rotation.begin(), rotation.begin() + 2 * genus);
        FWord comp(rotation.begin() + 2 * genus, rotation.end());
        half_window_.emplace(std::move(win), inverse(comp));
      }
    }
  }
}

SurfaceGroup::FWord SurfaceGroup::inverse(const FWord& w) {
  FWord r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(inv(*it));
  return r;
}

SurfaceGroup::FWord SurfaceGroup::free_reduce(const FWord& w) {
  FWord out;
  out.reserve(w.size());
  for (auto c : w) {
    if (!out.empty() && out.back() == inv(c))
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

SurfaceGroup::FWord SurfaceGroup::dehn_reduce(FWord w) const {
  const size_t L = 2 * (size_t)genus_ + 1;
  w = free_reduce(w);
  bool changed = true;
  while (changed && w.size() >= L) {
    changed = false;
    for (size_t i = 0; i + L <= w.size(); ++i) {
      FWord win(w.begin() + i, w.begin() + i + L);
      auto it = long_window_.find(win);
      if (it == long_window_.end()) continue;
      FWord next(w.begin(), w.begin() + i);
      next.insert(next.end(), it->second.begin(), it->second.end());
      next.insert(next.end(), w.begin() + i + L, w.end());
      w = free_reduce(next);
      changed = true;
      break;
    }
  }
  return w;
}

bool SurfaceGroup::equal(const FWord& u, const FWord& v) const {
  FWord w = u;
  FWord vi = inverse(v);
  w.insert(w.end(), vi.begin(), vi.end());
  return is_trivial(w);
}

SurfaceGroup::FWord SurfaceGroup::cyclic_dehn_reduce(FWord w) const {
  const size_t L = 2 * (size_t)genus_ + 1;
  auto cyc_free = [](FWord v) {
    v = free_reduce(v);
    while (v.size() >= 2 && v.front() == inv(v.back())) {
      v.erase(v.begin());
      v.pop_back();
      v = free_reduce(v);
    }
    return v;
  };
  w = cyc_free(dehn_reduce(w));
  bool changed = true;
  while (changed && w.size() >= L) {
    changed = false;
    FWord d = w;
    d.insert(d.end(), w.begin(), w.end());
    for (size_t i = 0; i < w.size(); ++i) {
      FWord win(d.begin() + i, d.begin() + i + L);
      auto it = long_window_.find(win);
      if (it == long_window_.end()) continue;
      FWord next = it->second;
      next.insert(next.end(), d.begin() + i + L, d.begin() + i + w.size());
      w = cyc_free(next);
      changed = true;
      break;
    }
  }
  return w;
}

std::vector<SurfaceGroup::FWord> SurfaceGroup::half_swaps(const FWord& w, bool cyclic) const {
  const size_t H = 2 * (size_t)genus_;
  std::vector<FWord> out;
  if (w.size() < H) return out;
  if (!cyclic) {
    for (size_t i = 0; i + H <= w.size(); ++i) {
      FWord win(w.begin() + i, w.begin() + i + H);
      auto it = half_window_.find(win);
      if (it == half_window_.end()) continue;
      FWord next(w.begin(), w.begin() + i);
      next.insert(next.end(), it->second.begin(), it->second.end());
      next.insert(next.end(), w.begin() + i + H, w.end());
      out.push_back(free_reduce(next));
    }
  } else {
    FWord d = w;
    d.insert(d.end(), w.begin(), w.end());
    for (size_t i = 0; i < w.size(); ++i) {
      FWord win(d.begin() + i, d.begin() + i + H);
      auto it = half_window_.find(win);
      if (it == half_window_.end()) continue;
      FWord next = it->second;
      next.insert(next.end(), d.begin() + i + H, d.begin() + i + w.size());
      out.push_back(free_reduce(next));
    }
  }
  return out;
}

namespace {
constexpr size_t kOrbitCap = 1 << 16;
}

SurfaceGroup::FWord SurfaceGroup::canonical(const FWord& w) const {
  FWord start = dehn_reduce(w);
restart:
  std::unordered_map<FWord, bool, SeqHash> seen;
  std::deque<FWord> queue;
  seen.emplace(start, true);
  queue.push_back(start);
  FWord best = start;
  while (!queue.empty()) {
    FWord u = queue.front();
    queue.pop_front();
    for (FWord& v : half_swaps(u, false)) {
      if (v.size() < u.size() || dehn_reduce(v).size() < v.size()) {
        start = dehn_reduce(v);
        goto restart;
      }
      if (seen.emplace(v, true).second) {
        if (v < best) best = v;
        queue.push_back(std::move(v));
      }
    }
    if (seen.size() > kOrbitCap)
      throw UndeterminedError("surface canonicalization: swap orbit exceeded budget");
  }
  return best;
}

SurfaceGroup::FWord SurfaceGroup::cyclic_canonical(const FWord& w) const {
  FWord start = cyclic_dehn_reduce(w);
restart:
  std::unordered_map<FWord, bool, SeqHash> seen;
  std::deque<FWord> queue;
  seen.emplace(start, true);
  queue.push_back(start);
  FWord best = start;
  auto visit = [&](FWord v) -> bool {  // true = restart needed
    FWord r = cyclic_dehn_reduce(v);
    if (r.size() < start.size()) {
      start = r;
      return true;
    }
    if (seen.emplace(v, true).second) {
      if (v.size() < best.size() || (v.size() == best.size() && v < best)) best = v;
      queue.push_back(std::move(v));
    }
    return false;
  };
  while (!queue.empty()) {
    FWord u = queue.front();
    queue.pop_front();
    FWord d = u;
    d.insert(d.end(), u.begin(), u.end());
    for (size_t i = 1; i < u.size(); ++i) {
      if (visit(FWord(d.begin() + i, d.begin() + i + u.size()))) goto restart;
    }
    for (FWord& v : half_swaps(u, true))
      if (visit(std::move(v))) goto restart;
    if (seen.size() > kOrbitCap)
      throw UndeterminedError("surface cyclic canonicalization: orbit exceeded budget");
  }
  return best;
}

void SurfaceGroup::grow_ball(int radius) const {
  if (spheres_.empty()) {
    spheres_.push_back({FWord{}});
    dist_.emplace(FWord{}, 0);
  }
  while ((int)spheres_.size() <= radius) {
    int r = (int)spheres_.size();
    std::vector<FWord> next;
    for (const FWord& u : spheres_[r - 1]) {
      for (int c = 0; c < alphabet(); ++c) {
        FWord v = u;
        v.push_back((std::uint8_t)c);
        FWord key = canonical(v);
        if (dist_.emplace(key, r).second) next.push_back(std::move(key));
      }
    }
    spheres_.push_back(std::move(next));
  }
}

int SurfaceGroup::geodesic_length(const FWord& w, int radius_cap) const {
  FWord key = canonical(w);
  if ((int)key.size() > radius_cap)
    throw UndeterminedError("surface geodesic length: radius cap " + std::to_string(radius_cap) +
                            " exceeded");
  std::lock_guard<std::mutex> lock(memo_mutex_);
  grow_ball((int)key.size());
  auto it = dist_.find(key);
  if (it == dist_.end())
    throw UndeterminedError("surface geodesic length: canonical form not in its own ball");
  return it->second;
}

std::vector<SurfaceGroup::FWord> SurfaceGroup::sphere(int r, int radius_cap) const {
  if (r > radius_cap) throw UndeterminedError("surface sphere: radius cap exceeded");
  std::lock_guard<std::mutex> lock(memo_mutex_);
  grow_ball(r);
  return spheres_[r];
}

}  // namespace sepstab
