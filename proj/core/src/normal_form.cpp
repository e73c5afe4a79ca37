#include "sepstab/normal_form.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace sepstab {

const SurfaceGroup& surface_group(int genus) {
  static std::mutex m;
  static std::map<int, std::unique_ptr<SurfaceGroup>> groups;
  std::lock_guard<std::mutex> lock(m);
  auto& slot = groups[genus];
  if (!slot) slot = std::make_unique<SurfaceGroup>(genus);
  return *slot;
}

namespace {

std::uint8_t letter_code(const Presentation& p, Letter l) {
  if (p.is_surface_factor(l.factor)) return (std::uint8_t)(2 * l.index + (l.inv ? 1 : 0));
  return (std::uint8_t)(l.inv ? 1 : 0);
}

Letter code_letter(const Presentation& p, int factor, std::uint8_t c) {
  if (p.is_surface_factor(factor))
    return Letter((std::uint16_t)factor, (std::uint16_t)(c / 2), c & 1);
  return Letter((std::uint16_t)factor, 0, c & 1);
}

// cyclic-factor words: net exponent as a run of one code
SurfaceGroup::FWord cyclic_factor_reduce(const SurfaceGroup::FWord& w) {
  long net = 0;
  for (auto c : w) net += (c & 1) ? -1 : 1;
  SurfaceGroup::FWord out;
  out.assign((size_t)std::abs(net), net > 0 ? 0 : 1);
  return out;
}

SurfaceGroup::FWord factor_reduce(const Presentation& p, int factor,
                                  const SurfaceGroup::FWord& w) {
  if (p.is_surface_factor(factor)) return surface_group(p.genus(factor)).dehn_reduce(w);
  return cyclic_factor_reduce(w);
}

Syllable invert_syllable(const Presentation& p, const Syllable& s) {
  Syllable r{s.factor, SurfaceGroup::inverse(s.word)};
  if (p.is_surface_factor(s.factor))
    r.word = surface_group(p.genus(s.factor)).canonical(r.word);
  return r;
}

}  // namespace

int NormalForm::length() const {
  int n = 0;
  for (const auto& s : syllables) n += (int)s.word.size();
  return n;
}

namespace {
GroupWord flatten(const std::vector<Syllable>& syls) {
  // factor + code is enough to rebuild a Letter without the presentation:
  // surface letters have index code/2, cyclic letters index 0
  GroupWord w;
  for (const auto& s : syls)
    for (auto c : s.word) {
      // cyclic factors only ever carry codes 0/1
      w.push_back(Letter((std::uint16_t)s.factor, (std::uint16_t)(c / 2), c & 1));
    }
  return w;
}
}  // namespace

GroupWord NormalForm::word() const { return flatten(syllables); }
GroupWord CyclicClass::word() const { return flatten(canonical); }

static std::string syllable_key(const std::vector<Syllable>& syls) {
  std::string k;
  for (const auto& s : syls) {
    k += (char)('0' + s.factor);
    for (auto c : s.word) k += (char)('A' + c);
    k += ';';
  }
  return k;
}

std::string NormalForm::key() const { return syllable_key(syllables); }
std::string CyclicClass::key() const { return syllable_key(canonical); }

NormalForm reduce(const Presentation& p, const GroupWord& w) {
  p.require_valid(w);
  std::vector<Syllable> stack;
  for (Letter l : w) {
    std::uint8_t c = letter_code(p, l);
    if (!stack.empty() && stack.back().factor == l.factor) {
      stack.back().word.push_back(c);
      stack.back().word = factor_reduce(p, l.factor, stack.back().word);
      if (stack.back().word.empty()) stack.pop_back();
    } else {
      stack.push_back(Syllable{l.factor, {c}});
    }
  }
  // canonicalize surface syllables so equal elements share a key
  for (auto& s : stack)
    if (p.is_surface_factor(s.factor)) s.word = surface_group(p.genus(s.factor)).canonical(s.word);
  return NormalForm{std::move(stack)};
}

bool is_trivial(const Presentation& p, const GroupWord& w) {
  return reduce(p, w).trivial();
}

int factor_geodesic_length(const Presentation& p, int factor, const GroupWord& w,
                           int radius_cap) {
  if (factor < 0 || factor >= p.num_factors()) throw InputError("factor index out of range");
  SurfaceGroup::FWord fw;
  for (Letter l : w) {
    if (l.factor != factor) throw InputError("factor_geodesic_length: letter outside factor");
    fw.push_back(letter_code(p, l));
  }
  if (!p.is_surface_factor(factor)) return (int)cyclic_factor_reduce(fw).size();
  return surface_group(p.genus(factor)).geodesic_length(fw, radius_cap);
}

CyclicClass cyclic_class(const Presentation& p, const NormalForm& nf) {
  if (nf.trivial()) throw InputError("cyclic class: the identity has no cyclic class");
  std::vector<Syllable> syls = nf.syllables;
  // cyclic reduction: merge first/last syllables in the same factor
  while (syls.size() >= 2 && syls.front().factor == syls.back().factor) {
    SurfaceGroup::FWord merged = syls.back().word;
    merged.insert(merged.end(), syls.front().word.begin(), syls.front().word.end());
    merged = factor_reduce(p, syls.front().factor, merged);
    int factor = syls.front().factor;
    syls.erase(syls.begin());
    syls.pop_back();
    if (!merged.empty()) {
      // rotate so the merged syllable sits at the end
      syls.push_back(Syllable{factor, std::move(merged)});
    }
    if (syls.empty()) throw InputError("cyclic class: word is trivial after cyclic reduction");
  }

  CyclicClass out;
  if (syls.size() == 1) {
    const Syllable& s = syls[0];
    if (p.is_surface_factor(s.factor)) {
      const SurfaceGroup& sg = surface_group(p.genus(s.factor));
      SurfaceGroup::FWord c1 = sg.cyclic_canonical(s.word);
      SurfaceGroup::FWord c2 = sg.cyclic_canonical(SurfaceGroup::inverse(s.word));
      SurfaceGroup::FWord best = std::min(c1, c2);
      out.canonical = {Syllable{s.factor, best}};
      out.cayley_length = (int)best.size();
    } else {
      SurfaceGroup::FWord red = cyclic_factor_reduce(s.word);
      SurfaceGroup::FWord pos(red.size(), 0);  // class of t^n = class of t^-n
      out.canonical = {Syllable{s.factor, pos}};
      out.cayley_length = (int)pos.size();
    }
    return out;
  }

  // multi-syllable: least over rotations of the sequence and of its inverse
  auto canonical_syls = [&](std::vector<Syllable> v) {
    for (auto& s : v)
      if (p.is_surface_factor(s.factor)) s.word = surface_group(p.genus(s.factor)).canonical(s.word);
    return v;
  };
  std::vector<Syllable> fwd = canonical_syls(syls);
  std::vector<Syllable> rev;
  for (auto it = syls.rbegin(); it != syls.rend(); ++it) rev.push_back(invert_syllable(p, *it));
  rev = canonical_syls(rev);

  std::vector<Syllable> best;
  for (const auto* seq : {&fwd, &rev}) {
    for (size_t r = 0; r < seq->size(); ++r) {
      std::vector<Syllable> rot(seq->begin() + r, seq->end());
      rot.insert(rot.end(), seq->begin(), seq->begin() + r);
      if (best.empty() || rot < best) best = std::move(rot);
    }
  }
  out.canonical = std::move(best);
  for (const auto& s : out.canonical) out.cayley_length += (int)s.word.size();
  return out;
}

CyclicClass cyclic_class(const Presentation& p, const GroupWord& w) {
  return cyclic_class(p, reduce(p, w));
}

std::vector<BallElement> enumerate_ball(const Presentation& p, int radius, int radius_cap) {
  if (radius > radius_cap)
    throw UndeterminedError("enumerate_ball: radius cap " + std::to_string(radius_cap) +
                            " exceeded");
  std::vector<BallElement> out;
  std::unordered_map<std::string, int> seen;
  NormalForm id;
  seen.emplace(id.key(), 0);
  out.push_back(BallElement{id, 0});
  size_t frontier_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    size_t frontier_end = out.size();
    for (size_t i = frontier_begin; i < frontier_end; ++i) {
      GroupWord base = out[i].nf.word();
      for (int id2 = 0; id2 < p.alphabet_size(); ++id2) {
        GroupWord w = base;
        w.push_back(p.letter_from_id(id2));
        NormalForm nf = reduce(p, w);
        if (seen.emplace(nf.key(), r).second) out.push_back(BallElement{std::move(nf), r});
      }
    }
    frontier_begin = frontier_end;
  }
  return out;
}

}  // namespace sepstab
