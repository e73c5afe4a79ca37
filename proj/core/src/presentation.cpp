#include "sepstab/presentation.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <sstream>

namespace sepstab {

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::Handlebody: return "HANDLEBODY";
    case Shape::SmallBody: return "SMALL_BODY";
    case Shape::LargeBody: return "LARGE_BODY";
    case Shape::DoubleIBundle: return "DOUBLE_I_BUNDLE";
  }
  return "?";
}

static Shape classify_shape(const std::vector<int>& genera, int rank) {
  int k = (int)genera.size();
  if (k == 0) {
    if (rank >= 2) return Shape::Handlebody;
    throw InputError("presentation: a free factor alone needs rank >= 2");
  }
  if (k == 1) {
    if (rank >= 1) return Shape::SmallBody;
    throw InputError("presentation: a single surface factor with no handle is a trivial I-bundle");
  }
  if (k == 2 && rank == 0) return Shape::DoubleIBundle;
  return Shape::LargeBody;
}

Presentation::Presentation(std::vector<int> surface_genera, int free_rank)
    : genera_(std::move(surface_genera)), free_rank_(free_rank) {
  if (free_rank_ < 0) throw InputError("presentation: free_rank must be >= 0");
  for (int g : genera_)
    if (g < 2) throw InputError("presentation: surface genus must be >= 2");
  if (genera_.empty() && free_rank_ == 0)
    throw InputError("presentation: the trivial group is rejected");
  shape_ = classify_shape(genera_, free_rank_);
  positive_letters_ = 0;
  factor_letter_base_.reserve(num_factors());
  for (int f = 0; f < num_factors(); ++f) {
    factor_letter_base_.push_back(positive_letters_);
    positive_letters_ += factor_generators(f);
  }
}

bool Presentation::valid(Letter l) const {
  if (l.factor >= num_factors()) return false;
  return l.index < factor_generators(l.factor);
}

void Presentation::require_valid(const GroupWord& w) const {
  for (Letter l : w)
    if (!valid(l))
      throw InputError("word: letter references an invalid generator (factor " +
                       std::to_string(l.factor) + ", index " + std::to_string(l.index) + ")");
}

int Presentation::letter_id(Letter l) const {
  return 2 * (factor_letter_base_[l.factor] + l.index) + (l.inv ? 1 : 0);
}

Letter Presentation::letter_from_id(int id) const {
  bool inv = id & 1;
  int pos = id / 2;
  for (int f = num_factors() - 1; f >= 0; --f) {
    if (pos >= factor_letter_base_[f])
      return Letter((std::uint16_t)f, (std::uint16_t)(pos - factor_letter_base_[f]), inv);
  }
  throw InputError("letter id out of range");
}

std::string Presentation::letter_name(Letter l) const {
  std::string s;
  if (is_surface_factor(l.factor)) {
    char ab = (l.index % 2 == 0) ? 'a' : 'b';
    int i = l.index / 2 + 1;
    if (num_surface_factors() == 1) {
      s = ab + std::to_string(i);
    } else {
      s = ab + std::to_string(l.factor + 1) + "_" + std::to_string(i);
    }
  } else {
    int handle = l.factor - num_surface_factors();  // 0-based
    if (genera_.empty() && free_rank_ <= 26) {
      s = std::string(1, (char)('a' + handle));
    } else {
      s = "t" + std::to_string(handle + 1);
    }
  }
  if (l.inv) s += '\'';
  return s;
}

std::string Presentation::word_to_string(const GroupWord& w) const {
  if (w.empty()) return "1";
  std::string out;
  bool compact = genera_.empty() && free_rank_ <= 26;
  for (size_t i = 0; i < w.size(); ++i) {
    if (!compact && i) out += ' ';
    out += letter_name(w[i]);
  }
  return out;
}

namespace {

// token without trailing ', resolved to a positive letter
Letter resolve_name(const Presentation& p, const std::string& name) {
  if (name.empty()) throw InputError("word: empty letter token");
  char c = name[0];
  if (c == 't' && name.size() > 1 && std::isdigit((unsigned char)name[1])) {
    int k = std::stoi(name.substr(1));
    if (k < 1 || k > p.free_rank()) throw InputError("word: no handle letter " + name);
    return Letter((std::uint16_t)(p.num_surface_factors() + k - 1), 0, false);
  }
  if (p.num_surface_factors() == 0) {
    // pure free shape: single letters a..z name the handle generators
    if (name.size() == 1 && c >= 'a' && c <= 'z') {
      int k = c - 'a';
      if (k >= p.free_rank()) throw InputError("word: no generator " + name);
      return Letter((std::uint16_t)k, 0, false);
    }
    throw InputError("word: unknown generator " + name);
  }
  if (c != 'a' && c != 'b') throw InputError("word: unknown generator " + name);
  std::string rest = name.substr(1);
  int factor = 0, idx;
  auto us = rest.find('_');
  if (us != std::string::npos) {
    factor = std::stoi(rest.substr(0, us)) - 1;
    idx = std::stoi(rest.substr(us + 1)) - 1;
  } else {
    if (p.num_surface_factors() != 1)
      throw InputError("word: ambiguous generator " + name + "; use a<factor>_<index>");
    idx = std::stoi(rest) - 1;
  }
  if (factor < 0 || factor >= p.num_surface_factors())
    throw InputError("word: no surface factor for " + name);
  if (idx < 0 || idx >= p.genus(factor))
    throw InputError("word: generator index out of range in " + name);
  return Letter((std::uint16_t)factor, (std::uint16_t)(2 * idx + (c == 'b' ? 1 : 0)), false);
}

}  // namespace

GroupWord Presentation::parse_word(const std::string& text) const {
  GroupWord w;
  if (text == "1" || text.empty()) return w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (num_surface_factors() == 0 && tok.find_first_of("0123456789_") == std::string::npos) {
      // compact free-group form: "ab'a"
      for (size_t i = 0; i < tok.size();) {
        if (tok[i] == '1' && tok.size() == 1) break;
        std::string name(1, tok[i]);
        ++i;
        bool inv = i < tok.size() && tok[i] == '\'';
        if (inv) ++i;
        Letter l = resolve_name(*this, name);
        l.inv = inv;
        w.push_back(l);
      }
      continue;
    }
    bool inv = !tok.empty() && tok.back() == '\'';
    if (inv) tok.pop_back();
    Letter l = resolve_name(*this, tok);
    l.inv = inv;
    w.push_back(l);
  }
  return w;
}

std::string Presentation::to_json() const {
  nlohmann::json j;
  j["surface_genera"] = genera_;
  j["free_rank"] = free_rank_;
  return j.dump();
}

Presentation Presentation::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("presentation json: ") + e.what());
  }
  if (!j.contains("surface_genera") || !j.contains("free_rank"))
    throw InputError("presentation json: need surface_genera and free_rank");
  return Presentation(j["surface_genera"].get<std::vector<int>>(), j["free_rank"].get<int>());
}

}  // namespace sepstab
