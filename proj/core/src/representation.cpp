#include "sepstab/representation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace sepstab {

namespace {

bool finite(const H3Point& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.h) && p.h > 0;
}

GroupWord surface_relator(const Presentation& p, int factor) {
  GroupWord w;
  for (int i = 0; i < p.genus(factor); ++i) {
    Letter a((std::uint16_t)factor, (std::uint16_t)(2 * i), false);
    Letter b((std::uint16_t)factor, (std::uint16_t)(2 * i + 1), false);
    w.push_back(a);
    w.push_back(b);
    w.push_back(a.inverse());
    w.push_back(b.inverse());
  }
  return w;
}

}  // namespace

Representation::Representation(Presentation p, std::vector<MoebiusMap> generators,
                               H3Point basepoint)
    : presentation_(std::move(p)), generators_(std::move(generators)), basepoint_(basepoint) {
  if ((int)generators_.size() != presentation_.rank())
    throw InputError("representation: need one map per positive generator");
  if (!(basepoint_.h > 0)) throw InputError("representation: basepoint height must be positive");
  for (auto& g : generators_) {
    if (std::abs(g.det() - 1.0) > 1e-9)
      throw InputError("representation: generator determinant is not 1");
    g = g.normalized();
  }
  for (int f = 0; f < presentation_.num_surface_factors(); ++f) {
    double defect = frobenius_gap(evaluate(surface_relator(presentation_, f)),
                                  MoebiusMap::identity());
    if (defect > 1e-8) {
      warnings_.push_back("surface relator of factor " + std::to_string(f) +
                          " maps off the identity by " + std::to_string(defect));
    }
  }
}

MoebiusMap Representation::evaluate(const GroupWord& w) const {
  presentation_.require_valid(w);
  MoebiusMap m = MoebiusMap::identity();
  for (Letter l : w) {
    const MoebiusMap& g = generators_[presentation_.letter_id(l) / 2];
    m = m * (l.inv ? g.inverse() : g);
  }
  return m;
}

std::vector<H3Point> orbit_path(const Representation& r, const GroupWord& w) {
  r.presentation().require_valid(w);
  auto run = [&](bool renormalize) {
    std::vector<H3Point> path{r.basepoint()};
    MoebiusMap m = MoebiusMap::identity();
    for (Letter l : w) {
      const MoebiusMap& g = r.generators()[r.presentation().letter_id(l) / 2];
      m = m * (l.inv ? g.inverse() : g);
      if (renormalize) m = m.normalized();
      path.push_back(m.apply(r.basepoint()));
    }
    return path;
  };
  std::vector<H3Point> path = run(false);
  if (std::all_of(path.begin(), path.end(), finite)) return path;
  path = run(true);
  if (std::all_of(path.begin(), path.end(), finite)) return path;
  throw UndeterminedError("orbit path: numerical overflow at extreme heights");
}

Representation rep_from_traces(Complex x, Complex y, Complex z) {
  Complex root = std::sqrt(z * z - 4.0);
  Complex k = (z + root) / 2.0;
  if (std::abs(k) < std::abs((z - root) / 2.0)) k = (z - root) / 2.0;
  if (std::abs(k) == 0.0) k = 1.0;  // unreachable for k + 1/k = z solutions
  MoebiusMap A{x, -1.0, 1.0, 0.0};
  MoebiusMap B{0.0, k, -1.0 / k, y};
  return Representation(Presentation({}, 2), {A, B});
}

std::string Representation::to_json() const {
  nlohmann::json j;
  for (int i = 0; i < presentation_.rank(); ++i) {
    Letter l = presentation_.letter_from_id(2 * i);
    const MoebiusMap& m = generators_[i];
    j["generators"][presentation_.letter_name(l)] = {
        {m.a.real(), m.a.imag()}, {m.b.real(), m.b.imag()},
        {m.c.real(), m.c.imag()}, {m.d.real(), m.d.imag()}};
  }
  j["basepoint"] = {basepoint_.x, basepoint_.y, basepoint_.h};
  return j.dump();
}

Representation Representation::from_json(const Presentation& p, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("representation json: ") + e.what());
  }
  if (!j.contains("generators")) throw InputError("representation json: missing generators");
  std::vector<MoebiusMap> gens;
  for (int i = 0; i < p.rank(); ++i) {
    std::string name = p.letter_name(p.letter_from_id(2 * i));
    if (!j["generators"].contains(name))
      throw InputError("representation json: missing generator " + name);
    auto e = j["generators"][name];
    if (!e.is_array() || e.size() != 4)
      throw InputError("representation json: generator " + name + " needs 4 complex entries");
    auto cx = [&](int idx) {
      return Complex(e[idx][0].get<double>(), e[idx][1].get<double>());
    };
    gens.push_back(MoebiusMap{cx(0), cx(1), cx(2), cx(3)});
  }
  H3Point base{0, 0, 1};
  if (j.contains("basepoint")) {
    auto b = j["basepoint"];
    if (!b.is_array() || b.size() != 3) throw InputError("representation json: bad basepoint");
    base = H3Point{b[0].get<double>(), b[1].get<double>(), b[2].get<double>()};
  }
  return Representation(p, std::move(gens), base);
}

}  // namespace sepstab
