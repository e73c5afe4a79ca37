#include "sepstab/scan.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace sepstab {

const char* const kToolVersion = "0.1.0";

Complex AxisSpec::at(int i) const {
  if (steps == 1) return lo;
  double t = (double)i / (double)(steps - 1);
  return lo + (hi - lo) * t;
}

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  throw InputError("scan config: field '" + field + "' " + what);
}

double finite_number(const json& j, const std::string& field) {
  if (!j.is_number()) config_error(field, "must be a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) config_error(field, "must be finite");
  return v;
}

// a component is a fixed number or a [lo, hi] range
void parse_component(const json& j, const std::string& field, double& lo, double& hi) {
  if (j.is_array()) {
    if (j.size() != 2) config_error(field, "range must have two entries");
    lo = finite_number(j[0], field);
    hi = finite_number(j[1], field);
    return;
  }
  lo = hi = finite_number(j, field);
}

AxisSpec parse_axis(const json& j, const std::string& name) {
  AxisSpec a;
  double re_lo = 0, re_hi = 0, im_lo = 0, im_hi = 0;
  if (j.is_number()) {
    re_lo = re_hi = finite_number(j, name);
  } else if (j.is_object()) {
    if (j.contains("re")) parse_component(j.at("re"), name + ".re", re_lo, re_hi);
    if (j.contains("im")) parse_component(j.at("im"), name + ".im", im_lo, im_hi);
    if (j.contains("steps")) {
      if (!j.at("steps").is_number_integer()) config_error(name + ".steps", "must be an integer");
      a.steps = j.at("steps").get<int>();
    }
  } else {
    config_error(name, "must be a number or an object");
  }
  if (a.steps < 1) config_error(name + ".steps", "must be >= 1");
  a.lo = Complex(re_lo, im_lo);
  a.hi = Complex(re_hi, im_hi);
  return a;
}

json axis_json(const AxisSpec& a) {
  return json{{"re", {a.lo.real(), a.hi.real()}}, {"im", {a.lo.imag(), a.hi.imag()}},
              {"steps", a.steps}};
}

// shortest round-trip decimal form, identical across runs
std::string fmt(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void validate(const ScanConfig& cfg) {
  if (cfg.version.empty()) config_error("version", "is required");
  if (cfg.slice != "F2_TRACE") config_error("slice", "must be F2_TRACE");
  if (cfg.presentation.shape() != Shape::Handlebody || cfg.presentation.rank() != 2)
    config_error("presentation", "must be the rank-2 free shape for an F2_TRACE slice");
  if (cfg.z.steps != 1) config_error("z.steps", "must be 1 (z is the fixed coordinate)");
  if (cfg.depth < 1) config_error("depth", "must be >= 1");
  if (cfg.enlargement < 0) config_error("enlargement", "must be >= 0");
  if (cfg.nesting.stride < 1) config_error("nesting.stride", "must be >= 1");
  if (!(cfg.nesting.spacing > 0)) config_error("nesting.spacing", "must be > 0");
  if (cfg.nesting.reps < 3) config_error("nesting.reps", "must be >= 3");
  if (!(cfg.tol > 0)) config_error("tol", "must be > 0");
  if (cfg.workers < 1) config_error("workers", "must be >= 1");
  if (!(cfg.ratio_cap > 0)) config_error("ratio_cap", "must be > 0");
}

}  // namespace

ScanConfig ScanConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("scan config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("scan config: top level must be an object");
  ScanConfig cfg;
  cfg.presentation = Presentation({}, 2);
  if (!j.contains("version")) config_error("version", "is required");
  cfg.version = j.at("version").is_string() ? j.at("version").get<std::string>()
                                            : j.at("version").dump();
  cfg.slice = j.value("slice", std::string("F2_TRACE"));
  if (j.contains("presentation")) {
    try {
      cfg.presentation = Presentation::from_json(j.at("presentation").dump());
    } catch (const std::exception& e) {
      config_error("presentation", e.what());
    }
  }
  cfg.x = j.contains("x") ? parse_axis(j.at("x"), "x") : AxisSpec{};
  cfg.y = j.contains("y") ? parse_axis(j.at("y"), "y") : AxisSpec{};
  cfg.z = j.contains("z") ? parse_axis(j.at("z"), "z") : AxisSpec{};
  cfg.depth = j.value("depth", 5);
  cfg.enlargement = j.value("enlargement", 0);
  if (j.contains("nesting")) {
    const json& n = j.at("nesting");
    cfg.nesting.stride = n.value("stride", cfg.nesting.stride);
    cfg.nesting.spacing = n.value("spacing", cfg.nesting.spacing);
    cfg.nesting.reps = n.value("reps", cfg.nesting.reps);
  }
  cfg.tol = j.value("tol", cfg.tol);
  cfg.workers = j.value("workers", 1);
  cfg.ratio_cap = j.value("ratio_cap", 1.0);
  if (j.contains("output")) {
    const json& o = j.at("output");
    cfg.csv_path = o.value("csv", std::string());
    cfg.ppm_path = o.value("ppm", std::string());
    cfg.meta_path = o.value("meta", std::string());
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) config_error("seed", "must be a nonnegative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  validate(cfg);
  return cfg;
}

std::string ScanConfig::to_json() const {
  json j;
  j["version"] = version;
  j["slice"] = slice;
  j["presentation"] = json::parse(presentation.to_json());
  j["x"] = axis_json(x);
  j["y"] = axis_json(y);
  j["z"] = axis_json(z);
  j["depth"] = depth;
  j["enlargement"] = enlargement;
  j["nesting"] = {{"stride", nesting.stride}, {"spacing", nesting.spacing},
                  {"reps", nesting.reps}};
  j["tol"] = tol;
  j["workers"] = workers;
  j["ratio_cap"] = ratio_cap;
  j["output"] = {{"csv", csv_path}, {"ppm", ppm_path}, {"meta", meta_path}};
  if (seed) j["seed"] = *seed;
  return j.dump(2);
}

ScanRecord scan_cell(const ScanConfig& cfg, const std::vector<CyclicClass>& classes, int ix,
                     int iy) {
  ScanRecord rec;
  rec.ix = ix;
  rec.iy = iy;
  rec.x = cfg.x.at(ix);
  rec.y = cfg.y.at(iy);
  rec.z = cfg.z.at(0);
  rec.classes_tested = (int)classes.size();
  try {
    Representation rep = rep_from_traces(rec.x, rec.y, rec.z);
    StabilityVerdict v =
        certify_with_classes(rep, cfg.presentation, cfg.depth, classes, cfg.nesting, cfg.tol);
    rec.verdict = verdict_kind_code(v.kind);
    rec.min_ratio = v.score.min_ratio;
    if (v.witness) rec.witness = cfg.presentation.word_to_string(v.witness->word());
  } catch (const std::exception&) {
    rec.verdict = verdict_kind_code(VerdictKind::Undetermined);
  }
  return rec;
}

ScanResult run_scan(const ScanConfig& cfg) {
  validate(cfg);
  auto t0 = std::chrono::steady_clock::now();
  std::vector<CyclicClass> classes =
      enumerate_separable_classes(cfg.presentation, cfg.depth, cfg.enlargement);

  ScanResult res;
  res.records.resize((std::size_t)cfg.x.steps * cfg.y.steps);
  std::atomic<int> next_row{0};
  auto worker = [&] {
    for (;;) {
      int iy = next_row.fetch_add(1);
      if (iy >= cfg.y.steps) return;
      for (int ix = 0; ix < cfg.x.steps; ++ix)
        res.records[(std::size_t)iy * cfg.x.steps + ix] = scan_cell(cfg, classes, ix, iy);
    }
  };
  int nthreads = std::min(cfg.workers, cfg.y.steps);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const ScanRecord& r : res.records) ++res.verdict_counts[(std::size_t)r.verdict];
  res.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::string csv_text(const ScanConfig& cfg, const std::vector<ScanRecord>& records) {
  (void)cfg;
  std::string out = "ix,iy,x_re,x_im,y_re,y_im,z_re,z_im,verdict,min_ratio,witness,classes_tested,ms\n";
  for (const ScanRecord& r : records) {
    out += std::to_string(r.ix) + ',' + std::to_string(r.iy) + ',';
    out += fmt(r.x.real()) + ',' + fmt(r.x.imag()) + ',';
    out += fmt(r.y.real()) + ',' + fmt(r.y.imag()) + ',';
    out += fmt(r.z.real()) + ',' + fmt(r.z.imag()) + ',';
    out += std::to_string(r.verdict) + ',' + fmt(r.min_ratio) + ',';
    out += '"' + r.witness + "\",";
    out += std::to_string(r.classes_tested) + ',' + std::to_string(r.ms) + '\n';
  }
  return out;
}

std::string render_ppm(const std::vector<ScanRecord>& records, const ScanConfig& cfg) {
  const std::size_t w = (std::size_t)cfg.x.steps, h = (std::size_t)cfg.y.steps;
  if (records.size() != w * h) throw InputError("render: record count does not match the grid");
  std::string out = "P6\n" + std::to_string(w) + ' ' + std::to_string(h) + "\n255\n";
  out.reserve(out.size() + 3 * w * h);
  for (const ScanRecord& r : records) {
    unsigned char rgb[3] = {128, 128, 128};
    switch (r.verdict) {
      case 0: {
        double b = 255.0 * r.min_ratio / cfg.ratio_cap;
        if (!(b > 0)) b = 0;
        if (b > 255) b = 255;
        rgb[0] = 0;
        rgb[1] = 0;
        rgb[2] = (unsigned char)std::lround(b);
        break;
      }
      case 1:
        rgb[0] = 255;
        rgb[1] = 0;
        rgb[2] = 0;
        break;
      case 2:
        rgb[0] = 255;
        rgb[1] = 0;
        rgb[2] = 255;
        break;
      default: break;
    }
    out.append((const char*)rgb, 3);
  }
  return out;
}

std::string metadata_json(const ScanConfig& cfg, const ScanResult& result) {
  json j;
  j["config"] = json::parse(cfg.to_json());
  j["tool_version"] = kToolVersion;
  j["runtime_ms"] = result.runtime_ms;
  j["records"] = result.records.size();
  j["verdict_counts"] = {
      {"CERTIFIED_AT_DEPTH", result.verdict_counts[0]},
      {"REJECTED_PARABOLIC", result.verdict_counts[1]},
      {"REJECTED_ELLIPTIC", result.verdict_counts[2]},
      {"UNDETERMINED", result.verdict_counts[3]},
  };
  return j.dump(2);
}

namespace {

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(bytes.data(), (std::streamsize)bytes.size());
  if (!out) throw std::runtime_error("write failed on " + path);
}

}  // namespace

void write_scan_outputs(const ScanConfig& cfg, const ScanResult& result) {
  if (!cfg.csv_path.empty()) write_file(cfg.csv_path, csv_text(cfg, result.records));
  if (!cfg.ppm_path.empty()) write_file(cfg.ppm_path, render_ppm(result.records, cfg));
  if (!cfg.meta_path.empty()) write_file(cfg.meta_path, metadata_json(cfg, result));
}

}  // namespace sepstab
