#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sepstab/stability.hpp"

namespace sepstab {

// linear sweep of one trace coordinate; re and im interpolate together
struct AxisSpec {
  Complex lo{0, 0};
  Complex hi{0, 0};
  int steps = 1;

  Complex at(int i) const;
};

struct ScanConfig {
  std::string version;        // format tag, required
  std::string slice;          // only F2_TRACE
  Presentation presentation{{}, 2};  // rank-2 free
  AxisSpec x, y, z;           // z fixed (steps = 1); x sweeps columns, y rows
  int depth = 5;
  int enlargement = 0;
  NestingParams nesting;
  double tol = 1e-10;
  int workers = 1;
  double ratio_cap = 1.0;  // blue channel saturates at this ratio
  std::string csv_path, ppm_path, meta_path;
  std::optional<std::uint64_t> seed;  // consumed only by randomized self-checks

  static ScanConfig from_json(const std::string& text);
  std::string to_json() const;
};

struct ScanRecord {
  int ix = 0, iy = 0;
  Complex x, y, z;
  int verdict = 3;
  double min_ratio = 0;
  std::string witness;
  int classes_tested = 0;
  long ms = 0;  // kept at zero so the CSV is byte-stable across runs
};

struct ScanResult {
  std::vector<ScanRecord> records;  // row-major, y outer from the low end
  std::array<std::size_t, 4> verdict_counts{};
  double runtime_ms = 0;
};

ScanRecord scan_cell(const ScanConfig& cfg, const std::vector<CyclicClass>& classes, int ix,
                     int iy);

ScanResult run_scan(const ScanConfig& cfg);

std::string csv_text(const ScanConfig& cfg, const std::vector<ScanRecord>& records);
std::string render_ppm(const std::vector<ScanRecord>& records, const ScanConfig& cfg);
std::string metadata_json(const ScanConfig& cfg, const ScanResult& result);

// writes csv, ppm, and metadata; throws std::runtime_error on I/O failure
void write_scan_outputs(const ScanConfig& cfg, const ScanResult& result);

extern const char* const kToolVersion;

}  // namespace sepstab
