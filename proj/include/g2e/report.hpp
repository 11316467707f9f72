#ifndef G2E_REPORT_HPP
#define G2E_REPORT_HPP

/// @file report.hpp
/// Configuration, run orchestration, and serialization for the command-line
/// front end: flat key-value configs with sections, seeded deterministic
/// suites, JSON reports with provenance (config hash + seed), and CSV
/// emitters (RFC-4180 line conventions, UTF-8).

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2e {

/// Malformed configuration or unusable input (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat key-value configuration with [section] headers; keys are stored as
/// "section.key".  Unknown keys are preserved (and hashed) but ignored.
struct RunConfig {
  std::map<std::string, std::string> kv;

  static RunConfig from_string(const std::string& text);
  static RunConfig from_file(const std::string& path);

  bool has(const std::string& key) const { return kv.count(key) != 0; }
  std::string get(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key, double dflt) const;
  long long get_int(const std::string& key, long long dflt) const;

  /// FNV-1a 64-bit hash of the canonical "key=value\n" serialization.
  std::uint64_t hash() const;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0;     ///< residual / margin / count, per check
  double tolerance = 0; ///< threshold the value was compared against
};

/// Suite outcome with provenance; `pass()` fails iff any check fails.
struct Report {
  std::string suite;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string timestamp;
  std::vector<CheckResult> checks;
  std::vector<std::string> artifacts;          ///< files written, relative paths
  std::map<std::string, std::string> details;  ///< extra scalar fields

  bool pass() const;
  /// UTF-8 JSON serialization (schema_version 1); deterministic except for
  /// the timestamp field.
  std::string to_json() const;
  void write(const std::string& out_dir) const; ///< <out_dir>/<suite>_report.json
};

/// Invariant verification suites (algebra, G2 constructions, Einstein-universe
/// families, curve/developing map).  Sample counts and the float tolerance
/// come from [verify] config keys.
Report run_verify(const RunConfig& cfg, std::uint64_t seed);

/// PDE instance solve; writes <out_dir>/solve_fields.csv
/// (ix, iy, x, y, psi1, psi2) and returns the report with margins attached.
Report run_solve(const RunConfig& cfg, std::uint64_t seed, const std::string& out_dir);

/// Fuchsian sampling: developed-fiber point cloud, classification table, and
/// the degenerate-set sign table, as CSV files in out_dir.
Report run_fuchsian(const RunConfig& cfg, std::uint64_t seed, const std::string& out_dir);

} // namespace g2e

#endif
