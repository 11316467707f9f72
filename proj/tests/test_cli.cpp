// Unit tests for the CLI layer: configuration parsing and error handling,
// config hashing, report serialization and determinism, and the three run
// suites (verify / solve / fuchsian) at library level, including artifact
// CSV files and the exit-code semantics encoded by Report::pass().
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g2e/report.hpp"
#include "g2e/sextic.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace g2e;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int csv_lines(const std::string& text) {
  int n = 0;
  for (std::size_t t = 0; t + 1 < text.size(); ++t)
    if (text[t] == '\r' && text[t + 1] == '\n') ++n;
  return n;
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path d = fs::temp_directory_path() / ("g2e_cli_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

nlohmann::json parsed_without_timestamp(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  j.erase("timestamp");
  return j;
}

} // namespace

TEST_CASE("config parsing: sections, comments, whitespace, typed getters") {
  const RunConfig cfg = RunConfig::from_string(
      "# leading comment\n"
      "top = 1\n"
      "[verify]\n"
      "  samples =  10   # trailing comment\n"
      "tol = 1e-9\n"
      "\n"
      "[solve]\n"
      "instance = flat\n"
      "n = 16\n");
  CHECK(cfg.has("top"));
  CHECK(cfg.get_int("top", 0) == 1);
  CHECK(cfg.get_int("verify.samples", 0) == 10);
  CHECK(cfg.get_double("verify.tol", 0) == doctest::Approx(1e-9));
  CHECK(cfg.get("solve.instance", "") == "flat");
  CHECK(cfg.get_int("solve.n", 0) == 16);
  // defaults for missing keys
  CHECK(cfg.get("missing", "dflt") == "dflt");
  CHECK(cfg.get_double("missing", 2.5) == 2.5);
  CHECK(cfg.get_int("missing", 7) == 7);
}

TEST_CASE("config errors: malformed lines, types, missing file") {
  CHECK_THROWS_AS(RunConfig::from_string("novalue\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_string("= 3\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_string("[unterminated\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_string("[]\nk = 1\n"), ConfigError);
  const RunConfig bad = RunConfig::from_string("[verify]\ntol = abc\nsamples = 1.5\n");
  CHECK_THROWS_AS(bad.get_double("verify.tol", 0), ConfigError);
  CHECK_THROWS_AS(bad.get_int("verify.samples", 0), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_file("/nonexistent/g2e.cfg"), ConfigError);
}

TEST_CASE("config hash: canonical, order-insensitive, value-sensitive") {
  const RunConfig a = RunConfig::from_string("[s]\nx = 1\ny = 2\n");
  const RunConfig b = RunConfig::from_string("[s]\ny = 2\nx = 1\n");
  const RunConfig c = RunConfig::from_string("[s]\nx = 1\ny = 3\n");
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() != c.hash());
  CHECK(RunConfig{}.hash() == 0xCBF29CE484222325ULL); // FNV-1a offset basis
}

TEST_CASE("run_verify: defaults pass; seeded runs are byte-deterministic") {
  const RunConfig cfg = RunConfig::from_string("[verify]\nsamples = 12\n");
  Report r1 = run_verify(cfg, 42);
  CHECK(r1.pass());
  CHECK(r1.suite == "verify");
  CHECK(r1.seed == 42);
  CHECK(r1.config_hash == cfg.hash());
  CHECK(r1.checks.size() >= 15);

  Report r2 = run_verify(cfg, 42);
  CHECK(parsed_without_timestamp(r1.to_json()) == parsed_without_timestamp(r2.to_json()));
}

TEST_CASE("run_verify: zero tolerance reports failures (exit 1 semantics)") {
  const RunConfig cfg = RunConfig::from_string("[verify]\nsamples = 6\ntol = 0\n");
  const Report r = run_verify(cfg, 1);
  CHECK(!r.pass());
  // exact checks still pass; only float residual checks can fail
  for (const auto& c : r.checks)
    if (c.name == "composition_law" || c.name == "basis_table_vs_doubling") CHECK(c.pass);
}

TEST_CASE("run_verify: invalid tolerance or sample count is a config error") {
  CHECK_THROWS_AS(run_verify(RunConfig::from_string("[verify]\ntol = -1\n"), 0), ConfigError);
  CHECK_THROWS_AS(run_verify(RunConfig::from_string("[verify]\nsamples = 0\n"), 0), ConfigError);
}

TEST_CASE("run_solve: hyperbolic instance converges, strict margins, CSV artifact") {
  const fs::path dir = fresh_dir("solve_hyp");
  const RunConfig cfg = RunConfig::from_string("[solve]\ninstance = hyperbolic\nn = 16\n");
  const Report r = run_solve(cfg, 7, dir.string());
  CHECK(r.pass());
  CHECK(r.suite == "solve");
  bool saw_strict = false;
  for (const auto& c : r.checks)
    if (c.name == "bounds_strict") {
      saw_strict = true;
      CHECK(c.value > 0);
    }
  CHECK(saw_strict);
  CHECK(r.details.at("q_model") == "constant");
  CHECK(std::stod(r.details.at("margin_det3")) == doctest::Approx(3.0).epsilon(1e-9));

  const std::string csv = slurp(dir / "solve_fields.csv");
  CHECK(csv_lines(csv) == 16 * 16 + 1); // header + one row per node
  CHECK(csv.rfind("ix,iy,x,y,psi1,psi2\r\n", 0) == 0);

  r.write(dir.string());
  CHECK(fs::exists(dir / "solve_report.json"));
}

TEST_CASE("run_solve: flat instance saturates both bounds") {
  const fs::path dir = fresh_dir("solve_flat");
  const RunConfig cfg =
      RunConfig::from_string("[solve]\ninstance = flat\nn = 12\nc = 2.0\ninit_amp = 0.3\n");
  const Report r = run_solve(cfg, 11, dir.string());
  CHECK(r.pass());
  CHECK(std::abs(std::stod(r.details.at("margin_det3"))) < 1e-8);
  CHECK(std::abs(std::stod(r.details.at("margin_sixfifth"))) < 1e-8);
}

TEST_CASE("run_solve: perturbed instance is flagged synthetic with quadratic tail") {
  const fs::path dir = fresh_dir("solve_pert");
  const RunConfig cfg = RunConfig::from_string("[solve]\ninstance = perturbed\nn = 16\n");
  const Report r = run_solve(cfg, 3, dir.string());
  CHECK(r.pass());
  CHECK(r.details.at("q_model") == "synthetic (non-holomorphic)");
  bool saw_tail = false;
  for (const auto& c : r.checks)
    if (c.name == "quadratic_tail") saw_tail = c.pass;
  CHECK(saw_tail);
}

TEST_CASE("run_solve: dirichlet instance converges to the flat constants") {
  const fs::path dir = fresh_dir("solve_dir");
  const RunConfig cfg =
      RunConfig::from_string("[solve]\ninstance = dirichlet\nn = 12\nc = 1.0\n");
  const Report r = run_solve(cfg, 5, dir.string());
  CHECK(r.pass());
}

TEST_CASE("run_solve: unknown instance and bad parameters are config errors") {
  const fs::path dir = fresh_dir("solve_bad");
  CHECK_THROWS_AS(
      run_solve(RunConfig::from_string("[solve]\ninstance = nosuch\n"), 0, dir.string()),
      ConfigError);
  CHECK_THROWS_AS(run_solve(RunConfig::from_string("[solve]\nn = 2\n"), 0, dir.string()),
                  ConfigError);
  CHECK_THROWS_AS(
      run_solve(RunConfig::from_string("[solve]\ninstance = flat\nc = -1\n"), 0, dir.string()),
      ConfigError);
}

TEST_CASE("run_fuchsian: null fibers, classification invariants, degenerate table") {
  const fs::path dir = fresh_dir("fuchsian");
  const RunConfig cfg = RunConfig::from_string(
      "[fuchsian]\nfiber_samples = 10\nclassify_samples = 6\nt_count = 4\n");
  const Report r = run_fuchsian(cfg, 9, dir.string());
  CHECK(r.pass());

  const std::string fiber = slurp(dir / "fuchsian_fiber.csv");
  CHECK(csv_lines(fiber) == 36 + 10 + 1); // 6x6 grid + samples + header
  CHECK(fiber.rfind("x,y,theta,alpha,r,c0,c1,c2,c3,c4,c5,c6\r\n", 0) == 0);

  const std::string cls = slurp(dir / "fuchsian_classification.csv");
  CHECK(csv_lines(cls) == 5 + 6 + 1); // representatives + samples + header

  const std::string deg = slurp(dir / "fuchsian_degenerate.csv");
  CHECK(csv_lines(deg) == 4 + 1);

  // determinism of the whole suite (timestamp aside)
  const Report r2 = run_fuchsian(cfg, 9, fresh_dir("fuchsian2").string());
  CHECK(parsed_without_timestamp(r.to_json()) == parsed_without_timestamp(r2.to_json()));
}

TEST_CASE("report JSON: schema fields and pass aggregation") {
  Report r;
  r.suite = "demo";
  r.config_hash = 0xABCDULL;
  r.seed = 5;
  r.timestamp = "2026-01-01T00:00:00Z";
  r.checks.push_back({"ok", true, 0.0, 1.0});
  CHECK(r.pass());
  r.checks.push_back({"bad", false, 2.0, 1.0});
  CHECK(!r.pass());
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["schema_version"] == 1);
  CHECK(j["suite"] == "demo");
  CHECK(j["config_hash"] == "000000000000abcd");
  CHECK(j["seed"] == 5);
  CHECK(j["pass"] == false);
  CHECK(j["checks"].size() == 2);
  CHECK(j["checks"][1]["name"] == "bad");
  CHECK(j["checks"][1]["value"] == 2.0);
}
