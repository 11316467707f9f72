/// @file report.cpp
/// Config parsing, report serialization, and the three CLI suites.

#include "g2e/report.hpp"

#include "g2e/classify.hpp"
#include "g2e/curve.hpp"
#include "g2e/ein.hpp"
#include "g2e/g2basis.hpp"
#include "g2e/hitchin.hpp"
#include "g2e/imvector.hpp"
#include "g2e/octonion.hpp"
#include "g2e/rng.hpp"
#include "g2e/sampling.hpp"
#include "g2e/sextic.hpp"

#include <json.hpp>

#include <cctype>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace g2e {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string now_iso8601() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// CSV writer with RFC-4180 line conventions (CRLF), UTF-8 passthrough.
class CsvWriter {
public:
  CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open CSV for writing: " + path);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t t = 0; t < cells.size(); ++t) {
      if (t) out_ << ',';
      out_ << escape(cells[t]);
    }
    out_ << "\r\n";
  }

private:
  static std::string escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) {
      r += c;
      if (c == '"') r += '"';
    }
    return r + "\"";
  }
  std::ofstream out_;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string fmt(const Rat& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

} // namespace

// ---------------------------------------------------------------------------
// RunConfig

RunConfig RunConfig::from_string(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) + ": unterminated [section]");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("config line " + std::to_string(lineno) + ": empty section name");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    cfg.kv[section.empty() ? key : section + "." + key] = value;
  }
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str());
}

std::string RunConfig::get(const std::string& key, const std::string& dflt) const {
  const auto it = kv.find(key);
  return it == kv.end() ? dflt : it->second;
}

double RunConfig::get_double(const std::string& key, double dflt) const {
  const auto it = kv.find(key);
  if (it == kv.end()) return dflt;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": not a number: " + it->second);
  }
}

long long RunConfig::get_int(const std::string& key, long long dflt) const {
  const auto it = kv.find(key);
  if (it == kv.end()) return dflt;
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": not an integer: " + it->second);
  }
}

std::uint64_t RunConfig::hash() const {
  std::uint64_t h = 0xCBF29CE484222325ULL; // FNV-1a 64 offset basis
  const auto feed = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001B3ULL;
    }
  };
  for (const auto& [k, v] : kv) {
    feed(k);
    feed("=");
    feed(v);
    feed("\n");
  }
  return h;
}

// ---------------------------------------------------------------------------
// Report

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["suite"] = suite;
  {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << config_hash;
    j["config_hash"] = os.str();
  }
  j["seed"] = seed;
  j["timestamp"] = timestamp;
  j["pass"] = pass();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"value", c.value},
                           {"tolerance", c.tolerance}});
  j["artifacts"] = artifacts;
  j["details"] = details;
  return j.dump(2) + "\n";
}

void Report::write(const std::string& out_dir) const {
  std::filesystem::create_directories(out_dir);
  const std::string path = out_dir + "/" + suite + "_report.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << to_json();
}

// ---------------------------------------------------------------------------
// verify suite

namespace {

SplitOct<Rat> random_oct(SplitMix64& rng) {
  SplitOct<Rat> x;
  for (int t = 0; t < 8; ++t) x.c[t] = rng.rat(9, 5);
  return x;
}

void push(Report& rep, const std::string& name, bool pass, double value, double tol) {
  rep.checks.push_back({name, pass, value, tol});
}

/// Count-style check: passes iff no violations.
void push_count(Report& rep, const std::string& name, long long violations) {
  rep.checks.push_back({name, violations == 0, static_cast<double>(violations), 0.0});
}

double proj_sup_dist(const BinForm<double>& a, const BinForm<double>& b) {
  double sa = 0, sb = 0;
  for (int t = 0; t < 7; ++t) {
    sa = std::max(sa, std::abs(a[t]));
    sb = std::max(sb, std::abs(b[t]));
  }
  double dp = 0, dm = 0;
  for (int t = 0; t < 7; ++t) {
    dp = std::max(dp, std::abs(a[t] / sa - b[t] / sb));
    dm = std::max(dm, std::abs(a[t] / sa + b[t] / sb));
  }
  return std::min(dp, dm);
}

} // namespace

Report run_verify(const RunConfig& cfg, std::uint64_t seed) {
  const long long samples = cfg.get_int("verify.samples", 25);
  const double tol = cfg.get_double("verify.tol", 1e-9);
  if (samples < 1) throw ConfigError("verify.samples must be >= 1");
  if (tol < 0) throw ConfigError("verify.tol must be >= 0");

  Report rep;
  rep.suite = "verify";
  rep.config_hash = cfg.hash();
  rep.seed = seed;
  rep.timestamp = now_iso8601();

  SplitMix64 rng(seed);

  // Structure constants: the cached table against the doubling recursion.
  {
    long long bad = 0;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        const auto t = oct_mul(SplitOct<Rat>::basis(i), SplitOct<Rat>::basis(j));
        const auto d = oct_mul_cd(SplitOct<Rat>::basis(i), SplitOct<Rat>::basis(j));
        if (!(t == d)) ++bad;
      }
    push_count(rep, "basis_table_vs_doubling", bad);
  }

  // Exact algebra laws on random rational pairs.
  {
    long long comp = 0, alt = 0, dcross = 0;
    for (long long t = 0; t < samples; ++t) {
      const auto x = random_oct(rng), y = random_oct(rng);
      if (oct_quad(oct_mul(x, y)) != oct_quad(x) * oct_quad(y)) ++comp;
      if (!(oct_mul(x, oct_mul(x, y)) == oct_mul(oct_mul(x, x), y))) ++alt;
      if (!(oct_mul(oct_mul(y, x), x) == oct_mul(y, oct_mul(x, x)))) ++alt;
      const ImVector<Rat> u = sample_im(rng), v = sample_im(rng);
      const ImVector<Rat> lhs = cross(u, cross(u, v));
      ImVector<Rat> rhs;
      const Rat qu = quad(u), quv = quad_pair(u, v);
      for (int k = 0; k < 7; ++k) rhs.c[k] = -qu * v.c[k] + quv * u.c[k];
      if (!(lhs == rhs)) ++dcross;
    }
    push_count(rep, "composition_law", comp);
    push_count(rep, "alternativity", alt);
    push_count(rep, "double_cross_identity", dcross);
  }

  // Annihilator dimensions: 3 (all-null basis) for null, 1 otherwise.
  {
    long long bad_null = 0, bad_gen = 0;
    for (long long t = 0; t < samples; ++t) {
      const ImVector<Rat> u = sample_null(rng);
      const auto ann = annihilator(u);
      if (ann.size() != 3) ++bad_null;
      for (const auto& a : ann)
        if (quad(a) != 0) ++bad_null;
      ImVector<Rat> v = sample_im(rng);
      while (quad(v) == 0) v = sample_im(rng);
      if (annihilator(v).size() != 1) ++bad_gen;
    }
    push_count(rep, "annihilator_null_dim3", bad_null);
    push_count(rep, "annihilator_nonnull_dim1", bad_gen);
  }

  // Core curve constant Q6(G^3) = 16/5, exact at rational points.
  {
    long long bad = 0;
    if (q6(curve_F(HPoint<Rat>(Rat(0), Rat(1)))) != Rat(16, 5)) ++bad;
    for (int t = 0; t < 4; ++t) {
      const HPoint<Rat> p = sample_hpoint_rat(rng);
      if (q6(curve_F(p)) != Rat(16, 5)) ++bad;
    }
    push_count(rep, "q6_core_constant", bad);
  }

  // Frame completion of Stiefel triples lands in G2'.
  {
    double worst = 0;
    long long done = 0;
    while (done < samples) {
      ImVector<double> x, y, z;
      if (!sample_triple(rng, x, y, z)) continue;
      ++done;
      const auto frame = stiefel_to_g2(x, y, z, 1e-9);
      const G2Residual r = is_g2(to_eigen(frame));
      worst = std::max(worst, std::max(r.cross_resid, r.quad_resid));
    }
    push(rep, "stiefel_to_g2_residual", worst <= tol, worst, tol);
  }

  // The Moebius representation lands in G2' (in M-imaginary coordinates).
  {
    double worst = 0;
    for (long long t = 0; t < samples; ++t) {
      const G2Residual r = is_g2(psl2_embed_im(sample_moebius(rng)));
      worst = std::max(worst, std::max(r.cross_resid, r.quad_resid));
    }
    push(rep, "psl2_embed_is_g2", worst <= tol, worst, tol);
  }

  // Pinned unipotent generator against its closed-form exponential.
  {
    const double s = 0.7;
    const double d =
        (psl2_embed_bprime(Moebius<double>(1, s, 0, 1)) - unipotent_exp(s))
            .cwiseAbs()
            .maxCoeff();
    push(rep, "unipotent_generator", d <= tol, d, tol);
  }

  // Unit normalization of the curve on the pinned window.
  {
    double worst = 0;
    for (long long t = 0; t < samples; ++t) {
      const HPoint<double> p = sample_hpoint(rng);
      worst = std::max(worst, std::abs(q6(f_hat(p)) - 1.0));
    }
    push(rep, "f_hat_unit_norm", worst <= tol, worst, tol);
  }

  // Equivariance of the curve under the degree-six representation.
  {
    double worst = 0;
    for (long long t = 0; t < samples; ++t) {
      const Moebius<double> g = sample_moebius(rng);
      const HPoint<double> p = sample_hpoint(rng);
      const std::complex<double> z(p.x, p.y);
      const std::complex<double> zp = (g.a * z + g.b) / (g.c * z + g.d);
      const BinForm<double> lhs = f_hat(HPoint<double>(zp.real(), zp.imag()));
      const BinForm<double> rhs = apply_rep(moebius_rep(g), f_hat(p));
      worst = std::max(worst, proj_sup_dist(lhs, rhs));
    }
    push(rep, "curve_equivariance", worst <= tol, worst, tol);
  }

  // Developed points are null; the chart Jacobian has full rank.
  {
    double worst = 0, minsv = 1e300;
    for (long long t = 0; t < samples; ++t) {
      const HPoint<double> p = sample_hpoint(rng);
      const double th = rng.uniform(-3.14, 3.14), al = rng.uniform(-3.14, 3.14);
      const double r = rng.uniform(0.3, 3.0);
      worst = std::max(worst, std::abs(q6(dev(p, th, al, r))));
      minsv = std::min(minsv, dev_rank(p, th, al, r));
    }
    push(rep, "dev_null", worst <= tol, worst, tol);
    push(rep, "dev_rank_min_sv", minsv > 1e-6, minsv, 1e-6);
  }

  // Family membership round-trip on the model family.
  {
    const RTFamily fam = RTFamily::model();
    double worst = 0;
    for (long long t = 0; t < samples; ++t) {
      const double th = rng.uniform(-3.0, 3.0), al = rng.uniform(-3.0, 3.0);
      const double r = rng.uniform(0.2, 3.0);
      const NullRay<double> pt = family_point(fam, th, al, r);
      const FamilyCoords fc =
          family_membership(fam, NullLine<double>(pt.rep, 1e-9));
      if (!fc.member) {
        worst = 1e300;
        continue;
      }
      const auto angdiff = [](double a, double b) {
        double d = std::fmod(a - b, 2 * M_PI);
        if (d > M_PI) d -= 2 * M_PI;
        if (d < -M_PI) d += 2 * M_PI;
        return std::abs(d);
      };
      worst = std::max({worst, std::abs(fc.r - r), angdiff(fc.theta, th),
                        angdiff(fc.alpha, al)});
    }
    push(rep, "family_roundtrip", worst <= tol, worst, tol);
  }

  // Distinguished positive line of the model (3,2)-plane, exact.
  {
    std::vector<ImVector<Rat>> U = {ImVector<Rat>::basis(0), ImVector<Rat>::basis(1),
                                    ImVector<Rat>::basis(2), ImVector<Rat>::basis(3),
                                    ImVector<Rat>::basis(4)};
    const auto rec = recover_line(U);
    long long bad = 0;
    for (int t = 1; t < 7; ++t)
      if (rec.rep.c[t] != 0) ++bad;
    if (rec.rep.c[0] == 0) ++bad;
    push_count(rep, "recover_line_model", bad);
  }

  // Uniqueness of the splitting: mixed families leave the original one.
  {
    const int trials = static_cast<int>(std::min<long long>(samples, 10));
    const SplittingReport sr =
        verify_unique_splitting(RTFamily::model(), trials, rng.next_u64());
    push_count(rep, "unique_splitting", sr.all_found ? 0 : 1);
  }

  rep.details["samples"] = std::to_string(samples);
  rep.details["tol"] = fmt(tol);
  return rep;
}

// ---------------------------------------------------------------------------
// solve suite

Report run_solve(const RunConfig& cfg, std::uint64_t seed, const std::string& out_dir) {
  const std::string instance = cfg.get("solve.instance", "hyperbolic");
  const int n = static_cast<int>(cfg.get_int("solve.n", 32));
  const double c = cfg.get_double("solve.c", 1.0);
  const double tol = cfg.get_double("solve.tol", 1e-11);
  const int max_iter = static_cast<int>(cfg.get_int("solve.max_iter", 40));
  const double amp = cfg.get_double("solve.init_amp", 0.5);
  if (n < 3) throw ConfigError("solve.n must be >= 3");
  if (tol <= 0) throw ConfigError("solve.tol must be > 0");
  if (max_iter < 1) throw ConfigError("solve.max_iter must be >= 1");

  Report rep;
  rep.suite = "solve";
  rep.config_hash = cfg.hash();
  rep.seed = seed;
  rep.timestamp = now_iso8601();

  SplitMix64 rng(seed);

  const double bflat = std::pow(25.0 * std::max(c, 1e-300) / 108.0, 1.0 / 12.0);
  const double psi2_flat = std::log(bflat);
  const double psi1_flat = std::log(1.2 * std::pow(bflat, 5));

  HitchinGrid g = HitchinGrid::hyperbolic(n);
  bool synthetic_q = false;
  double ref1 = 0, ref2 = 0; // closed-form reference values when known
  bool has_ref = false;

  if (instance == "hyperbolic") {
    for (int i = 0; i < g.size(); ++i) {
      g.psi1[i] = rng.uniform(-amp, amp);
      g.psi2[i] = rng.uniform(-amp, amp);
    }
    has_ref = true; // psi = 0
  } else if (instance == "flat") {
    if (c <= 0) throw ConfigError("solve.c must be > 0 for the flat instance");
    g = HitchinGrid::flat(n, c);
    for (int i = 0; i < g.size(); ++i) {
      g.psi1[i] = psi1_flat + rng.uniform(-amp, amp);
      g.psi2[i] = psi2_flat + rng.uniform(-amp, amp);
    }
    ref1 = psi1_flat;
    ref2 = psi2_flat;
    has_ref = true;
  } else if (instance == "perturbed") {
    // Curvature -2 torus with a non-constant coefficient field.  The field is
    // not induced by a holomorphic differential, so it is flagged synthetic.
    if (c < 0) throw ConfigError("solve.c must be >= 0 for the perturbed instance");
    synthetic_q = true;
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) {
        const double x = i * g.hx, y = j * g.hy;
        g.qsq[g.index(i, j)] =
            c * (1.0 + 0.3 * std::sin(2 * M_PI * x) * std::sin(2 * M_PI * y));
      }
    for (int i = 0; i < g.size(); ++i) {
      g.psi1[i] = rng.uniform(-amp, amp);
      g.psi2[i] = rng.uniform(-amp, amp);
    }
  } else if (instance == "dirichlet") {
    if (c <= 0) throw ConfigError("solve.c must be > 0 for the dirichlet instance");
    g = HitchinGrid(n, n, GridMode::Dirichlet, 1.0 / n, 1.0 / n);
    for (int i = 0; i < g.size(); ++i) {
      g.sigma[i] = 1.0;
      g.kappa[i] = 0.0;
      g.qsq[i] = c;
    }
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) {
        const int k = g.index(i, j);
        if (g.boundary(i, j)) {
          g.psi1[k] = psi1_flat;
          g.psi2[k] = psi2_flat;
        } else {
          g.psi1[k] = psi1_flat + rng.uniform(-amp, amp);
          g.psi2[k] = psi2_flat + rng.uniform(-amp, amp);
        }
      }
    ref1 = psi1_flat;
    ref2 = psi2_flat;
    has_ref = true;
  } else {
    throw ConfigError("solve.instance must be one of hyperbolic, flat, perturbed, dirichlet");
  }

  const SolveReport sr = newton_solve(g, tol, max_iter);

  push(rep, "converged", sr.converged, sr.final_residual, tol);

  if (has_ref) {
    double worst = 0;
    for (int i = 0; i < g.size(); ++i)
      worst = std::max({worst, std::abs(g.psi1[i] - ref1), std::abs(g.psi2[i] - ref2)});
    const double acc_tol = instance == "dirichlet" ? 1e-9 : 1e-10;
    push(rep, "closed_form_match", worst <= acc_tol, worst, acc_tol);
  }

  // Global inequality margins.  The flat family saturates both bounds exactly
  // (constant solutions), so saturation to rounding is accepted there; on
  // curvature -2 instances the margins must be strictly positive.
  const bool saturating = instance == "flat" || instance == "dirichlet";
  if (saturating) {
    const double worst = std::min(sr.bounds.margin_det3, sr.bounds.margin_sixfifth);
    push(rep, "bounds_saturation", worst > -1e-9, worst, 1e-9);
  } else {
    push(rep, "bounds_strict", sr.bounds.ok,
         std::min(sr.bounds.margin_det3, sr.bounds.margin_sixfifth), 0.0);
  }

  if (instance == "perturbed") {
    // Quadratic residual tail: once inside the Newton basin, each residual is
    // bounded by a fixed multiple of the square of the previous one.
    bool tail = false;
    for (std::size_t k = 0; k + 1 < sr.history.size(); ++k)
      if (sr.history[k] < 1e-2 && sr.history[k + 1] <= 100.0 * sr.history[k] * sr.history[k])
        tail = true;
    push_count(rep, "quadratic_tail", tail ? 0 : 1);
  }

  // Field CSV.
  std::filesystem::create_directories(out_dir);
  {
    CsvWriter csv(out_dir + "/solve_fields.csv");
    csv.row({"ix", "iy", "x", "y", "psi1", "psi2"});
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) {
        const int k = g.index(i, j);
        csv.row({std::to_string(i), std::to_string(j), fmt(i * g.hx), fmt(j * g.hy),
                 fmt(g.psi1[k]), fmt(g.psi2[k])});
      }
    rep.artifacts.push_back("solve_fields.csv");
  }

  rep.details["instance"] = instance;
  rep.details["n"] = std::to_string(n);
  rep.details["iterations"] = std::to_string(sr.iterations);
  rep.details["final_residual"] = fmt(sr.final_residual);
  rep.details["margin_det3"] = fmt(sr.bounds.margin_det3);
  rep.details["margin_sixfifth"] = fmt(sr.bounds.margin_sixfifth);
  rep.details["q_model"] =
      synthetic_q ? "synthetic (non-holomorphic)" : "constant";
  {
    std::string h;
    for (std::size_t k = 0; k < sr.history.size(); ++k) {
      if (k) h += ",";
      h += fmt(sr.history[k]);
    }
    rep.details["residual_history"] = h;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// fuchsian suite

Report run_fuchsian(const RunConfig& cfg, std::uint64_t seed, const std::string& out_dir) {
  const long long fiber_samples = cfg.get_int("fuchsian.fiber_samples", 50);
  const long long classify_samples = cfg.get_int("fuchsian.classify_samples", 20);
  const long long t_count = cfg.get_int("fuchsian.t_count", 8);
  const double null_tol = cfg.get_double("fuchsian.null_tol", 1e-12);
  if (fiber_samples < 1 || classify_samples < 0 || t_count < 1)
    throw ConfigError("fuchsian sample counts must be positive");
  if (null_tol < 0) throw ConfigError("fuchsian.null_tol must be >= 0");

  Report rep;
  rep.suite = "fuchsian";
  rep.config_hash = cfg.hash();
  rep.seed = seed;
  rep.timestamp = now_iso8601();

  SplitMix64 rng(seed);
  std::filesystem::create_directories(out_dir);

  // Developed fiber point cloud: a theta x alpha grid on the fiber over i at
  // r = 1 plus random samples in the pinned window.
  {
    CsvWriter csv(out_dir + "/fuchsian_fiber.csv");
    csv.row({"x", "y", "theta", "alpha", "r", "c0", "c1", "c2", "c3", "c4", "c5", "c6"});
    double worst = 0;
    const auto emit = [&](double x, double y, double th, double al, double r) {
      const BinForm<double> w = dev(HPoint<double>(x, y), th, al, r);
      worst = std::max(worst, std::abs(q6(w)));
      std::vector<std::string> row = {fmt(x), fmt(y), fmt(th), fmt(al), fmt(r)};
      for (int t = 0; t < 7; ++t) row.push_back(fmt(w[t]));
      csv.row(row);
    };
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        emit(0.0, 1.0, -M_PI + a * M_PI / 3, -M_PI + b * M_PI / 3, 1.0);
    for (long long t = 0; t < fiber_samples; ++t) {
      const HPoint<double> p = sample_hpoint(rng);
      emit(p.x, p.y, rng.uniform(-M_PI, M_PI), rng.uniform(-M_PI, M_PI),
           rng.uniform(0.3, 3.0));
    }
    rep.artifacts.push_back("fuchsian_fiber.csv");
    push(rep, "fiber_null", worst <= null_tol, worst, null_tol);
  }

  // Classification table: the five stratum representatives plus random null
  // sextics completed from rational tails.
  {
    CsvWriter csv(out_dir + "/fuchsian_classification.csv");
    csv.row({"a0", "a1", "a2", "a3", "a4", "a5", "a6", "gw_member", "k_stratum",
             "omega_sector", "predicted_preimages"});
    long long strata_violations = 0;
    const auto emit = [&](const BinForm<Rat>& P) {
      const SexticClass sc = sextic_classify(P);
      std::vector<std::string> row;
      for (int t = 0; t < 7; ++t) row.push_back(fmt(P[t]));
      row.push_back(sc.gw_member ? "1" : "0");
      row.push_back(std::to_string(sc.k_stratum));
      row.push_back(std::to_string(sc.omega_sector));
      row.push_back(std::to_string(sc.predicted_preimages));
      csv.row(row);
      if (sc.k_stratum >= 1 && sc.k_stratum <= 4 && sc.predicted_preimages != 0)
        ++strata_violations;
    };
    const Rat z(0), o(1);
    emit({o, z, z, z, z, z, z});        // X^6
    emit({z, o, z, z, z, z, z});        // X^5 Y
    emit({z, z, o, z, z, z, z});        // X^4 Y^2
    emit({z, o, -o, z, z, z, z});       // X^4 Y (X - Y)
    emit({o, z, o, z, z, z, z});        // X^4 (X^2 + Y^2)
    for (long long t = 0; t < classify_samples; ++t) {
      std::array<Rat, 6> tail;
      for (auto& x : tail) x = Rat(rng.uniform_int(-9, 9));
      if (tail[5] == 0) tail[5] = 1;
      emit(null_complete(tail));
    }
    rep.artifacts.push_back("fuchsian_classification.csv");
    push_count(rep, "strata_1_to_4_no_preimages", strata_violations);
  }

  // Degenerate-set sign table over a rational t-grid (t = (k+1)/4, t != 1).
  {
    CsvWriter csv(out_dir + "/fuchsian_degenerate.csv");
    csv.row({"t", "q6_w", "closed_form", "sign", "count", "brute_count"});
    long long form_violations = 0, count_violations = 0;
    for (long long k = 0, done = 0; done < t_count; ++k) {
      const Rat t(k + 1, 4);
      if (t == 1) continue;
      ++done;
      const FiberDegenerate fd = fiber_degenerate_set(t);
      const int brute = fiber_circle_count(t);
      const int sign = fd.q6_w > 0 ? 1 : (fd.q6_w == 0 ? 0 : -1);
      csv.row({fmt(t), fmt(fd.q6_w), fmt(fd.closed_form), std::to_string(sign),
               std::to_string(fd.count), std::to_string(brute)});
      if (fd.q6_w != fd.closed_form) ++form_violations;
      if (fd.count != brute) ++count_violations;
    }
    rep.artifacts.push_back("fuchsian_degenerate.csv");
    push_count(rep, "degenerate_closed_form", form_violations);
    push_count(rep, "degenerate_counts_vs_brute", count_violations);
  }

  rep.details["fiber_samples"] = std::to_string(fiber_samples);
  rep.details["classify_samples"] = std::to_string(classify_samples);
  rep.details["t_count"] = std::to_string(t_count);
  return rep;
}

} // namespace g2e
