// Unit tests for the cyclic Hitchin module: Higgs/metric data with the
// real-structure involution, the h-unitary multiplication frame, discrete
// residuals against an independent oracle, the damped Newton solver on
// constant-curvature / flat / perturbed / Dirichlet instances, the global
// inequality margins, and the sensitivity probe.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g2e/ein.hpp"
#include "g2e/hitchin.hpp"
#include "g2e/rng.hpp"

#include <cmath>

using namespace g2e;

namespace {

/// Independent residual oracle: dense Laplacian matrix application, assembled
/// from scratch with its own wraparound logic.
std::pair<std::vector<double>, std::vector<double>> residual_oracle(
    const HitchinGrid& g) {
  const int N = g.size();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(N, N);
  auto wrap = [&](int i, int n) { return (i % n + n) % n; };
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      if (g.boundary(i, j)) continue; // residual is zero there by definition
      const int a = i * g.ny + j;
      const double cx = 1.0 / (g.hx * g.hx), cy = 1.0 / (g.hy * g.hy);
      L(a, a) -= 2 * (cx + cy);
      if (g.mode == GridMode::Periodic) {
        L(a, wrap(i + 1, g.nx) * g.ny + j) += cx;
        L(a, wrap(i - 1, g.nx) * g.ny + j) += cx;
        L(a, i * g.ny + wrap(j + 1, g.ny)) += cy;
        L(a, i * g.ny + wrap(j - 1, g.ny)) += cy;
      } else {
        L(a, (i + 1) * g.ny + j) += cx;
        L(a, (i - 1) * g.ny + j) += cx;
        L(a, i * g.ny + j + 1) += cy;
        L(a, i * g.ny + j - 1) += cy;
      }
    }
  Eigen::VectorXd p1(N), p2(N);
  for (int a = 0; a < N; ++a) {
    p1(a) = g.psi1[a];
    p2(a) = g.psi2[a];
  }
  const Eigen::VectorXd l1 = L * p1, l2 = L * p2;
  std::vector<double> r1(N, 0.0), r2(N, 0.0);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      if (g.boundary(i, j)) continue;
      const int a = i * g.ny + j;
      const double E = std::exp(g.psi1[a] - 3 * g.psi2[a]);
      r1[a] = l1(a) / (2 * g.sigma[a]) - 5 * E +
              2 * g.qsq[a] * std::exp(-2 * g.psi1[a]) - 2.5 * g.kappa[a];
      r2[a] = l2(a) / (2 * g.sigma[a]) + 5 * E - 6 * std::exp(2 * g.psi2[a]) -
              0.5 * g.kappa[a];
    }
  return {r1, r2};
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double sup_abs(const std::vector<double>& a) {
  double m = 0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

/// Flat-instance closed-form constants.
void flat_constants(double c, double& lna, double& lnb) {
  const double b = std::pow(25.0 * c / 108.0, 1.0 / 12.0);
  lnb = std::log(b);
  lna = std::log(1.2 * std::pow(b, 5));
}

} // namespace

TEST_CASE("Higgs field entries, metric, and involution residuals") {
  const HiggsData d = higgs_data({Cplx(0.3, 0.7), 1.3, 0.8});
  CHECK(d.phi(1, 0) == Cplx(std::sqrt(3.0)));
  CHECK(d.phi(2, 1) == Cplx(std::sqrt(5.0)));
  CHECK(d.phi(3, 2) == Cplx(0, -std::sqrt(6.0)));
  CHECK(d.phi(4, 3) == Cplx(0, -std::sqrt(6.0)));
  CHECK(d.phi(5, 4) == Cplx(std::sqrt(5.0)));
  CHECK(d.phi(6, 5) == Cplx(std::sqrt(3.0)));
  CHECK(d.phi(0, 5) == Cplx(0.3, 0.7));
  CHECK(d.phi(1, 6) == Cplx(0.3, 0.7));
  // all other entries vanish
  int nonzero = 0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) nonzero += std::abs(d.phi(i, j)) > 0 ? 1 : 0;
  CHECK(nonzero == 8);
  CHECK(d.h_diag(0) == doctest::Approx(1.0 / (1.3 * 0.8)).epsilon(1e-15));
  CHECK(d.h_diag(3) == 1.0);
  CHECK(d.h_diag(6) == doctest::Approx(1.3 * 0.8).epsilon(1e-15));

  const HiggsData e = higgs_data({Cplx(0), 1.0, 1.0});
  CHECK((e.h_diag - Eigen::Matrix<double, 7, 1>::Ones()).cwiseAbs().maxCoeff() == 0);

  SplitMix64 rng(500);
  for (int trial = 0; trial < 20; ++trial) {
    const HiggsPoint p{Cplx(rng.uniform(-3, 3), rng.uniform(-3, 3)),
                       rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0)};
    const HiggsData h = higgs_data(p);
    CHECK(h.tau_sq_residual <= 1e-12);
    CHECK(h.tau_fix_residual <= 1e-12);
  }
  CHECK_THROWS_AS(higgs_data({Cplx(1), -1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(higgs_data({Cplx(1), 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("weight basis: pairings of the principal sl2 decomposition") {
  using IV = ImVector<Cplx>;
  CHECK(std::abs(quad(weight_basis(0)) - Cplx(1)) == 0);
  for (int m = 1; m <= 3; ++m) {
    CHECK(std::abs(quad(weight_basis(m))) <= 1e-15);
    CHECK(std::abs(quad(weight_basis(-m))) <= 1e-15);
  }
  CHECK(std::abs(quad_pair(weight_basis(2), weight_basis(-2)) - Cplx(1)) <= 1e-15);
  CHECK(std::abs(quad_pair(weight_basis(1), weight_basis(-1)) + Cplx(1)) <= 1e-15);
  CHECK(std::abs(quad_pair(weight_basis(3), weight_basis(-3)) + Cplx(1)) <= 1e-15);
  CHECK(weight_basis(0) == IV::basis(IV::I));
  CHECK_THROWS_AS(weight_basis(4), std::invalid_argument);
}

TEST_CASE("h-unitary frame: signature, cross preservation, model at r=s=1") {
  // r = s = 1: the frame is exactly the M-imaginary basis
  const auto w1 = frame_w(1.0, 1.0);
  for (int k = 0; k < 7; ++k)
    for (int t = 0; t < 7; ++t) {
      CHECK(std::abs(w1[k].c[t].imag()) <= 1e-15);
      CHECK(std::abs(w1[k].c[t].real() - (k == t ? 1.0 : 0.0)) <= 1e-15);
    }

  SplitMix64 rng(501);
  const double sgn[7] = {1, 1, 1, -1, -1, -1, -1};
  for (int trial = 0; trial < 50; ++trial) {
    const double r = rng.uniform(0.2, 3.0), s = rng.uniform(0.2, 3.0);
    const auto w = frame_w(r, s);
    // bilinear Gram is diag(+,+,+,-,-,-,-)
    for (int a = 0; a < 7; ++a)
      for (int b = 0; b < 7; ++b) {
        const Cplx g = quad_pair(w[a], w[b]);
        CHECK(std::abs(g - Cplx(a == b ? sgn[a] : 0.0)) <= 1e-12);
      }
    // the complex-linear extension of m_k -> w_k preserves the cross product
    double resid = 0;
    for (int a = 0; a < 7; ++a)
      for (int b = 0; b < 7; ++b) {
        const ImVector<Cplx> lhs = cross(w[a], w[b]);
        const ImVector<Cplx> sc =
            cross(ImVector<Cplx>::basis(a), ImVector<Cplx>::basis(b));
        ImVector<Cplx> rhs;
        for (int k = 0; k < 7; ++k) rhs = rhs + sc.c[k] * w[k];
        for (int t = 0; t < 7; ++t)
          resid = std::max(resid, std::abs(lhs.c[t] - rhs.c[t]));
      }
    CHECK(resid <= 1e-9);
  }
  CHECK_THROWS_AS(frame_w(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("frame directions form a valid family at every (r, s)") {
  SplitMix64 rng(502);
  for (int trial = 0; trial < 25; ++trial) {
    const double r = rng.uniform(0.2, 3.0), s = rng.uniform(0.2, 3.0);
    const FrameDirections d = frame_directions(r, s);
    CHECK_NOTHROW(RTFamily(d.xhat, d.t1, d.t2, d.n1, d.n2));
    // the spans are the model (i; l, li; j, k) planes
    CHECK(std::abs(d.xhat.c[0] - 1.0) <= 1e-12);
    for (const auto* v : {&d.t1, &d.t2})
      CHECK(std::abs(v->c[3]) + std::abs(v->c[4]) ==
            doctest::Approx(1.0).epsilon(1e-9));
    for (const auto* v : {&d.n1, &d.n2})
      CHECK(std::abs(v->c[1]) + std::abs(v->c[2]) ==
            doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("residual: constant instances vanish, oracle agreement") {
  // hyperbolic-type constants: kappa = -2, q = 0, psi = 0
  {
    const HitchinGrid g = HitchinGrid::hyperbolic(8);
    auto [r1, r2] = residual(g);
    CHECK(sup_abs(r1) == 0);
    CHECK(sup_abs(r2) == 0);
  }
  // flat constants
  {
    HitchinGrid g = HitchinGrid::flat(8, 0.7);
    double lna, lnb;
    flat_constants(0.7, lna, lnb);
    g.psi1.assign(g.size(), lna);
    g.psi2.assign(g.size(), lnb);
    auto [r1, r2] = residual(g);
    CHECK(sup_abs(r1) <= 1e-13);
    CHECK(sup_abs(r2) <= 1e-13);
  }
  // random smooth fields against the independent dense oracle
  SplitMix64 rng(503);
  for (int trial = 0; trial < 20; ++trial) {
    const GridMode mode = trial % 2 ? GridMode::Periodic : GridMode::Dirichlet;
    HitchinGrid g(7, 9, mode, 0.11, 0.17);
    for (int a = 0; a < g.size(); ++a) {
      g.psi1[a] = rng.uniform(-1, 1);
      g.psi2[a] = rng.uniform(-1, 1);
      g.sigma[a] = rng.uniform(0.5, 2.0);
      g.qsq[a] = rng.uniform(0, 2.0);
      g.kappa[a] = rng.uniform(-2, 2);
    }
    auto [r1, r2] = residual(g);
    auto [o1, o2] = residual_oracle(g);
    const double scale = std::max(sup_abs(o1), sup_abs(o2));
    CHECK(sup_diff(r1, o1) <= 1e-13 * scale);
    CHECK(sup_diff(r2, o2) <= 1e-13 * scale);
  }
  // shape mismatch
  HitchinGrid bad = HitchinGrid::hyperbolic(4);
  bad.qsq.pop_back();
  CHECK_THROWS_AS(residual(bad), std::invalid_argument);
}

TEST_CASE("Newton solver: hyperbolic instance reaches psi = 0") {
  SplitMix64 rng(504);
  for (int trial = 0; trial < 3; ++trial) {
    HitchinGrid g = HitchinGrid::hyperbolic(16);
    for (int a = 0; a < g.size(); ++a) {
      g.psi1[a] = rng.uniform(-1, 1);
      g.psi2[a] = rng.uniform(-1, 1);
    }
    const SolveReport rep = newton_solve(g, 1e-11, 40);
    CHECK(rep.converged);
    CHECK(rep.iterations <= 12);
    CHECK(sup_abs(g.psi1) <= 1e-10);
    CHECK(sup_abs(g.psi2) <= 1e-10);
    // accepted residuals are monotone non-increasing
    for (std::size_t k = 1; k < rep.history.size(); ++k)
      CHECK(rep.history[k] <= rep.history[k - 1]);
  }
}

TEST_CASE("Newton solver: flat instance matches the closed-form constants") {
  SplitMix64 rng(505);
  for (double c : {0.4, 1.0, 3.7}) {
    HitchinGrid g = HitchinGrid::flat(16, c);
    for (int a = 0; a < g.size(); ++a) {
      g.psi1[a] = rng.uniform(-1, 1);
      g.psi2[a] = rng.uniform(-1, 1);
    }
    const SolveReport rep = newton_solve(g, 1e-12, 40);
    CHECK(rep.converged);
    double lna, lnb;
    flat_constants(c, lna, lnb);
    double e1 = 0, e2 = 0;
    for (int a = 0; a < g.size(); ++a) {
      e1 = std::max(e1, std::abs(g.psi1[a] - lna));
      e2 = std::max(e2, std::abs(g.psi2[a] - lnb));
    }
    CHECK(e1 <= 1e-10);
    CHECK(e2 <= 1e-10);
    // the flat constant solution saturates both global bounds exactly:
    // c e^{-2psi1-2psi2} = c/(a^2 b^2) = 3 and e^{psi1-5psi2} = a/b^5 = 6/5
    CHECK(std::abs(rep.bounds.margin_det3) <= 1e-9);
    CHECK(std::abs(rep.bounds.margin_sixfifth) <= 1e-9);
  }
}

TEST_CASE("Newton solver: perturbed instance converges with a quadratic tail") {
  const int n = 16;
  HitchinGrid g = HitchinGrid::flat(n, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g.qsq[g.index(i, j)] =
          1.0 + 0.3 * std::sin(2 * M_PI * i / n) * std::sin(2 * M_PI * j / n);
  const SolveReport rep = newton_solve(g, 1e-12, 40);
  CHECK(rep.converged);
  // quadratic tail: once small, the residual at least squares up to a factor
  int quadratic_steps = 0;
  for (std::size_t k = 0; k + 1 < rep.history.size(); ++k)
    if (rep.history[k] < 1e-2 && rep.history[k] > 0 &&
        rep.history[k + 1] <= 100 * rep.history[k] * rep.history[k])
      ++quadratic_steps;
  CHECK(quadratic_steps >= 2);
}

TEST_CASE("Newton solver: Dirichlet data pins the constant solution") {
  const double c = 0.9;
  double lna, lnb;
  flat_constants(c, lna, lnb);
  SplitMix64 rng(506);
  HitchinGrid g(12, 10, GridMode::Dirichlet, 0.1, 0.1);
  g.qsq.assign(g.size(), c);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const int a = g.index(i, j);
      if (g.boundary(i, j)) {
        g.psi1[a] = lna;
        g.psi2[a] = lnb;
      } else {
        g.psi1[a] = lna + rng.uniform(-0.5, 0.5);
        g.psi2[a] = lnb + rng.uniform(-0.5, 0.5);
      }
    }
  const SolveReport rep = newton_solve(g, 1e-12, 40);
  CHECK(rep.converged);
  for (int a = 0; a < g.size(); ++a) {
    CHECK(std::abs(g.psi1[a] - lna) <= 1e-10);
    CHECK(std::abs(g.psi2[a] - lnb) <= 1e-10);
  }
}

TEST_CASE("bounds: margins on reference and converged instances") {
  // q = 0, psi = 0: first margin exactly 3, second exactly 1/5
  const HitchinGrid g0 = HitchinGrid::hyperbolic(8);
  const BoundsReport b0 = verify_bounds(g0);
  CHECK(b0.margin_det3 == 3.0);
  CHECK(b0.margin_sixfifth == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(b0.ok);

  // converged negatively-curved nonzero-q instances: both bounds strict
  // (flat instances saturate the bounds exactly, see the flat solver test)
  for (double c : {0.5, 2.5, 8.0}) {
    HitchinGrid g = HitchinGrid::hyperbolic(12);
    g.qsq.assign(g.size(), c);
    const SolveReport rep = newton_solve(g, 1e-12, 40);
    REQUIRE(rep.converged);
    const BoundsReport b = verify_bounds(g);
    CHECK(b.margin_det3 > 0);
    CHECK(b.margin_sixfifth > 0);
    CHECK(b.ok);
  }
}

TEST_CASE("sensitivity probe: stable ratios matching the analytic derivative") {
  const double c = 1.0;
  HitchinGrid base = HitchinGrid::flat(12, c);
  REQUIRE(newton_solve(base, 1e-13, 40).converged);

  const std::vector<double> ones(base.size(), 1.0);
  const SensitivityReport rep =
      sensitivity_probe(base, ones, {1e-2, 1e-3, 1e-4});
  REQUIRE(rep.ratios.size() == 3);
  const double r1 = rep.ratios[1], r2 = rep.ratios[2];
  CHECK(std::abs(r2 - r1) <= 0.05 * std::abs(r2));
  // analytic: psi1 = log((6/5) b^5), b = (25c/108)^{1/12} => d psi1/dc = 5/(12c)
  CHECK(std::abs(r2 - 5.0 / (12 * c)) <= 0.01 * (5.0 / (12 * c)));

  // zero perturbation: zero change
  const std::vector<double> zeros(base.size(), 0.0);
  const SensitivityReport z = sensitivity_probe(base, zeros, {1e-2});
  CHECK(z.ratios[0] <= 1e-9);
}
