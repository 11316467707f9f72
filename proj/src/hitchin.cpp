/// Cyclic Hitchin system: Higgs/metric data, the h-unitary frame, and the
/// damped Newton solver for the coupled elliptic equations.

#include "g2e/hitchin.hpp"
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>

namespace g2e {

HiggsData higgs_data(const HiggsPoint& p) {
  if (!(p.r > 0) || !(p.s > 0))
    throw std::invalid_argument("higgs_data: r and s must be positive");
  HiggsData d;
  d.phi.setZero();
  const double s3 = std::sqrt(3.0), s5 = std::sqrt(5.0), s6 = std::sqrt(6.0);
  const Cplx mi6(0, -s6);
  d.phi(1, 0) = s3;
  d.phi(2, 1) = s5;
  d.phi(3, 2) = mi6;
  d.phi(4, 3) = mi6;
  d.phi(5, 4) = s5;
  d.phi(6, 5) = s3;
  d.phi(0, 5) = p.q;
  d.phi(1, 6) = p.q;
  d.h_diag << 1.0 / (p.r * p.s), 1.0 / p.r, 1.0 / p.s, 1.0, p.s, p.r, p.r * p.s;

  // involution tau(x) = M conj(x) with M = H^{-1} Q, Q the antidiagonal
  Eigen::Matrix<Cplx, 7, 7> M = Eigen::Matrix<Cplx, 7, 7>::Zero();
  for (int k = 0; k < 7; ++k) M(k, 6 - k) = 1.0 / d.h_diag(k);
  const Eigen::Matrix<Cplx, 7, 7> t2 = M * M.conjugate();
  d.tau_sq_residual =
      (t2 - Eigen::Matrix<Cplx, 7, 7>::Identity()).cwiseAbs().maxCoeff();
  // tau fixes S = Phi + Phi^{*h}, i.e. M conj(S) M^{-1} = S
  Eigen::Matrix<Cplx, 7, 7> H = d.h_diag.cast<Cplx>().asDiagonal();
  Eigen::Matrix<Cplx, 7, 7> Hi = d.h_diag.cwiseInverse().cast<Cplx>().asDiagonal();
  const Eigen::Matrix<Cplx, 7, 7> S = d.phi + Hi * d.phi.adjoint() * H;
  const Eigen::Matrix<Cplx, 7, 7> tS = M * S.conjugate() * M.inverse();
  d.tau_fix_residual = (tS - S).cwiseAbs().maxCoeff();
  return d;
}

ImVector<Cplx> weight_basis(int m) {
  using IV = ImVector<Cplx>;
  const double is2 = 1.0 / std::sqrt(2.0);
  const Cplx i(0, 1);
  // jl = -lj, kl = -lk, il = -li in the M-imaginary basis
  const IV jl = -IV::basis(IV::LJ), kl = -IV::basis(IV::LK), il = -IV::basis(IV::LI);
  switch (m) {
    case 3: return Cplx(is2) * (jl + i * kl);
    case 2: return Cplx(is2) * (IV::basis(IV::J) + i * IV::basis(IV::K));
    case 1: return Cplx(is2) * (IV::basis(IV::L) + i * il);
    case 0: return IV::basis(IV::I);
    case -1: return Cplx(is2) * (IV::basis(IV::L) - i * il);
    case -2: return Cplx(is2) * (IV::basis(IV::J) - i * IV::basis(IV::K));
    case -3: return Cplx(is2) * (jl - i * kl);
    default: throw std::invalid_argument("weight_basis: m must be in [-3, 3]");
  }
}

std::array<ImVector<Cplx>, 7> frame_w(double r, double s) {
  if (!(r > 0) || !(s > 0))
    throw std::invalid_argument("frame_w: r and s must be positive");
  const double rr = std::sqrt(r), ss = std::sqrt(s), rs = std::sqrt(r * s);
  const double is2 = 1.0 / std::sqrt(2.0);
  const Cplx i(0, 1);
  auto mix = [&](int m, double t, const Cplx& front) {
    // front * (t u_m + u_{-m}/t) / sqrt(2)
    return (front * Cplx(is2)) *
           (Cplx(t) * weight_basis(m) + Cplx(1.0 / t) * weight_basis(-m));
  };
  auto dif = [&](int m, double t, const Cplx& front) {
    // front * (t u_m - u_{-m}/t) / sqrt(2)
    return (front * Cplx(is2)) *
           (Cplx(t) * weight_basis(m) - Cplx(1.0 / t) * weight_basis(-m));
  };
  return {weight_basis(0),
          mix(2, rr, Cplx(1)),
          dif(2, rr, -i),
          mix(1, ss, Cplx(1)),
          dif(1, ss, i),
          mix(3, rs, Cplx(-1)),
          dif(3, rs, i)};
}

FrameDirections frame_directions(double r, double s) {
  const auto w = frame_w(r, s);
  auto unit_part = [](const std::array<ImVector<Cplx>, 7>& f, int a, int b) {
    // orthonormal basis of the real span of {Re, Im} of two frame vectors
    Eigen::Matrix<double, 7, 4> A;
    for (int t = 0; t < 7; ++t) {
      A(t, 0) = f[a].c[t].real();
      A(t, 1) = f[a].c[t].imag();
      A(t, 2) = f[b].c[t].real();
      A(t, 3) = f[b].c[t].imag();
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 7, 4>> svd(A, Eigen::ComputeFullU);
    std::array<ImVector<double>, 2> out;
    for (int k = 0; k < 2; ++k)
      for (int t = 0; t < 7; ++t) out[k].c[t] = svd.matrixU()(t, k);
    return out;
  };
  FrameDirections d;
  for (int t = 0; t < 7; ++t) d.xhat.c[t] = w[0].c[t].real();
  const auto tt = unit_part(w, 3, 4);
  const auto nn = unit_part(w, 1, 2);
  d.t1 = tt[0];
  d.t2 = tt[1];
  d.n1 = nn[0];
  d.n2 = nn[1];
  return d;
}

HitchinGrid::HitchinGrid(int nx_, int ny_, GridMode mode_, double hx_, double hy_)
    : nx(nx_), ny(ny_), mode(mode_), hx(hx_), hy(hy_) {
  if (nx < 3 || ny < 3) throw std::invalid_argument("HitchinGrid: grid too small");
  if (!(hx > 0) || !(hy > 0))
    throw std::invalid_argument("HitchinGrid: spacings must be positive");
  psi1.assign(size(), 0.0);
  psi2.assign(size(), 0.0);
  sigma.assign(size(), 1.0);
  qsq.assign(size(), 0.0);
  kappa.assign(size(), 0.0);
}

int HitchinGrid::index(int i, int j) const {
  if (mode == GridMode::Periodic) {
    i = (i % nx + nx) % nx;
    j = (j % ny + ny) % ny;
  }
  return i * ny + j;
}

bool HitchinGrid::boundary(int i, int j) const {
  return mode == GridMode::Dirichlet &&
         (i == 0 || j == 0 || i == nx - 1 || j == ny - 1);
}

HitchinGrid HitchinGrid::hyperbolic(int n) {
  HitchinGrid g(n, n, GridMode::Periodic, 1.0 / n, 1.0 / n);
  g.kappa.assign(g.size(), -2.0);
  return g;
}

HitchinGrid HitchinGrid::flat(int n, double c) {
  if (!(c > 0)) throw std::invalid_argument("flat: c must be positive");
  HitchinGrid g(n, n, GridMode::Periodic, 1.0 / n, 1.0 / n);
  g.qsq.assign(g.size(), c);
  return g;
}

namespace {

/// 2 * Delta_sigma u at (i, j): (1/(2 sigma)) * 5-point stencil.
double lap2(const HitchinGrid& g, const std::vector<double>& u, int i, int j) {
  const double cx = 1.0 / (g.hx * g.hx), cy = 1.0 / (g.hy * g.hy);
  const double st = cx * (u[g.index(i + 1, j)] - 2 * u[g.index(i, j)] +
                          u[g.index(i - 1, j)]) +
                    cy * (u[g.index(i, j + 1)] - 2 * u[g.index(i, j)] +
                          u[g.index(i, j - 1)]);
  return st / (2.0 * g.sigma[g.index(i, j)]);
}

void check_shapes(const HitchinGrid& g) {
  const std::size_t n = static_cast<std::size_t>(g.size());
  if (g.psi1.size() != n || g.psi2.size() != n || g.sigma.size() != n ||
      g.qsq.size() != n || g.kappa.size() != n)
    throw std::invalid_argument("HitchinGrid: field shape mismatch");
  for (double s : g.sigma)
    if (!(s > 0)) throw std::invalid_argument("HitchinGrid: sigma must be positive");
}

} // namespace

std::pair<std::vector<double>, std::vector<double>> residual(const HitchinGrid& g) {
  check_shapes(g);
  std::vector<double> r1(g.size(), 0.0), r2(g.size(), 0.0);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      if (g.boundary(i, j)) continue;
      const int a = g.index(i, j);
      const double E = std::exp(g.psi1[a] - 3 * g.psi2[a]);
      const double E1 = std::exp(-2 * g.psi1[a]);
      const double E2 = std::exp(2 * g.psi2[a]);
      r1[a] = lap2(g, g.psi1, i, j) - 5 * E + 2 * g.qsq[a] * E1 - 2.5 * g.kappa[a];
      r2[a] = lap2(g, g.psi2, i, j) + 5 * E - 6 * E2 - 0.5 * g.kappa[a];
    }
  return {std::move(r1), std::move(r2)};
}

BoundsReport verify_bounds(const HitchinGrid& g) {
  check_shapes(g);
  BoundsReport b;
  b.margin_det3 = std::numeric_limits<double>::infinity();
  b.margin_sixfifth = std::numeric_limits<double>::infinity();
  for (int a = 0; a < g.size(); ++a) {
    b.margin_det3 = std::min(
        b.margin_det3, 3.0 - g.qsq[a] * std::exp(-2 * g.psi1[a] - 2 * g.psi2[a]));
    b.margin_sixfifth =
        std::min(b.margin_sixfifth, 1.2 - std::exp(g.psi1[a] - 5 * g.psi2[a]));
  }
  b.ok = b.margin_det3 > 0 && b.margin_sixfifth > 0;
  return b;
}

namespace {

double sup(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (double x : a) m = std::max(m, std::abs(x));
  for (double x : b) m = std::max(m, std::abs(x));
  return m;
}

} // namespace

SolveReport newton_solve(HitchinGrid& g, double tol, int max_iter) {
  check_shapes(g);
  if (!(tol > 0)) throw std::invalid_argument("newton_solve: tol must be positive");
  const int N = g.size();
  SolveReport rep;

  auto [r1, r2] = residual(g);
  double res = sup(r1, r2);
  rep.history.push_back(res);

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  for (int it = 0; it < max_iter && res > tol; ++it) {
    // Jacobian: block [2D - diag(5E + 4cE1), diag(15E); diag(5E), 2D - diag(15E + 12E2)]
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(14) * N);
    const double cx = 1.0 / (g.hx * g.hx), cy = 1.0 / (g.hy * g.hy);
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) {
        const int a = g.index(i, j);
        if (g.boundary(i, j)) {
          trip.emplace_back(a, a, 1.0);
          trip.emplace_back(N + a, N + a, 1.0);
          continue;
        }
        const double w = 1.0 / (2.0 * g.sigma[a]);
        const double E = std::exp(g.psi1[a] - 3 * g.psi2[a]);
        const double E1 = std::exp(-2 * g.psi1[a]);
        const double E2 = std::exp(2 * g.psi2[a]);
        for (int blk = 0; blk < 2; ++blk) {
          const int row = blk * N + a;
          const int off = blk * N;
          trip.emplace_back(row, off + a, -2 * w * (cx + cy));
          trip.emplace_back(row, off + g.index(i + 1, j), w * cx);
          trip.emplace_back(row, off + g.index(i - 1, j), w * cx);
          trip.emplace_back(row, off + g.index(i, j + 1), w * cy);
          trip.emplace_back(row, off + g.index(i, j - 1), w * cy);
        }
        trip.emplace_back(a, a, -(5 * E + 4 * g.qsq[a] * E1));
        trip.emplace_back(a, N + a, 15 * E);
        trip.emplace_back(N + a, a, 5 * E);
        trip.emplace_back(N + a, N + a, -(15 * E + 12 * E2));
      }
    Eigen::SparseMatrix<double> J(2 * N, 2 * N);
    J.setFromTriplets(trip.begin(), trip.end());
    lu.compute(J);
    if (lu.info() != Eigen::Success)
      throw std::runtime_error("newton_solve: sparse LU factorization failed");
    Eigen::VectorXd rhs(2 * N);
    for (int a = 0; a < N; ++a) {
      rhs(a) = -r1[a];
      rhs(N + a) = -r2[a];
    }
    const Eigen::VectorXd d = lu.solve(rhs);

    // Armijo backtracking on the residual sup-norm
    HitchinGrid trial = g;
    double t = 1.0;
    for (;;) {
      for (int a = 0; a < N; ++a) {
        trial.psi1[a] = g.psi1[a] + t * d(a);
        trial.psi2[a] = g.psi2[a] + t * d(N + a);
      }
      auto [t1, t2] = residual(trial);
      const double tres = sup(t1, t2);
      if (tres < (1.0 - 0.25 * t) * res || t <= std::ldexp(1.0, -20)) {
        g.psi1 = trial.psi1;
        g.psi2 = trial.psi2;
        r1 = std::move(t1);
        r2 = std::move(t2);
        res = tres;
        break;
      }
      t /= 2;
    }
    rep.history.push_back(res);
    ++rep.iterations;
  }
  rep.final_residual = res;
  rep.converged = res <= tol;
  rep.bounds = verify_bounds(g);
  return rep;
}

SensitivityReport sensitivity_probe(const HitchinGrid& base,
                                    const std::vector<double>& dqsq,
                                    const std::vector<double>& eps_steps,
                                    double tol, int max_iter) {
  check_shapes(base);
  if (dqsq.size() != base.qsq.size())
    throw std::invalid_argument("sensitivity_probe: perturbation shape mismatch");
  SensitivityReport rep;
  for (double eps : eps_steps) {
    HitchinGrid g = base;
    for (std::size_t a = 0; a < g.qsq.size(); ++a) g.qsq[a] += eps * dqsq[a];
    const SolveReport sr = newton_solve(g, tol, max_iter);
    if (!sr.converged)
      throw std::runtime_error("sensitivity_probe: perturbed solve did not converge");
    double diff = 0;
    for (int a = 0; a < g.size(); ++a) {
      diff = std::max(diff, std::abs(g.psi1[a] - base.psi1[a]));
      diff = std::max(diff, std::abs(g.psi2[a] - base.psi2[a]));
    }
    rep.eps.push_back(eps);
    rep.ratios.push_back(eps == 0 ? 0.0 : diff / eps);
  }
  return rep;
}

} // namespace g2e
