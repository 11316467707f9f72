#ifndef G2E_HITCHIN_HPP
#define G2E_HITCHIN_HPP

/// @file hitchin.hpp
/// The cyclic rank-7 Hitchin system: Higgs field and diagonal metric data with
/// the real-structure involution, the h-unitary multiplication frame, the
/// coupled elliptic equations for (psi1, psi2) on desk-scale grids, a damped
/// Newton solver, the global inequality margins, and a numerical sensitivity
/// probe for continuity of the solution in the quadratic differential.
///
/// Conventions: Delta_sigma = (1/(4 sigma)) * (5-point Laplacian); the system
/// solved is
///   2 Delta_sigma psi1 = 5 e^{psi1 - 3 psi2} - 2 |q|^2_sigma e^{-2 psi1}
///                        + (5/2) kappa_sigma
///   2 Delta_sigma psi2 = -5 e^{psi1 - 3 psi2} + 6 e^{2 psi2}
///                        + (1/2) kappa_sigma
/// stored as residuals R = lhs - rhs.

#include "g2e/imvector.hpp"
#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

namespace g2e {

/// Pointwise Higgs data: local value of the sextic differential and the two
/// diagonal metric parameters.
struct HiggsPoint {
  Cplx q;
  double r = 1, s = 1;
};

/// The 7x7 Higgs field, the diagonal harmonic metric, and residuals of the
/// real-structure involution tau(x) = H^{-1} Q conj(x) (Q antidiagonal):
/// tau^2 = id and tau fixes Phi + Phi^{*h}.
struct HiggsData {
  Eigen::Matrix<Cplx, 7, 7> phi;
  Eigen::Matrix<double, 7, 1> h_diag; ///< (1/(rs), 1/r, 1/s, 1, s, r, rs)
  double tau_sq_residual = 0;
  double tau_fix_residual = 0;
};
HiggsData higgs_data(const HiggsPoint& p);

/// Weight-basis vectors u_m (m = -3..3) of the principal sl2 decomposition in
/// M-imaginary coordinates (complex coefficients).
ImVector<Cplx> weight_basis(int m);

/// The h-unitary multiplication frame w_1..w_7 for metric parameters (r, s):
/// complex 7-vectors with bilinear q(w_i) = +1 for i in {1,2,3} and -1 for
/// i in {4..7}; the complex-linear map m_i -> w_i preserves the complexified
/// cross product.  Real at r = s = 1, where the frame is the M-imaginary
/// basis itself.
std::array<ImVector<Cplx>, 7> frame_w(double r, double s);

/// Real directions spanned by the frame: (xhat; T1, T2; N1, N2) extracted
/// from (w1; w4, w5; w2, w3) by splitting real and imaginary parts.  Valid
/// input for the family constructor at every (r, s).
struct FrameDirections {
  ImVector<double> xhat, t1, t2, n1, n2;
};
FrameDirections frame_directions(double r, double s);

enum class GridMode { Periodic, Dirichlet };

/// Discretized fields on a uniform 2D grid, row-major with index i*ny + j.
/// In Dirichlet mode the boundary values of psi1, psi2 are fixed data and the
/// solver only updates interior nodes.
struct HitchinGrid {
  int nx = 0, ny = 0;
  GridMode mode = GridMode::Periodic;
  double hx = 0, hy = 0;
  std::vector<double> psi1, psi2; ///< unknowns (initial guess on input)
  std::vector<double> sigma;      ///< conformal factor, > 0
  std::vector<double> qsq;        ///< |q|^2_sigma
  std::vector<double> kappa;      ///< curvature term kappa_sigma

  HitchinGrid(int nx_, int ny_, GridMode mode_, double hx_, double hy_);
  int size() const { return nx * ny; }
  int index(int i, int j) const;
  bool boundary(int i, int j) const;

  /// Constant-curvature instance: sigma = 1, kappa = -2, q = 0, periodic unit
  /// torus with spacing 1/n; the solution is psi = 0.
  static HitchinGrid hyperbolic(int n);
  /// Flat instance: sigma = 1, kappa = 0, |q|^2 = c, periodic; the solution
  /// is the constant pair psi2 = log b, psi1 = log((6/5) b^5) with
  /// b = (25 c / 108)^{1/12}.
  static HitchinGrid flat(int n, double c);
};

/// Discrete residual (R1, R2) of the coupled system at every node (zero on
/// Dirichlet boundary nodes).
std::pair<std::vector<double>, std::vector<double>> residual(const HitchinGrid& g);

/// Margins of the two global inequalities, minimized over nodes:
/// det III gap 3 - |q|^2_sigma e^{-2 psi1 - 2 psi2} and 6/5 - e^{psi1-5psi2}.
struct BoundsReport {
  double margin_det3 = 0;
  double margin_sixfifth = 0;
  bool ok = false;
};
BoundsReport verify_bounds(const HitchinGrid& g);

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double final_residual = 0;
  std::vector<double> history; ///< residual sup-norm per iteration, leading
                               ///< with the initial residual
  BoundsReport bounds;         ///< evaluated on the final iterate
};

/// Damped Newton iteration with the analytic Jacobian of the pointwise
/// nonlinearity plus the discrete Laplacian; Armijo backtracking on the
/// residual sup-norm (factor 1/2, minimum step 2^-20); sparse LU linear
/// solves.  Deterministic for identical inputs.
SolveReport newton_solve(HitchinGrid& g, double tol = 1e-11, int max_iter = 40);

/// Continuity probe: re-solves at qsq + eps * dqsq for each eps and reports
/// the difference quotients ||psi(eps) - psi(0)||_inf / eps, which stabilize
/// when the solution is differentiable in the differential.
struct SensitivityReport {
  std::vector<double> eps;
  std::vector<double> ratios;
};
SensitivityReport sensitivity_probe(const HitchinGrid& base,
                                    const std::vector<double>& dqsq,
                                    const std::vector<double>& eps_steps,
                                    double tol = 1e-12, int max_iter = 40);

} // namespace g2e

#endif
