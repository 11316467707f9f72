/// Einstein-universe geometry: recovery of the distinguished positive line of
/// a (3,2)-plane and the uniqueness check for the family splitting.

#include "g2e/ein.hpp"
#include "g2e/rng.hpp"
#include <Eigen/Dense>
#include <cmath>

namespace g2e {

namespace {

/// Solve the 5x5 rational system G c = b by row reduction (G invertible).
VecQ solve5(const MatQ& G, const VecQ& b) {
  MatQ aug(5, VecQ(6));
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) aug[i][j] = G[i][j];
    aug[i][5] = b[i];
  }
  const auto piv = rref(aug);
  if (static_cast<int>(piv.size()) != 5 || piv[4] != 4)
    throw std::invalid_argument("recover_line: degenerate Gram matrix");
  VecQ c(5);
  for (int i = 0; i < 5; ++i) c[i] = aug[i][5];
  return c;
}

} // namespace

RecoveredLine<Rat> recover_line(const std::vector<ImVector<Rat>>& U) {
  if (U.size() != 5) throw std::invalid_argument("recover_line: need 5 basis vectors");
  MatQ G(5, VecQ(5));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) G[i][j] = quad_pair(U[i], U[j]);
  // Stacked map: column j of block i holds proj_{U-perp}(U[j] x U[i]).
  MatQ A(35, VecQ(5));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const ImVector<Rat> w = cross(U[j], U[i]);
      VecQ b(5);
      for (int t = 0; t < 5; ++t) b[t] = quad_pair(w, U[t]);
      const VecQ c = solve5(G, b);
      ImVector<Rat> p = w;
      for (int t = 0; t < 5; ++t) p = p - c[t] * U[t];
      for (int r = 0; r < 7; ++r) A[7 * i + r][j] = p.c[r];
    }
  const auto ker = kernel(std::move(A));
  if (ker.size() != 1)
    throw std::invalid_argument("recover_line: plane is not cross-closed");
  ImVector<Rat> v;
  for (int j = 0; j < 5; ++j) v = v + ker[0][j] * U[j];
  if (quad(v) <= 0)
    throw std::invalid_argument("recover_line: recovered line not positive");
  return {line_normalize(v)};
}

RecoveredLine<double> recover_line(const std::vector<ImVector<double>>& U_in) {
  if (U_in.size() != 5)
    throw std::invalid_argument("recover_line: need 5 basis vectors");
  // Euclidean-orthonormalize the basis (same span) so the kernel threshold
  // below is meaningful regardless of the conditioning of the input vectors.
  Eigen::Matrix<double, 7, 5> Umat;
  for (int j = 0; j < 5; ++j)
    for (int t = 0; t < 7; ++t) Umat(t, j) = U_in[j].c[t];
  const Eigen::Matrix<double, 7, 5> Q =
      Eigen::HouseholderQR<Eigen::Matrix<double, 7, 5>>(Umat)
          .householderQ()
          .setLength(5) *
      Eigen::Matrix<double, 7, 5>::Identity();
  std::vector<ImVector<double>> U(5);
  for (int j = 0; j < 5; ++j)
    for (int t = 0; t < 7; ++t) U[j].c[t] = Q(t, j);
  Eigen::Matrix<double, 5, 5> G;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) G(i, j) = quad_pair(U[i], U[j]);
  const Eigen::Matrix<double, 5, 5> Ginv = G.inverse();
  Eigen::MatrixXd A(35, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const ImVector<double> w = cross(U[j], U[i]);
      Eigen::Matrix<double, 5, 1> b;
      for (int t = 0; t < 5; ++t) b(t) = quad_pair(w, U[t]);
      const Eigen::Matrix<double, 5, 1> c = Ginv * b;
      ImVector<double> p = w;
      for (int t = 0; t < 5; ++t) p = p - c(t) * U[t];
      for (int r = 0; r < 7; ++r) A(7 * i + r, j) = p.c[r];
    }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thresh = 1e-10 * sv(0);
  if (sv(4) > thresh || sv(3) <= thresh)
    throw std::invalid_argument("recover_line: kernel is not one-dimensional");
  ImVector<double> v;
  for (int j = 0; j < 5; ++j) v = v + svd.matrixV()(j, 4) * U[j];
  if (quad(v) <= 0)
    throw std::invalid_argument("recover_line: recovered line not positive");
  return {line_normalize(v)};
}

SplittingReport verify_unique_splitting(const RTFamily& f, int trials,
                                        std::uint64_t seed) {
  SplitMix64 rng(seed);
  SplittingReport rep;
  rep.all_found = true;
  for (int trial = 0; trial < trials; ++trial) {
    // Hyperbolic mix of a timelike unit v_T and spacelike unit v_N:
    // v = c1 v_T + c2 v_N and u = c2 v_T + c1 v_N with c2^2 - c1^2 = 1 give a
    // new splitting (q(u) = -1, q(v) = +1, q(u, v) = 0); the point
    // [xhat + v_T] lies in the mixed family with parameter r = |c1| but has
    // zero N-projection for the original one.
    const double m = rng.uniform(0.3, 1.5);
    const double sgn = rng.uniform_int(0, 1) ? 1.0 : -1.0;
    SplittingWitness w;
    w.c1 = sgn * std::sinh(m);
    w.c2 = std::cosh(m);
    const double th = rng.uniform(0, 2 * M_PI), al = rng.uniform(0, 2 * M_PI);
    const ImVector<double> vT = std::cos(th) * f.T1 + std::sin(th) * f.T2;
    const ImVector<double> vN = std::cos(al) * f.N1 + std::sin(al) * f.N2;
    const ImVector<double> v = w.c1 * vT + w.c2 * vN;
    const ImVector<double> u = w.c2 * vT + w.c1 * vN;
    w.point = f.xhat + vT;

    bool ok = std::abs(quad(w.point)) < 1e-12;
    ok = ok && std::abs(quad(u) + 1.0) < 1e-12 && std::abs(quad(v) - 1.0) < 1e-12 &&
         std::abs(quad_pair(u, v)) < 1e-12;
    // The witness reassembles as the r = |c1| point of the mixed family.
    const double t = std::abs(w.c1);
    // sqrt(t^2+1) = c2 and the N'-direction is -sign(c1) v, so the point is
    // xhat + c2 u - c1 v.
    const ImVector<double> re = f.xhat + std::sqrt(t * t + 1.0) * u - w.c1 * v;
    ImVector<double> diff = re - w.point;
    double dm = 0;
    for (int k = 0; k < 7; ++k) dm = std::max(dm, std::abs(diff.c[k]));
    w.alt_valid = ok && dm < 1e-12;

    const FamilyCoords fc = family_membership(f, NullLine<double>(w.point));
    w.outside_original = !fc.member;

    rep.all_found = rep.all_found && w.alt_valid && w.outside_original;
    rep.witnesses.push_back(w);
  }
  return rep;
}

} // namespace g2e
