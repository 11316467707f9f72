#ifndef G2E_G2BASIS_HPP
#define G2E_G2BASIS_HPP

/// @file g2basis.hpp
/// Cross-product-preserving 7x7 matrices and the basis bridges between
/// Im(O') (M-imaginary coordinates), the degree-six binary forms (monomial
/// coordinates), and the two normalized bases B and B' that identify them.
///
/// Basis B (columns of bridge_B(), Q6-orthonormal-with-signs):
///   ( (i+li)/s2, (lj-j)/(s2 s6), (k-lk)/(s2 s15), -l/s20,
///     (k+lk)/(s2 s15), (j+lj)/(s2 s6), (i-li)/s2 ),   s_k = sqrt(k),
/// paired in order with the monomials (X^6, X^5 Y, ..., Y^6).  Pulling the
/// split form q back through B gives exactly the Q6 Gram matrix.
///
/// Basis B' rescales B by the diagonal d = (1, s6, s15, -s20, s15, s6, 1);
/// in B'-coordinates the three standard Moebius generators act by the
/// diagonal, exp-nilpotent, and antidiagonal matrices (see tests).

#include "g2e/imvector.hpp"
#include "g2e/sextic.hpp"
#include <Eigen/Dense>
#include <array>
#include <cmath>

namespace g2e {

using Mat7d = Eigen::Matrix<double, 7, 7>;
using Vec7d = Eigen::Matrix<double, 7, 1>;
using Mat7c = Eigen::Matrix<Cplx, 7, 7>;
using Vec7c = Eigen::Matrix<Cplx, 7, 1>;

template <class S> using Mat7 = std::array<std::array<S, 7>, 7>;

inline ImVector<double> to_im(const Vec7d& v) {
  ImVector<double> r;
  for (int t = 0; t < 7; ++t) r.c[t] = v(t);
  return r;
}
inline Vec7d from_im(const ImVector<double>& v) {
  Vec7d r;
  for (int t = 0; t < 7; ++t) r(t) = v.c[t];
  return r;
}
inline ImVector<Cplx> to_imc(const Vec7c& v) {
  ImVector<Cplx> r;
  for (int t = 0; t < 7; ++t) r.c[t] = v(t);
  return r;
}

/// Monomial -> M-imaginary bridge (columns are the B basis vectors).
inline const Mat7d& bridge_B() {
  static const Mat7d B = [] {
    const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0), s15 = std::sqrt(15.0),
                 s20 = std::sqrt(20.0);
    Mat7d m = Mat7d::Zero();
    // M-imaginary rows: (i, j, k, l, li, lj, lk)
    m(0, 0) = 1 / s2;             m(4, 0) = 1 / s2;        // (i+li)/s2
    m(5, 1) = 1 / (s2 * s6);      m(1, 1) = -1 / (s2 * s6); // (lj-j)/(s2 s6)
    m(2, 2) = 1 / (s2 * s15);     m(6, 2) = -1 / (s2 * s15); // (k-lk)/(s2 s15)
    m(3, 3) = -1 / s20;                                     // -l/s20
    m(2, 4) = 1 / (s2 * s15);     m(6, 4) = 1 / (s2 * s15); // (k+lk)/(s2 s15)
    m(1, 5) = 1 / (s2 * s6);      m(5, 5) = 1 / (s2 * s6);  // (j+lj)/(s2 s6)
    m(0, 6) = 1 / s2;             m(4, 6) = -1 / s2;        // (i-li)/s2
    return m;
  }();
  return B;
}

/// Diagonal rescaling from B to B' (B'_k = d_k B_k).
inline const Vec7d& bprime_scale() {
  static const Vec7d d = [] {
    Vec7d v;
    v << 1, std::sqrt(6.0), std::sqrt(15.0), -std::sqrt(20.0), std::sqrt(15.0),
        std::sqrt(6.0), 1;
    return v;
  }();
  return d;
}

/// Complex weight basis columns (u_3, u_2, u_1, u_0, u_{-1}, u_{-2}, u_{-3})
/// in M-imaginary coordinates, built from octonion products so every sign is
/// inherited from the multiplication table:
///   u_{+-3} = (jl +- i kl)/s2, u_{+-2} = (j +- i k)/s2,
///   u_{+-1} = (l +- i il)/s2,  u_0 = i.
inline const Mat7c& weight_basis() {
  static const Mat7c U = [] {
    using IV = ImVector<Rat>;
    const IV i = IV::basis(0), j = IV::basis(1), k = IV::basis(2), l = IV::basis(3);
    const IV jl = cross(j, l), kl = cross(k, l), il = cross(i, l);
    const double s2 = std::sqrt(2.0);
    auto mix = [&](const IV& re, const IV& im, double sgn) {
      Vec7c v;
      for (int t = 0; t < 7; ++t)
        v(t) = Cplx(to_double(re.c[t]) / s2, sgn * to_double(im.c[t]) / s2);
      return v;
    };
    Mat7c u;
    u.col(0) = mix(jl, kl, +1);
    u.col(1) = mix(j, k, +1);
    u.col(2) = mix(l, il, +1);
    for (int t = 0; t < 7; ++t) u(t, 3) = Cplx(to_double(Rat(i.c[t])), 0.0);
    u.col(4) = mix(l, il, -1);
    u.col(5) = mix(j, k, -1);
    u.col(6) = mix(jl, kl, -1);
    return u;
  }();
  return U;
}

struct G2Residual {
  double cross_resid = 0.0; ///< max over the 49 basis pairs
  double quad_resid = 0.0;  ///< max entrywise Gram deviation
  bool pass(double tol) const { return cross_resid <= tol && quad_resid <= tol; }
};

/// Cross-product and q preservation residuals of a real 7x7 matrix in
/// M-imaginary coordinates.
inline G2Residual is_g2(const Mat7d& M, double /*tol*/ = 0.0) {
  G2Residual r;
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      const Vec7d lhs = M * from_im(cross(to_im(Vec7d::Unit(a)), to_im(Vec7d::Unit(b))));
      const Vec7d rhs = from_im(cross(to_im(M.col(a)), to_im(M.col(b))));
      r.cross_resid = std::max(r.cross_resid, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  Mat7d gq = Mat7d::Zero();
  for (int t = 0; t < 7; ++t) gq(t, t) = t < 3 ? 1.0 : -1.0;
  r.quad_resid = (M.transpose() * gq * M - gq).cwiseAbs().maxCoeff();
  return r;
}

/// Complexified variant (complex-bilinear q and cross).
inline G2Residual is_g2(const Mat7c& M) {
  G2Residual r;
  auto crossc = [](const Vec7c& x, const Vec7c& y) {
    ImVector<Cplx> a, b;
    for (int t = 0; t < 7; ++t) { a.c[t] = x(t); b.c[t] = y(t); }
    const auto z = cross(a, b);
    Vec7c out;
    for (int t = 0; t < 7; ++t) out(t) = z.c[t];
    return out;
  };
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      const Vec7c lhs = M * crossc(Vec7c::Unit(a), Vec7c::Unit(b));
      const Vec7c rhs = crossc(M.col(a), M.col(b));
      r.cross_resid = std::max(r.cross_resid, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  Mat7c gq = Mat7c::Zero();
  for (int t = 0; t < 7; ++t) gq(t, t) = t < 3 ? 1.0 : -1.0;
  r.quad_resid = (M.transpose() * gq * M - gq).cwiseAbs().maxCoeff();
  return r;
}

/// Columns of the frame B_{x,y,z} = (x, y, xy, z, zx, zy, z(xy)) for a
/// Stiefel triple q(x)=q(y)=+1=-q(z), pairwise orthogonal, z.(x X y)=0.
/// On imaginary orthogonal arguments the octonion product equals the cross
/// product, so the frame is assembled from crosses.
template <class S>
Mat7<S> stiefel_to_g2(const ImVector<S>& x, const ImVector<S>& y, const ImVector<S>& z,
                      double tol = 1e-9) {
  const ImVector<S> xy = cross(x, y);
  const auto chk = [&](const S& v, const S& want) {
    if (pivot_size(v - want) > tol)
      throw std::invalid_argument("stiefel_to_g2: invalid triple");
  };
  chk(quad(x), S(1));
  chk(quad(y), S(1));
  chk(quad(z), S(-1));
  chk(quad_pair(x, y), S(0));
  chk(quad_pair(x, z), S(0));
  chk(quad_pair(y, z), S(0));
  chk(quad_pair(z, xy), S(0));
  const ImVector<S> cols[7] = {x, y, xy, z, cross(z, x), cross(z, y), cross(z, xy)};
  Mat7<S> m{};
  for (int j = 0; j < 7; ++j)
    for (int i = 0; i < 7; ++i) m[i][j] = cols[j].c[i];
  return m;
}

inline Mat7d to_eigen(const Mat7<double>& m) {
  Mat7d r;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) r(i, j) = m[i][j];
  return r;
}
inline Mat7d to_eigen(const Mat7<Rat>& m) {
  Mat7d r;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) r(i, j) = to_double(m[i][j]);
  return r;
}

/// Degree-six Moebius representation as an Eigen matrix in the monomial basis.
inline Mat7d psl2_embed(const Moebius<double>& g) {
  const auto M = moebius_rep(g);
  Mat7d r;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) r(i, j) = M[i][j];
  return r;
}

/// Same matrix conjugated into B'-coordinates.
inline Mat7d psl2_embed_bprime(const Moebius<double>& g) {
  const Vec7d& d = bprime_scale();
  const Mat7d M = psl2_embed(g);
  Mat7d r;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) r(i, j) = M(i, j) * d(j) / d(i);
  return r;
}

/// Same matrix conjugated into M-imaginary coordinates (a G2' element).
inline Mat7d psl2_embed_im(const Moebius<double>& g) {
  const Mat7d& B = bridge_B();
  return B * psl2_embed(g) * B.inverse();
}

/// exp(s N) of the nilpotent with superdiagonal
/// (s6, s10, -s12, -s12, s10, s6) by its (finite) power series.
inline Mat7d unipotent_exp(double s) {
  Mat7d N = Mat7d::Zero();
  const double ent[6] = {std::sqrt(6.0), std::sqrt(10.0), -std::sqrt(12.0),
                         -std::sqrt(12.0), std::sqrt(10.0), std::sqrt(6.0)};
  for (int t = 0; t < 6; ++t) N(t, t + 1) = ent[t];
  Mat7d acc = Mat7d::Identity(), term = Mat7d::Identity();
  double fact = 1.0;
  for (int k = 1; k <= 6; ++k) {
    term = term * N;
    fact *= k;
    acc += term * std::pow(s, k) / fact;
  }
  return acc;
}

} // namespace g2e

#endif
