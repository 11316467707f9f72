#ifndef G2E_IMVECTOR_HPP
#define G2E_IMVECTOR_HPP

/// @file imvector.hpp
/// The imaginary split octonions Im(O') as 7-vectors in the M-imaginary basis
/// (i, j, k, l, li, lj, lk): quadratic form of signature (3,4), cross product
/// x X y = Im(x y), the 3-form Omega, and annihilator computations.
///
/// The type is templated on the scalar model; the structure constants are the
/// exact integers of the generated multiplication table, so the same code
/// serves Rat (exact), double, and std::complex<double> (complexified cross).

#include "g2e/exact_linalg.hpp"
#include "g2e/octonion.hpp"
#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <vector>

namespace g2e {

template <class S> struct ImVector {
  std::array<S, 7> c{};

  static ImVector basis(int k) {
    ImVector e;
    e.c[k] = S(1);
    return e;
  }
  static constexpr int I = 0, J = 1, K = 2, L = 3, LI = 4, LJ = 5, LK = 6;

  SplitOct<S> to_oct() const {
    SplitOct<S> o;
    for (int t = 0; t < 7; ++t) o.c[t + 1] = c[t];
    return o;
  }
  static ImVector from_oct(const SplitOct<S>& o) {
    ImVector v;
    for (int t = 0; t < 7; ++t) v.c[t] = o.c[t + 1];
    return v;
  }

  friend ImVector operator+(const ImVector& a, const ImVector& b) {
    ImVector r;
    for (int t = 0; t < 7; ++t) r.c[t] = a.c[t] + b.c[t];
    return r;
  }
  friend ImVector operator-(const ImVector& a, const ImVector& b) {
    ImVector r;
    for (int t = 0; t < 7; ++t) r.c[t] = a.c[t] - b.c[t];
    return r;
  }
  friend ImVector operator*(const S& s, const ImVector& a) {
    ImVector r;
    for (int t = 0; t < 7; ++t) r.c[t] = s * a.c[t];
    return r;
  }
  friend ImVector operator-(const ImVector& a) { return S(-1) * a; }
  bool operator==(const ImVector& o) const { return c == o.c; }

  bool is_zero() const {
    for (const S& x : c)
      if (pivot_size(x) != 0) return false;
    return true;
  }
};

/// q restricted to Im(O'): diag(+,+,+,-,-,-,-) in the M-imaginary basis.
template <class S> S quad(const ImVector<S>& v) {
  S r = v.c[0] * v.c[0] + v.c[1] * v.c[1] + v.c[2] * v.c[2];
  for (int t = 3; t < 7; ++t) r -= v.c[t] * v.c[t];
  return r;
}

/// Polarization q(a, b) = (q(a+b) - q(a) - q(b)) / 2.
template <class S> S quad_pair(const ImVector<S>& a, const ImVector<S>& b) {
  S r = a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2];
  for (int t = 3; t < 7; ++t) r -= a.c[t] * b.c[t];
  return r;
}

/// Cross product x X y = Im(x y) (drops the real part of the product).
template <class S> ImVector<S> cross(const ImVector<S>& x, const ImVector<S>& y) {
  const auto& tab = OctTable::instance().t;
  ImVector<S> r;
  for (int i = 0; i < 7; ++i) {
    if (pivot_size(x.c[i]) == 0) continue;
    for (int j = 0; j < 7; ++j) {
      if (pivot_size(y.c[j]) == 0) continue;
      const S prod = x.c[i] * y.c[j];
      for (int k = 0; k < 7; ++k) {
        const int s = tab[i + 1][j + 1][k + 1];
        if (s == 1) r.c[k] += prod;
        else if (s == -1) r.c[k] -= prod;
      }
    }
  }
  return r;
}

/// The G2'-invariant 3-form Omega(x, y, z) = q(x X y, z).
template <class S>
S triple_form(const ImVector<S>& x, const ImVector<S>& y, const ImVector<S>& z) {
  return quad_pair(cross(x, y), z);
}

/// 7x7 matrix of the cross-product endomorphism C_u : v -> u X v.
template <class S> std::array<std::array<S, 7>, 7> cross_matrix(const ImVector<S>& u) {
  std::array<std::array<S, 7>, 7> m{};
  for (int j = 0; j < 7; ++j) {
    const ImVector<S> col = cross(u, ImVector<S>::basis(j));
    for (int i = 0; i < 7; ++i) m[i][j] = col.c[i];
  }
  return m;
}

/// Basis of Ann(u) = ker C_u, exact rational route.  dim = 3 when q(u) = 0,
/// otherwise the kernel is the line through u itself.
inline std::vector<ImVector<Rat>> annihilator(const ImVector<Rat>& u) {
  if (u.is_zero()) throw std::invalid_argument("annihilator: zero vector");
  const auto m = cross_matrix(u);
  MatQ mq(7, VecQ(7));
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) mq[i][j] = m[i][j];
  std::vector<ImVector<Rat>> out;
  for (const VecQ& k : kernel(std::move(mq))) {
    ImVector<Rat> v;
    for (int t = 0; t < 7; ++t) v.c[t] = k[t];
    out.push_back(v);
  }
  return out;
}

/// Float route: SVD kernel with relative threshold 1e-10 * sigma_max.
inline std::vector<ImVector<double>> annihilator(const ImVector<double>& u) {
  if (u.is_zero()) throw std::invalid_argument("annihilator: zero vector");
  Eigen::Matrix<double, 7, 7> m;
  const auto cm = cross_matrix(u);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) m(i, j) = cm[i][j];
  Eigen::JacobiSVD<Eigen::Matrix<double, 7, 7>> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thresh = 1e-10 * sv(0);
  std::vector<ImVector<double>> out;
  for (int k = 6; k >= 0; --k) {
    if (sv(k) > thresh) break;
    ImVector<double> v;
    for (int t = 0; t < 7; ++t) v.c[t] = svd.matrixV()(t, k);
    out.push_back(v);
  }
  return out;
}

} // namespace g2e

#endif
