#ifndef G2E_SEXTIC_HPP
#define G2E_SEXTIC_HPP

/// @file sextic.hpp
/// Binary forms over a scalar model, with the invariant pairing Q6 on sextics
/// and the degree-six representation of Moebius transformations.
///
/// A binary form of degree n is stored as n+1 coefficients a_0..a_n for
/// X^{n-k} Y^k.  The pairing Q6 has the antidiagonal Gram matrix with weights
/// (1, -1/6, 1/15, -1/20, 1/15, -1/6, 1).
///
/// Moebius convention: the matrix (a b; c d) acts by substitution
/// X -> aX + cY, Y -> bX + dY; this is the convention under which the
/// diagonal, rotation, and unipotent generators take their standard
/// representation matrices (see g2basis.hpp for the basis bridges).

#include "g2e/scalar.hpp"
#include <stdexcept>
#include <vector>

namespace g2e {

/// Dense binary form coefficients (degree = size - 1).
template <class S> using BinForm = std::vector<S>;

template <class S> BinForm<S> bf_zero(int degree) { return BinForm<S>(degree + 1, S(0)); }

template <class S> BinForm<S> bf_add(const BinForm<S>& a, const BinForm<S>& b) {
  BinForm<S> r(std::max(a.size(), b.size()), S(0));
  for (std::size_t t = 0; t < a.size(); ++t) r[t] += a[t];
  for (std::size_t t = 0; t < b.size(); ++t) r[t] += b[t];
  return r;
}

template <class S> BinForm<S> bf_scale(const S& s, const BinForm<S>& a) {
  BinForm<S> r = a;
  for (auto& x : r) x = s * x;
  return r;
}

/// Product of binary forms (coefficient convolution).
template <class S> BinForm<S> bf_mul(const BinForm<S>& a, const BinForm<S>& b) {
  BinForm<S> r(a.size() + b.size() - 1, S(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

template <class S> bool bf_is_zero(const BinForm<S>& a) {
  for (const S& x : a)
    if (pivot_size(x) != 0) return false;
  return true;
}

/// Q6 pairing of two sextics (degree 6 required).
template <class S> S q6_pair(const BinForm<S>& p, const BinForm<S>& r) {
  if (p.size() != 7 || r.size() != 7)
    throw std::invalid_argument("q6_pair: inputs must be sextics");
  // antidiagonal weights 1, -1/6, 1/15, -1/20, 1/15, -1/6, 1
  const S w0(1);
  S acc = w0 * (p[0] * r[6] + p[6] * r[0]);
  acc -= (p[1] * r[5] + p[5] * r[1]) / S(6);
  acc += (p[2] * r[4] + p[4] * r[2]) / S(15);
  acc -= (p[3] * r[3]) / S(20);
  return acc;
}

template <class S> S q6(const BinForm<S>& p) { return q6_pair(p, p); }

/// Moebius transformation with det = +1, canonicalized so the first nonzero
/// of (a, b, c, d) is positive (projective sign fix).
template <class S> struct Moebius {
  S a, b, c, d;

  Moebius(S a_, S b_, S c_, S d_) : a(a_), b(b_), c(c_), d(d_) { canonicalize(); }

  void canonicalize() {
    const S* v[4] = {&a, &b, &c, &d};
    for (int t = 0; t < 4; ++t) {
      if (pivot_size(*v[t]) == 0) continue;
      if (real_part(*v[t]) < 0) { a = -a; b = -b; c = -c; d = -d; }
      break;
    }
  }
  static double real_part(double x) { return x; }
  static Rat real_part(const Rat& x) { return x; }

  friend Moebius operator*(const Moebius& g, const Moebius& h) {
    return Moebius(g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
                   g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d);
  }
  bool operator==(const Moebius& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
};

/// Binomial coefficients up to n = 6 (exact).
inline long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int t = 1; t <= k; ++t) r = r * (n - t + 1) / t;
  return r;
}

/// Matrix of the degree-n substitution action in the monomial basis
/// X^{n-k} Y^k: column k holds the coefficients of (aX+cY)^{n-k} (bX+dY)^k.
/// Exact for exact scalars.
template <class S>
std::vector<std::vector<S>> moebius_rep(const Moebius<S>& g, int n = 6) {
  std::vector<std::vector<S>> M(n + 1, std::vector<S>(n + 1, S(0)));
  std::vector<S> apow(n + 1, S(1)), bpow(n + 1, S(1)), cpow(n + 1, S(1)), dpow(n + 1, S(1));
  for (int t = 1; t <= n; ++t) {
    apow[t] = apow[t - 1] * g.a;
    bpow[t] = bpow[t - 1] * g.b;
    cpow[t] = cpow[t - 1] * g.c;
    dpow[t] = dpow[t - 1] * g.d;
  }
  for (int k = 0; k <= n; ++k) {
    for (int i = 0; i <= n - k; ++i) {
      for (int j = 0; j <= k; ++j) {
        // term: C(n-k,i) a^i c^{n-k-i} * C(k,j) b^j d^{k-j} X^{i+j} Y^{n-i-j}
        const int ypow = (n - k - i) + (k - j);
        const S coef = S(binom(n - k, i) * binom(k, j)) * apow[i] * cpow[n - k - i] *
                       bpow[j] * dpow[k - j];
        M[ypow][k] += coef;
      }
    }
  }
  return M;
}

/// Apply a (n+1)x(n+1) representation matrix to a form.
template <class S>
BinForm<S> apply_rep(const std::vector<std::vector<S>>& M, const BinForm<S>& p) {
  BinForm<S> r(M.size(), S(0));
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M[i].size(); ++j) r[i] += M[i][j] * p[j];
  return r;
}

} // namespace g2e

#endif
