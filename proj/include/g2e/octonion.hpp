#ifndef G2E_OCTONION_HPP
#define G2E_OCTONION_HPP

/// @file octonion.hpp
/// Split octonions O' = CD'(H) and their imaginary part Im(O').
///
/// Conventions (the single source of truth for every sign in the library):
///   - quaternions H have basis (1, i, j, k) with i*j = k;
///   - the split Cayley-Dickson doubling is
///         (a, b) (c, d) = (a c + d b*,  a* d + c b),
///     with conjugation (a, b)* = (a*, -b);
///   - the storage basis of O' is M = (1, i, j, k, l, li, lj, lk) with
///     l = (0, 1), li = l*i = (0, i), and so on;
///   - q(x) = x x* has signature (4,4); on Im(O') it restricts to (3,4) with
///     q(i) = q(j) = q(k) = +1 and q(l) = q(li) = q(lj) = q(lk) = -1;
///   - the cross product on Im(O') is x X y = Im(x y).
///
/// The 8x8 structure-constant table is generated once from the doubling
/// recursion; a second, table-driven multiplication route exists purely so the
/// two can be cross-validated against each other.

#include "g2e/scalar.hpp"
#include <array>
#include <cassert>
#include <cstdint>

namespace g2e {

/// Quaternion over scalar model S, coords (1, i, j, k).
template <class S> struct Quat {
  std::array<S, 4> c{};

  friend Quat operator+(const Quat& a, const Quat& b) {
    Quat r;
    for (int t = 0; t < 4; ++t) r.c[t] = a.c[t] + b.c[t];
    return r;
  }
  friend Quat operator*(const Quat& a, const Quat& b) {
    return Quat{{a.c[0]*b.c[0] - a.c[1]*b.c[1] - a.c[2]*b.c[2] - a.c[3]*b.c[3],
                 a.c[0]*b.c[1] + a.c[1]*b.c[0] + a.c[2]*b.c[3] - a.c[3]*b.c[2],
                 a.c[0]*b.c[2] - a.c[1]*b.c[3] + a.c[2]*b.c[0] + a.c[3]*b.c[1],
                 a.c[0]*b.c[3] + a.c[1]*b.c[2] - a.c[2]*b.c[1] + a.c[3]*b.c[0]}};
  }
  Quat conj() const { return Quat{{c[0], -c[1], -c[2], -c[3]}}; }
};

/// Split octonion over scalar model S in the M basis.
template <class S> struct SplitOct {
  std::array<S, 8> c{};

  static SplitOct basis(int k) {
    SplitOct e;
    e.c[k] = S(1);
    return e;
  }

  Quat<S> first() const { return Quat<S>{{c[0], c[1], c[2], c[3]}}; }
  Quat<S> second() const { return Quat<S>{{c[4], c[5], c[6], c[7]}}; }
  static SplitOct from_pair(const Quat<S>& a, const Quat<S>& b) {
    return SplitOct{{a.c[0], a.c[1], a.c[2], a.c[3], b.c[0], b.c[1], b.c[2], b.c[3]}};
  }

  friend SplitOct operator+(const SplitOct& a, const SplitOct& b) {
    SplitOct r;
    for (int t = 0; t < 8; ++t) r.c[t] = a.c[t] + b.c[t];
    return r;
  }
  friend SplitOct operator-(const SplitOct& a, const SplitOct& b) {
    SplitOct r;
    for (int t = 0; t < 8; ++t) r.c[t] = a.c[t] - b.c[t];
    return r;
  }
  friend SplitOct operator*(const S& s, const SplitOct& a) {
    SplitOct r;
    for (int t = 0; t < 8; ++t) r.c[t] = s * a.c[t];
    return r;
  }

  SplitOct conj() const {
    return SplitOct{{c[0], -c[1], -c[2], -c[3], -c[4], -c[5], -c[6], -c[7]}};
  }

  bool operator==(const SplitOct& o) const { return c == o.c; }
};

/// Split Cayley-Dickson product (the recursion route).
template <class S>
SplitOct<S> oct_mul_cd(const SplitOct<S>& x, const SplitOct<S>& y) {
  const Quat<S> a = x.first(), b = x.second();
  const Quat<S> c = y.first(), d = y.second();
  return SplitOct<S>::from_pair(a * c + d * b.conj(), a.conj() * d + c * b);
}

/// Structure constants: table[i][j][k] is the k-coordinate of e_i * e_j,
/// generated from the doubling recursion over exact integers.  Every entry is
/// in {-1, 0, +1} and each product of basis elements is +-1 times a basis
/// element.
struct OctTable {
  std::array<std::array<std::array<int, 8>, 8>, 8> t{};

  OctTable() {
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        SplitOct<Rat> p = oct_mul_cd(SplitOct<Rat>::basis(i), SplitOct<Rat>::basis(j));
        for (int k = 0; k < 8; ++k) {
          const Rat& v = p.c[k];
          t[i][j][k] = (v == 0) ? 0 : (v > 0 ? 1 : -1);
          assert(v == 0 || v == 1 || v == -1);
        }
      }
  }

  static const OctTable& instance() {
    static const OctTable tab;
    return tab;
  }
};

/// Table-driven product (the cross-validation route and the fast path).
template <class S>
SplitOct<S> oct_mul(const SplitOct<S>& x, const SplitOct<S>& y) {
  const auto& tab = OctTable::instance().t;
  SplitOct<S> r;
  for (int i = 0; i < 8; ++i) {
    if (pivot_size(x.c[i]) == 0) continue;
    for (int j = 0; j < 8; ++j) {
      if (pivot_size(y.c[j]) == 0) continue;
      const S prod = x.c[i] * y.c[j];
      for (int k = 0; k < 8; ++k) {
        const int s = tab[i][j][k];
        if (s == 1) r.c[k] += prod;
        else if (s == -1) r.c[k] -= prod;
      }
    }
  }
  return r;
}

/// q(x) = x x* (real part; the imaginary part vanishes identically).
template <class S> S oct_quad(const SplitOct<S>& x) {
  S v = x.c[0] * x.c[0];
  for (int t = 1; t < 4; ++t) v += x.c[t] * x.c[t];
  for (int t = 4; t < 8; ++t) v -= x.c[t] * x.c[t];
  return v;
}

} // namespace g2e

#endif
