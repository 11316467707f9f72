#ifndef G2E_EXACT_LINALG_HPP
#define G2E_EXACT_LINALG_HPP

/// @file exact_linalg.hpp
/// Dense linear algebra over exact rationals: reduced row echelon form,
/// kernel, rank, column-space intersection, and the signature of a symmetric
/// bilinear form via congruence diagonalization.  Everything here is exact;
/// float inputs take the SVD paths in the consuming modules instead.

#include "g2e/scalar.hpp"
#include <utility>
#include <vector>

namespace g2e {

using VecQ = std::vector<Rat>;
using MatQ = std::vector<VecQ>; ///< row-major, rows of equal length

/// In-place reduced row echelon form; returns the pivot column list.
inline std::vector<int> rref(MatQ& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    const Rat pv = m[r][c];
    for (auto& x : m[r]) x /= pv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rat f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(MatQ m) { return static_cast<int>(rref(m).size()); }

/// Basis of the kernel of m (viewed as a linear map on column vectors),
/// returned in the deterministic order induced by the free columns of the
/// reduced row echelon form.
inline std::vector<VecQ> kernel(MatQ m) {
  if (m.empty()) return {};
  const int cols = static_cast<int>(m[0].size());
  const std::vector<int> piv = rref(m);
  std::vector<bool> is_piv(cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<VecQ> basis;
  for (int fc = 0; fc < cols; ++fc) {
    if (is_piv[fc]) continue;
    VecQ v(cols, Rat(0));
    v[fc] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Intersection of the column spans of A and B (each given as a list of
/// vectors of common dimension); returns a basis of span(A) `cap` span(B).
inline std::vector<VecQ> span_intersect(const std::vector<VecQ>& A,
                                        const std::vector<VecQ>& B) {
  if (A.empty() || B.empty()) return {};
  const int dim = static_cast<int>(A[0].size());
  const int na = static_cast<int>(A.size()), nb = static_cast<int>(B.size());
  // Solve A s = B t: kernel of the dim x (na+nb) matrix [A | -B].
  MatQ m(dim, VecQ(na + nb, Rat(0)));
  for (int r = 0; r < dim; ++r) {
    for (int i = 0; i < na; ++i) m[r][i] = A[i][r];
    for (int j = 0; j < nb; ++j) m[r][na + j] = -B[j][r];
  }
  std::vector<VecQ> out;
  for (const VecQ& k : kernel(std::move(m))) {
    VecQ w(dim, Rat(0));
    for (int i = 0; i < na; ++i)
      for (int r = 0; r < dim; ++r) w[r] += k[i] * A[i][r];
    bool nonzero = false;
    for (const Rat& x : w) nonzero = nonzero || x != 0;
    if (nonzero) out.push_back(std::move(w));
  }
  return out;
}

struct Signature {
  int pos = 0, neg = 0, zero = 0;
  bool operator==(const Signature& o) const {
    return pos == o.pos && neg == o.neg && zero == o.zero;
  }
};

/// Signature of a symmetric rational Gram matrix via congruence
/// diagonalization (symmetric row+column operations; exact).
inline Signature gram_signature(MatQ g) {
  const int n = static_cast<int>(g.size());
  Signature sig;
  int k = 0;
  while (k < n) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (g[i][i] != 0) { p = i; break; }
    if (p < 0) {
      // No nonzero diagonal: create one from an off-diagonal entry
      // (rows/cols i += j preserves congruence class).
      int oi = -1, oj = -1;
      for (int i = k; i < n && oi < 0; ++i)
        for (int j = i + 1; j < n; ++j)
          if (g[i][j] != 0) { oi = i; oj = j; break; }
      if (oi < 0) { sig.zero += n - k; break; }
      for (int m = 0; m < n; ++m) g[oi][m] += g[oj][m];
      for (int m = 0; m < n; ++m) g[m][oi] += g[m][oj];
      continue;
    }
    if (p != k) {
      std::swap(g[k], g[p]);
      for (int m = 0; m < n; ++m) std::swap(g[m][k], g[m][p]);
    }
    const Rat d = g[k][k];
    (d > 0 ? sig.pos : sig.neg) += 1;
    for (int i = k + 1; i < n; ++i) {
      if (g[i][k] == 0) continue;
      const Rat f = g[i][k] / d;
      for (int m = 0; m < n; ++m) g[i][m] -= f * g[k][m];
      for (int m = 0; m < n; ++m) g[m][i] -= f * g[m][k];
    }
    ++k;
  }
  return sig;
}

} // namespace g2e

#endif
