#ifndef G2E_EIN_HPP
#define G2E_EIN_HPP

/// @file ein.hpp
/// Projective null geometry of the (2,3)-Einstein universe inside P(Im O'):
/// null lines and rays, transversality, annihilator planes with the rank-2
/// distribution, (S^1 x S^1 x R_+)-families of null lines, recovery of the
/// distinguished positive line of a (3,2)-plane, and the uniqueness check for
/// the orthogonal splitting that underlies those families.

#include "g2e/exact_linalg.hpp"
#include "g2e/imvector.hpp"
#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2e {

/// Canonical projective representative: scale so the largest-magnitude
/// coordinate equals +1 (first such coordinate breaks ties).
template <class S> ImVector<S> line_normalize(const ImVector<S>& v) {
  int best = -1;
  double mag = 0.0;
  for (int t = 0; t < 7; ++t) {
    const double m = pivot_size(v.c[t]);
    if (m > mag) { mag = m; best = t; }
  }
  if (best < 0) throw std::invalid_argument("line_normalize: zero vector");
  ImVector<S> r;
  for (int t = 0; t < 7; ++t) r.c[t] = v.c[t] / v.c[best];
  return r;
}

/// A point of the Einstein universe: a null line with canonical representative.
template <class S> struct NullLine {
  ImVector<S> rep;
  explicit NullLine(const ImVector<S>& v, double tol = 0.0) : rep(line_normalize(v)) {
    if constexpr (scalar_traits<S>::exact) {
      if (quad(rep) != 0) throw std::invalid_argument("NullLine: representative not null");
    } else {
      double n2 = 0;
      for (int t = 0; t < 7; ++t) n2 += pivot_size(rep.c[t]) * pivot_size(rep.c[t]);
      if (pivot_size(quad(rep)) > std::max(tol, 1e-12) * n2)
        throw std::invalid_argument("NullLine: representative not null");
    }
  }
  bool operator==(const NullLine& o) const { return rep == o.rep; }
};

/// A null ray: sign-sensitive, normalized to unit sup-norm by positive scaling.
template <class S> struct NullRay {
  ImVector<S> rep;
  explicit NullRay(const ImVector<S>& v) : rep(v) {
    double mag = 0.0;
    for (int t = 0; t < 7; ++t) mag = std::max(mag, pivot_size(v.c[t]));
    if (mag == 0.0) throw std::invalid_argument("NullRay: zero vector");
    if constexpr (!scalar_traits<S>::exact)
      for (int t = 0; t < 7; ++t) rep.c[t] = v.c[t] / mag;
  }
};

/// Two points of the Einstein universe are transverse iff their lifts pair
/// nontrivially under q.
template <class S>
bool transverse(const NullLine<S>& a, const NullLine<S>& b, double tol = 1e-10) {
  return pivot_size(quad_pair(a.rep, b.rep)) > (scalar_traits<S>::exact ? 0.0 : tol);
}

/// Annihilator plane of a null line plus the induced 2-plane Ann(l)/l
/// (the chart for the rank-2 distribution): returns the 3-vector annihilator
/// basis and a 2-vector complement of l inside it.
template <class S> struct AnnPlane {
  std::vector<ImVector<S>> plane;        ///< basis of Ann(l), all null
  std::vector<ImVector<S>> distribution; ///< 2-plane complement of l in Ann(l)
};

template <class S> AnnPlane<S> ann_plane(const NullLine<S>& l, double tol = 1e-10) {
  AnnPlane<S> out;
  out.plane = annihilator(l.rep);
  if (out.plane.size() != 3) throw std::invalid_argument("ann_plane: input not null");
  // Reduce mod l: zero the coordinate where l's canonical representative
  // peaks, then keep the two independent reductions.
  int piv = 0;
  double best = 0.0;
  for (int t = 0; t < 7; ++t)
    if (pivot_size(l.rep.c[t]) > best) { best = pivot_size(l.rep.c[t]); piv = t; }
  std::vector<ImVector<S>> reduced;
  for (const auto& v : out.plane) {
    ImVector<S> w = v - (v.c[piv] / l.rep.c[piv]) * l.rep;
    double mag = 0.0;
    for (int t = 0; t < 7; ++t) mag = std::max(mag, pivot_size(w.c[t]));
    if (mag > (scalar_traits<S>::exact ? 0.0 : tol)) reduced.push_back(w);
  }
  // Keep two independent ones (the third reduction is a combination).
  out.distribution.push_back(reduced.at(0));
  for (std::size_t t = 1; t < reduced.size() && out.distribution.size() < 2; ++t) {
    bool indep = false;
    const auto& a = out.distribution[0];
    const auto& b = reduced[t];
    for (int p = 0; p < 7 && !indep; ++p)
      for (int q_ = p + 1; q_ < 7 && !indep; ++q_)
        indep = pivot_size(a.c[p] * b.c[q_] - a.c[q_] * b.c[p]) >
                (scalar_traits<S>::exact ? 0.0 : tol);
    if (indep) out.distribution.push_back(b);
  }
  if (out.distribution.size() != 2)
    throw std::runtime_error("ann_plane: degenerate distribution reduction");
  return out;
}

/// An (S^1 x S^1 x R_+)-family record: unit-positive center x̂, ordered
/// orthonormal bases of the negative-definite plane T and the
/// positive-definite plane N.  The constructor Gram-Schmidt-normalizes the
/// given ordered bases (their orientation is part of the data) and validates
/// the closure relations cross(x̂, T) = T and cross(x̂, N) = N.
struct RTFamily {
  ImVector<double> xhat;
  ImVector<double> T1, T2;
  ImVector<double> N1, N2;

  RTFamily(const ImVector<double>& x, ImVector<double> t1, ImVector<double> t2,
           ImVector<double> n1, ImVector<double> n2, double tol = 1e-9)
      : xhat(x) {
    if (std::abs(quad(x) - 1.0) > tol) throw std::invalid_argument("RTFamily: q(xhat) != 1");
    auto unit = [&](ImVector<double> v, double sign) {
      const double q = quad(v);
      if (q * sign <= 0) throw std::invalid_argument("RTFamily: wrong plane signature");
      return (1.0 / std::sqrt(sign * q)) * v;
    };
    T1 = unit(t1, -1.0);
    t2 = t2 + quad_pair(t2, T1) * T1; // subtract (q(t2,T1)/q(T1,T1)) T1, q(T1,T1) = -1
    T2 = unit(t2, -1.0);
    N1 = unit(n1, +1.0);
    n2 = n2 - quad_pair(n2, N1) * N1;
    N2 = unit(n2, +1.0);
    const ImVector<double>* all[5] = {&xhat, &T1, &T2, &N1, &N2};
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b)
        if (std::abs(quad_pair(*all[a], *all[b])) > tol)
          throw std::invalid_argument("RTFamily: blocks not orthogonal");
    // Closure: cross(xhat, -) preserves the T and N planes.
    auto in_plane = [&](const ImVector<double>& v, const ImVector<double>& b1,
                        const ImVector<double>& b2, double sgn) {
      // component outside span(b1, b2); plane is definite of sign sgn
      ImVector<double> w =
          v - sgn * quad_pair(v, b1) * b1 - sgn * quad_pair(v, b2) * b2;
      double m = 0;
      for (int t = 0; t < 7; ++t) m = std::max(m, std::abs(w.c[t]));
      return m <= tol;
    };
    if (!in_plane(cross(xhat, T1), T1, T2, -1.0) || !in_plane(cross(xhat, T2), T1, T2, -1.0))
      throw std::invalid_argument("RTFamily: cross(xhat, T) leaves T");
    if (!in_plane(cross(xhat, N1), N1, N2, +1.0) || !in_plane(cross(xhat, N2), N1, N2, +1.0))
      throw std::invalid_argument("RTFamily: cross(xhat, N) leaves N");
  }

  /// The model family: x̂ = i, T = span(l, li), N = span(j, k).
  static RTFamily model() {
    using IV = ImVector<double>;
    return RTFamily(IV::basis(0), IV::basis(3), IV::basis(4), IV::basis(1), IV::basis(2));
  }
};

/// The family point [x̂ + sqrt(r^2+1) u_T(theta) + r u_N(alpha)].
inline NullRay<double> family_point(const RTFamily& f, double theta, double alpha, double r) {
  if (r <= 0) throw std::invalid_argument("family_point: r must be positive");
  const ImVector<double> ut = std::cos(theta) * f.T1 + std::sin(theta) * f.T2;
  const ImVector<double> un = std::cos(alpha) * f.N1 + std::sin(alpha) * f.N2;
  return NullRay<double>(f.xhat + std::sqrt(r * r + 1.0) * ut + r * un);
}

struct FamilyCoords {
  bool member = false;
  double a = 0, r = 0, theta = 0, alpha = 0; ///< valid when member
};

/// Membership of a null line in the family: the lift must lie in
/// U = R x̂ + T + N with nonzero projections onto the line, T, and N.
inline FamilyCoords family_membership(const RTFamily& f, const NullLine<double>& l,
                                      double tol = 1e-9) {
  const ImVector<double>& P = l.rep;
  FamilyCoords out;
  const double a = quad_pair(P, f.xhat);
  const double t1 = -quad_pair(P, f.T1), t2 = -quad_pair(P, f.T2);
  const double n1 = quad_pair(P, f.N1), n2 = quad_pair(P, f.N2);
  const ImVector<double> resid =
      P - a * f.xhat - t1 * f.T1 - t2 * f.T2 - n1 * f.N1 - n2 * f.N2;
  double rm = 0, pm = 0;
  for (int t = 0; t < 7; ++t) {
    rm = std::max(rm, std::abs(resid.c[t]));
    pm = std::max(pm, std::abs(P.c[t]));
  }
  if (rm > tol * pm) return out; // not in U
  const double tn = std::hypot(t1, t2), nn = std::hypot(n1, n2);
  if (std::abs(a) <= tol * pm || nn <= tol * pm) return out; // vanishing projection
  out.member = true;
  out.a = a;
  out.r = nn / std::abs(a);
  out.theta = std::atan2(t2 / a, t1 / a);
  out.alpha = std::atan2(n2 / a, n1 / a);
  (void)tn;
  return out;
}

/// Result of recovering the distinguished positive line of a (3,2)-plane.
template <class S> struct RecoveredLine {
  ImVector<S> rep; ///< q(rep) > 0, normalized projectively
};

/// Exact route: the unique [v] in P(U) with v x U inside U, computed as the
/// kernel of the stacked map v -> proj_{U-perp}(v x u_i).
RecoveredLine<Rat> recover_line(const std::vector<ImVector<Rat>>& U);
/// Float route (SVD kernel, relative threshold 1e-10).
RecoveredLine<double> recover_line(const std::vector<ImVector<double>>& U);

struct SplittingWitness {
  double c1, c2;                ///< hyperbolic mixing parameters, c2^2 - c1^2 = 1
  ImVector<double> point;       ///< null lift in the alternative family
  bool outside_original = false; ///< not a member of the original family
  bool alt_valid = false;        ///< is a genuine point of the mixed family
};

struct SplittingReport {
  std::vector<SplittingWitness> witnesses;
  bool all_found = false;
};

/// For `trials` random hyperbolic mixes of T and N, exhibits a point of the
/// mixed family that the original family misses (uniqueness of the splitting).
SplittingReport verify_unique_splitting(const RTFamily& f, int trials,
                                        std::uint64_t seed);

} // namespace g2e

#endif
