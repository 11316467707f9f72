#ifndef G2E_CURVE_HPP
#define G2E_CURVE_HPP

/// @file curve.hpp
/// The explicit equivariant almost-complex curve over the upper half-plane:
/// the unit quadratic ĝ(z), its Veronese cube f̂ = c ĝ³, the Frenet frame with
/// second fundamental form, the developing map with its rank diagnostics, the
/// r→0 / r→∞ limit maps, osculating-plane intersections, and the
/// degenerate-set analysis of the fiber circles.
///
/// Exactness: ĝ and all of its partials have coefficients that are rational
/// in (x, y, 1/y), so every polynomial operation below is exact over Rat; the
/// square-root normalizations (√2, √5/4, unit frames) are applied last in
/// floats.

#include "g2e/ein.hpp"
#include "g2e/g2basis.hpp"
#include "g2e/sextic.hpp"
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace g2e {

/// Upper half-plane point z = x + i y.
template <class S> struct HPoint {
  S x, y;
  HPoint(const S& x_, const S& y_) : x(x_), y(y_) {
    if (!(to_double(y) > 0)) throw std::invalid_argument("HPoint: y must be positive");
  }
};

/// Quadratic binary form in the basis (X^2, XY, Y^2) with the pairing
/// Q2 of Gram matrix [[0,0,1],[0,-1/2,0],[1,0,0]].
template <class S> using Quadratic = std::array<S, 3>;

template <class S> S q2_pair(const Quadratic<S>& a, const Quadratic<S>& b) {
  return a[0] * b[2] + a[2] * b[0] - a[1] * b[1] / S(2);
}

/// Unnormalized core quadratic G = sqrt(2) ĝ = ((x²+y²)/y) X² + (2x/y) XY +
/// (1/y) Y² and its closed-form partials; exact for rational (x, y).
template <class S> BinForm<S> curve_g(const HPoint<S>& p) {
  return {(p.x * p.x + p.y * p.y) / p.y, S(2) * p.x / p.y, S(1) / p.y};
}
template <class S> BinForm<S> curve_gx(const HPoint<S>& p) {
  return {S(2) * p.x / p.y, S(2) / p.y, S(0)};
}
template <class S> BinForm<S> curve_gy(const HPoint<S>& p) {
  return {S(1) - p.x * p.x / (p.y * p.y), S(-2) * p.x / (p.y * p.y),
          S(-1) / (p.y * p.y)};
}
template <class S> BinForm<S> curve_gxx(const HPoint<S>& p) {
  return {S(2) / p.y, S(0), S(0)};
}
template <class S> BinForm<S> curve_gxy(const HPoint<S>& p) {
  return {S(-2) * p.x / (p.y * p.y), S(-2) / (p.y * p.y), S(0)};
}
template <class S> BinForm<S> curve_gyy(const HPoint<S>& p) {
  const S y3 = p.y * p.y * p.y;
  return {S(2) * p.x * p.x / y3, S(4) * p.x / y3, S(2) / y3};
}

/// G³ and its partials (exact sextics; f̂ = (√5/4) G³).
template <class S> BinForm<S> curve_F(const HPoint<S>& p) {
  const auto g = curve_g(p);
  return bf_mul(bf_mul(g, g), g);
}
template <class S> BinForm<S> curve_Fx(const HPoint<S>& p) {
  const auto g = curve_g(p);
  return bf_scale(S(3), bf_mul(bf_mul(g, g), curve_gx(p)));
}
template <class S> BinForm<S> curve_Fy(const HPoint<S>& p) {
  const auto g = curve_g(p);
  return bf_scale(S(3), bf_mul(bf_mul(g, g), curve_gy(p)));
}
template <class S> BinForm<S> curve_Fxx(const HPoint<S>& p) {
  const auto g = curve_g(p);
  const auto gx = curve_gx(p);
  return bf_add(bf_scale(S(6), bf_mul(g, bf_mul(gx, gx))),
                bf_scale(S(3), bf_mul(bf_mul(g, g), curve_gxx(p))));
}
template <class S> BinForm<S> curve_Fxy(const HPoint<S>& p) {
  const auto g = curve_g(p);
  const auto gx = curve_gx(p);
  const auto gy = curve_gy(p);
  return bf_add(bf_scale(S(6), bf_mul(g, bf_mul(gx, gy))),
                bf_scale(S(3), bf_mul(bf_mul(g, g), curve_gxy(p))));
}
template <class S> BinForm<S> curve_Fyy(const HPoint<S>& p) {
  const auto g = curve_g(p);
  const auto gy = curve_gy(p);
  return bf_add(bf_scale(S(6), bf_mul(g, bf_mul(gy, gy))),
                bf_scale(S(3), bf_mul(bf_mul(g, g), curve_gyy(p))));
}

/// The unit quadratic ĝ(z) = G/√2 (Q2(ĝ) = +1) and its partials.
Quadratic<double> g_hat(const HPoint<double>& p);
Quadratic<double> g_hat_x(const HPoint<double>& p);
Quadratic<double> g_hat_y(const HPoint<double>& p);

/// The unit sextic f̂ = (√5/4) G³ (Q6(f̂) = +1).
BinForm<double> f_hat(const HPoint<double>& p);

/// Q6-orthogonal projection of v against a Q6-orthogonal basis.
template <class S>
BinForm<S> q6_project_out(BinForm<S> v, const std::vector<BinForm<S>>& basis) {
  for (const auto& b : basis) {
    const S c = q6_pair(v, b) / q6_pair(b, b);
    v = bf_add(v, bf_scale(S(-c), b));
  }
  return v;
}

/// Q6-Gram-Schmidt (no normalization; keeps exactness).
template <class S> std::vector<BinForm<S>> q6_orth(const std::vector<BinForm<S>>& vs) {
  std::vector<BinForm<S>> out;
  for (const auto& v : vs) {
    BinForm<S> w = q6_project_out(v, out);
    if (pivot_size(q6(w)) == 0)
      throw std::invalid_argument("q6_orth: degenerate vector in Gram-Schmidt");
    out.push_back(std::move(w));
  }
  return out;
}

/// Exact Frenet directions at a rational point: spans of the line, tangent,
/// normal, and binormal blocks, unnormalized (the norms are rational, the
/// unit scalings are not).
struct FrenetExact {
  BinForm<Rat> f;          ///< G³ (q > 0)
  BinForm<Rat> t1, t2;     ///< tangent block, Q6-orthogonalized (q < 0)
  BinForm<Rat> n1, n2;     ///< II(dx,dy) and II(dx,dx) directions (q > 0)
  BinForm<Rat> b1, b2;     ///< binormal block (q < 0)
};
FrenetExact frenet_exact(const HPoint<Rat>& p);

/// Float Frenet frame: every generator normalized to q = ±1 with the leading
/// nonzero coefficient positive; plus the raw (f̂-scaled) second fundamental
/// form projections.
struct FrenetFrame {
  BinForm<double> f;
  BinForm<double> t1, t2; ///< q = -1 each
  BinForm<double> n1, n2; ///< q = +1 each
  BinForm<double> b1, b2; ///< q = -1 each
  BinForm<double> ii_xx, ii_xy, ii_yy; ///< unnormalized projections of f̂'s 2-jet
};
FrenetFrame frenet(const HPoint<double>& p);

/// Normalize a float sextic to |Q6| = 1 with positive leading coefficient.
BinForm<double> q6_unit(const BinForm<double>& v);

/// Monomial-coordinate 7-vector to M-imaginary coordinates (basis bridge).
ImVector<double> sextic_to_im(const BinForm<double>& p);

/// Developing map: dev(p, θ, α, r) = [f̂ + √(r²+1) û(θ) + r ÎI(û(θ), v̂(α))]
/// with û the unit tangent at angle θ and ÎI the unit normal projection of
/// the second fundamental form.  Returns the null lift in monomial
/// coordinates, sup-normalized.
BinForm<double> dev(const HPoint<double>& p, double theta, double alpha, double r);

/// Smallest singular value of the developing map's 5-parameter Jacobian in an
/// orthonormal affine chart at the image (central differences, step 1e-5).
double dev_rank(const HPoint<double>& p, double theta, double alpha, double r,
                double step = 1e-5);

/// r→0 limit map σ0(p, u) = [f̂ + û(θ)].
BinForm<double> sigma0(const HPoint<double>& p, double theta);

/// r→∞ limit map σ∞(p, u, v) = [û + ÎI(û, v̂)/q(ÎI(û, v̂))] (float route).
BinForm<double> sigma_inf(const HPoint<double>& p, double theta, double alpha);

/// Exact r→∞ limit line over the field Q(√m): the line is
/// [u_part + √m · ii_part] with m = -Q6(u_part) > 0.  Tangent directions are
/// given by exact coefficient pairs u = cu·F_x + su·F_y (v likewise), which
/// keeps the two-to-one symmetry decidable exactly.
struct SigmaInfExact {
  BinForm<Rat> u_part;  ///< the (unnormalized) tangent vector
  BinForm<Rat> ii_part; ///< II(u,v)/Q6(II(u,v)), rational
  Rat m;                ///< -Q6(u_part)
};
SigmaInfExact sigma_inf_exact(const HPoint<Rat>& p, const Rat& cu, const Rat& su,
                              const Rat& cv, const Rat& sv);

/// Exact equality of two SigmaInfExact lines in P(Q(√m)^7).
bool sigma_inf_same_line(const SigmaInfExact& a, const SigmaInfExact& b);

/// Osculating 5-plane U_p = {sextics divisible by G(p)} and exact
/// intersection data for a pair of points.
std::vector<BinForm<Rat>> osculating_basis(const HPoint<Rat>& p);
struct OsculatingIntersection {
  int dim = 0;
  Signature sig;
  std::vector<BinForm<Rat>> basis;
};
OsculatingIntersection osculating_intersect(const HPoint<Rat>& p, const HPoint<Rat>& q);

/// Degenerate-set analysis for the fiber pair over i and t·i (t > 0, t ≠ 1):
/// w = P1·P_t·((3+t²)X² − (1+3t²)Y²) with P1 = X²+Y², P_t = t²X²+Y² spans the
/// spacelike direction of W = (T⊕N at i) ∩ U_{ti}; Q6(w) must equal
/// (4/15)(3 − 24t² − 86t⁴ − 24t⁶ + 3t⁸) exactly and its sign predicts the
/// number of null lines in P(W): positive → 2, zero → 1, negative → 0.
struct FiberDegenerate {
  Rat q6_w;        ///< direct Gram evaluation
  Rat closed_form; ///< the degree-8 polynomial value
  int count = 0;   ///< predicted |P Q0(W)|
  BinForm<Rat> w, u; ///< the spanning pair of W (Q6(w,u) = 0, Q6(u) < 0)
};
FiberDegenerate fiber_degenerate_set(const Rat& t);

/// Brute-force companion: parameterize the null circle of U_i ∩ U_{ti}
/// (signature (1,2)) and count the parameter clusters where the null vector
/// falls into the 2-plane W at tolerance `tol`.
int fiber_circle_count(const Rat& t, double tol = 1e-8);

/// Certificate for the degenerate-locus membership identity
/// (X²+Y²)Y⁴ = (3/8)(X²+Y²)³ − (1/2)(X⁶+X⁴Y²−X²Y⁴−Y⁶)
///           + (1/8)(X⁶−5X⁴Y²−5X²Y⁴+Y⁶).
struct K5Witness {
  std::array<Rat, 3> coeffs; ///< (3/8, -1/2, 1/8)
  BinForm<Rat> residual;     ///< lhs - rhs, must be identically zero
  bool exact = false;
};
K5Witness k5_witness();

} // namespace g2e

#endif
