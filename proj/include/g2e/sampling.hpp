#ifndef G2E_SAMPLING_HPP
#define G2E_SAMPLING_HPP

/// @file sampling.hpp
/// Seeded random sample generators shared by the CLI verification suites and
/// the acceptance gate: rational imaginary vectors, rational null vectors,
/// conditioned Moebius transformations, and half-plane sample points.

#include "g2e/curve.hpp"
#include "g2e/imvector.hpp"
#include "g2e/rng.hpp"
#include "g2e/sextic.hpp"

namespace g2e {

inline ImVector<Rat> sample_im(SplitMix64& rng) {
  ImVector<Rat> v;
  for (int t = 0; t < 7; ++t) v.c[t] = rng.rat(9, 5);
  return v;
}

/// Random rational null vector, built from two Pythagorean pairs:
/// (a^2+b^2)^2 = (a^2-b^2)^2 + (2ab)^2 makes each block-pair cancel in q.
/// Slots inside the positive and negative blocks are then shuffled and signed
/// randomly for coordinate variety.
inline ImVector<Rat> sample_null(SplitMix64& rng) {
  for (;;) {
    const Rat a = rng.rat_nonzero(9, 5), b = rng.rat_nonzero(9, 5);
    const Rat c = rng.rat(9, 5), d = rng.rat(9, 5);
    Rat pos[3] = {a * a - b * b, 2 * a * b, c * c + d * d};
    Rat neg[4] = {a * a + b * b, c * c - d * d, 2 * c * d, Rat(0)};
    for (int t = 2; t > 0; --t) std::swap(pos[t], pos[rng.uniform_int(0, t)]);
    for (int t = 3; t > 0; --t) std::swap(neg[t], neg[rng.uniform_int(0, t)]);
    ImVector<Rat> w;
    for (int t = 0; t < 3; ++t) w.c[t] = rng.uniform_int(0, 1) ? pos[t] : -pos[t];
    for (int t = 0; t < 4; ++t) w.c[3 + t] = rng.uniform_int(0, 1) ? neg[t] : -neg[t];
    if (quad(w) != 0 || w.is_zero()) continue;
    return w;
  }
}

/// Moebius transformation with entries in [-1.5, 1.5] conditioned on
/// det >= 1/4, then normalized to det = 1.
inline Moebius<double> sample_moebius(SplitMix64& rng) {
  for (;;) {
    const double a = rng.uniform(-1.5, 1.5), b = rng.uniform(-1.5, 1.5),
                 c = rng.uniform(-1.5, 1.5), d = rng.uniform(-1.5, 1.5);
    const double det = a * d - b * c;
    if (det < 0.25) continue;
    const double s = std::sqrt(det);
    return Moebius<double>(a / s, b / s, c / s, d / s);
  }
}

/// Well-conditioned random Stiefel triple for the frame completion:
/// q(x) = q(y) = 1 = -q(z), pairwise q-orthogonal, z orthogonal to x X y.
/// Returns false (rejection) when an intermediate q-norm falls under 0.05.
inline bool sample_triple(SplitMix64& rng, ImVector<double>& x, ImVector<double>& y,
                          ImVector<double>& z) {
  auto rnd = [&] {
    ImVector<double> v;
    for (int t = 0; t < 7; ++t) v.c[t] = rng.uniform(-1, 1);
    return v;
  };
  x = rnd();
  if (quad(x) < 0.05) return false;
  x = (1.0 / std::sqrt(quad(x))) * x;
  y = rnd();
  y = y - quad_pair(y, x) * x;
  if (quad(y) < 0.05) return false;
  y = (1.0 / std::sqrt(quad(y))) * y;
  z = rnd();
  const ImVector<double> xy = cross(x, y);
  // q(x X y) = +1 for a unit orthogonal spacelike pair, so plain coefficients.
  z = z - quad_pair(z, x) * x - quad_pair(z, y) * y - quad_pair(z, xy) * xy;
  if (quad(z) > -0.05) return false;
  z = (1.0 / std::sqrt(-quad(z))) * z;
  return true;
}

/// Half-plane sample in the pinned well-conditioned window
/// x in [-1, 1], y in [1/2, 2].
inline HPoint<double> sample_hpoint(SplitMix64& rng) {
  return HPoint<double>(rng.uniform(-1.0, 1.0), rng.uniform(0.5, 2.0));
}

/// Rational variant of the pinned window.
inline HPoint<Rat> sample_hpoint_rat(SplitMix64& rng) {
  for (;;) {
    const Rat x = rng.rat(4, 4);
    const Rat y = Rat(rng.uniform_int(2, 8), 4);
    if (x >= -1 && x <= 1) return HPoint<Rat>(x, y);
  }
}

} // namespace g2e

#endif
