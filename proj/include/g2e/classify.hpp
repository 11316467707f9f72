#ifndef G2E_CLASSIFY_HPP
#define G2E_CLASSIFY_HPP

/// @file classify.hpp
/// Root-pattern classification of null sextics: membership in the complement
/// set K (a real root of multiplicity >= 4), its five strata, the sector
/// count by conjugate root pairs, and the predicted number of preimages under
/// the developed-fiber map, plus a brute-force preimage search oracle.
///
/// Exact rational inputs are factored with gcd-based squarefree decomposition
/// (Yun) and Sturm-sequence real-root counts; float inputs use
/// companion-matrix eigenvalues with cluster tolerance 1e-8.

#include "g2e/curve.hpp"
#include "g2e/sextic.hpp"
#include <vector>

namespace g2e {

/// Univariate polynomial over Rat, ascending coefficients c0 + c1 z + ...
using PolyQ = std::vector<Rat>;

PolyQ poly_trim(PolyQ p);
int poly_deg(const PolyQ& p); ///< -1 for the zero polynomial
PolyQ poly_deriv(const PolyQ& p);
/// Remainder of a by b (b nonzero).
PolyQ poly_rem(PolyQ a, const PolyQ& b);
/// Monic gcd.
PolyQ poly_gcd(PolyQ a, PolyQ b);
/// Yun squarefree decomposition: returns (factor, multiplicity) pairs with
/// every factor monic, squarefree, pairwise coprime, and the product of
/// factor^multiplicity equal to the monic input.
std::vector<std::pair<PolyQ, int>> squarefree_decompose(PolyQ p);
/// Number of distinct real roots of a squarefree polynomial (Sturm).
int sturm_real_roots(const PolyQ& p);

/// One real or conjugate-pair root class of a sextic.
struct RootClass {
  bool real = false;
  int mult = 0;
  bool at_infinity = false; ///< the [1:0] root (factor Y)
};

/// Classification record for a (null) sextic.
struct SexticClass {
  bool gw_member = false;     ///< some real root has multiplicity >= 4
  int k_stratum = 0;          ///< 0 = none, else 1..5
  int omega_sector = -1;      ///< -1 = none, else 0..3
  int predicted_preimages = 0;
  std::vector<RootClass> roots;
};

SexticClass sextic_classify(const BinForm<Rat>& P);
SexticClass sextic_classify(const BinForm<double>& P, double cluster_tol = 1e-8);

/// Complete a null sextic from its tail: given (p1..p6) with p6 != 0, solves
/// Q6(P, P) = 0 for p0.
BinForm<Rat> null_complete(const std::array<Rat, 6>& tail);

/// One validated preimage of [P] under the developed-fiber map.
struct PreimageHit {
  double x = 0, y = 0, theta = 0, alpha = 0, r = 0;
  double residual = 0; ///< projective distance between dev(..) and [P]
};

/// Brute-force inversion oracle: candidate base points from the conjugate
/// root pairs of P (exhaustive, since divisibility by the base quadratic is
/// equivalent to a root pair), fiber coordinates recovered by least squares
/// against the tangent/normal frame, each candidate confirmed by evaluating
/// the developing map to tolerance `tol`.  Recovery and confirmation run in
/// a Moebius-normalized chart centered at i (the chart map has real positive
/// derivative, so the fiber angles and r transport unchanged); this keeps the
/// projections well conditioned for base points with tiny imaginary part.
std::vector<PreimageHit> preimage_search(const BinForm<double>& P, double tol = 1e-6);

} // namespace g2e

#endif
