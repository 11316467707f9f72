/// Null-sextic classification: exact squarefree/Sturm route, float
/// companion-matrix route, and the brute-force preimage oracle.

#include "g2e/classify.hpp"
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

namespace g2e {

PolyQ poly_trim(PolyQ p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int poly_deg(const PolyQ& p) {
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
    if (p[k] != 0) return k;
  return -1;
}

PolyQ poly_deriv(const PolyQ& p) {
  PolyQ r;
  for (std::size_t k = 1; k < p.size(); ++k) r.push_back(Rat(k) * p[k]);
  return poly_trim(r);
}

PolyQ poly_rem(PolyQ a, const PolyQ& b) {
  const int db = poly_deg(b);
  if (db < 0) throw std::invalid_argument("poly_rem: division by zero polynomial");
  a = poly_trim(a);
  while (poly_deg(a) >= db) {
    const int da = poly_deg(a);
    const Rat f = a[da] / b[db];
    for (int k = 0; k <= db; ++k) a[da - db + k] -= f * b[k];
    a = poly_trim(a);
  }
  return a;
}

namespace {
PolyQ poly_monic(PolyQ p) {
  const int d = poly_deg(p);
  if (d < 0) return p;
  const Rat lead = p[d];
  for (auto& c : p) c /= lead;
  return poly_trim(p);
}

PolyQ poly_div_exact(PolyQ a, const PolyQ& b) {
  // quotient of an exact division
  const int db = poly_deg(b);
  a = poly_trim(a);
  const int da = poly_deg(a);
  if (da < db) return {};
  PolyQ q(da - db + 1, Rat(0));
  while (poly_deg(a) >= db) {
    const int d = poly_deg(a);
    const Rat f = a[d] / b[db];
    q[d - db] = f;
    for (int k = 0; k <= db; ++k) a[d - db + k] -= f * b[k];
    a = poly_trim(a);
  }
  return q;
}
} // namespace

PolyQ poly_gcd(PolyQ a, PolyQ b) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (poly_deg(b) >= 0) {
    PolyQ r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(std::move(a));
}

std::vector<std::pair<PolyQ, int>> squarefree_decompose(PolyQ p) {
  std::vector<std::pair<PolyQ, int>> out;
  p = poly_monic(poly_trim(std::move(p)));
  if (poly_deg(p) <= 0) return out;
  // Yun's algorithm
  PolyQ dp = poly_deriv(p);
  PolyQ a = poly_gcd(p, dp);
  PolyQ b = poly_div_exact(p, a);
  PolyQ c = poly_div_exact(dp, a);
  int mult = 1;
  while (poly_deg(b) > 0) {
    // d = c - b'
    PolyQ bp = poly_deriv(b);
    PolyQ d(std::max(c.size(), bp.size()), Rat(0));
    for (std::size_t k = 0; k < c.size(); ++k) d[k] += c[k];
    for (std::size_t k = 0; k < bp.size(); ++k) d[k] -= bp[k];
    d = poly_trim(d);
    PolyQ g = poly_gcd(b, d);
    if (poly_deg(g) > 0) out.emplace_back(g, mult);
    b = poly_div_exact(b, g.empty() ? PolyQ{Rat(1)} : g);
    c = poly_div_exact(d, g.empty() ? PolyQ{Rat(1)} : g);
    ++mult;
  }
  return out;
}

namespace {
int sign_of(const Rat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

/// Sign changes in the Sturm chain leading coefficients toward +inf or -inf.
int sturm_variations(const std::vector<PolyQ>& chain, int dir) {
  int last = 0, var = 0;
  for (const auto& p : chain) {
    const int d = poly_deg(p);
    if (d < 0) continue;
    int s = sign_of(p[d]);
    if (dir < 0 && d % 2 == 1) s = -s;
    if (last != 0 && s != 0 && s != last) ++var;
    if (s != 0) last = s;
  }
  return var;
}
} // namespace

int sturm_real_roots(const PolyQ& p0) {
  PolyQ p = poly_trim(p0);
  if (poly_deg(p) <= 0) return 0;
  std::vector<PolyQ> chain = {p, poly_deriv(p)};
  while (poly_deg(chain.back()) > 0) {
    PolyQ r = poly_rem(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    if (poly_deg(r) < 0) break;
    chain.push_back(poly_trim(std::move(r)));
  }
  return sturm_variations(chain, -1) - sturm_variations(chain, +1);
}

namespace {

/// Shared combinatorial step once the root classes are known.
void classify_from_roots(SexticClass& out) {
  int max_real_mult = 0;
  bool all_real_simple = true;
  int distinct_pairs = 0, simple_pairs = 0;
  int second_block_real_double = 0, second_block_real_simple = 0,
      second_block_pairs = 0;
  for (const auto& rc : out.roots) {
    if (rc.real) {
      max_real_mult = std::max(max_real_mult, rc.mult);
      if (rc.mult != 1) all_real_simple = false;
    } else {
      ++distinct_pairs;
      if (rc.mult == 1) ++simple_pairs;
    }
  }
  out.gw_member = max_real_mult >= 4;
  out.predicted_preimages = simple_pairs;
  if (out.gw_member) {
    out.predicted_preimages = (max_real_mult == 4 && distinct_pairs == 1) ? 1 : 0;
    // stratum from the complementary quadratic block
    for (const auto& rc : out.roots) {
      if (rc.real && rc.mult == max_real_mult) continue;
      if (rc.real && rc.mult == 2) ++second_block_real_double;
      else if (rc.real && rc.mult == 1) ++second_block_real_simple;
      else if (!rc.real) ++second_block_pairs;
    }
    if (max_real_mult == 6) out.k_stratum = 1;
    else if (max_real_mult == 5) out.k_stratum = 2;
    else if (second_block_real_double == 1) out.k_stratum = 3;
    else if (second_block_real_simple == 2) out.k_stratum = 4;
    else if (second_block_pairs == 1) out.k_stratum = 5;
    out.omega_sector = -1;
  } else {
    out.k_stratum = 0;
    out.omega_sector = all_real_simple ? distinct_pairs : -1;
  }
}

} // namespace

SexticClass sextic_classify(const BinForm<Rat>& P) {
  if (P.size() != 7) throw std::invalid_argument("sextic_classify: need a sextic");
  if (bf_is_zero(P)) throw std::invalid_argument("sextic_classify: zero polynomial");
  SexticClass out;
  // Univariate p(z) with z = X/Y: ascending coefficients are the reversed
  // X^{6-k}Y^k list; the Y-multiplicity (root at infinity) is the number of
  // vanishing leading coefficients.
  PolyQ p(7);
  for (int k = 0; k < 7; ++k) p[k] = P[6 - k];
  p = poly_trim(std::move(p));
  const int inf_mult = 6 - poly_deg(p);
  if (inf_mult > 0) out.roots.push_back({true, inf_mult, true});
  for (const auto& [f, mult] : squarefree_decompose(p)) {
    const int nreal = sturm_real_roots(f);
    const int npairs = (poly_deg(f) - nreal) / 2;
    for (int k = 0; k < nreal; ++k) out.roots.push_back({true, mult, false});
    for (int k = 0; k < npairs; ++k) out.roots.push_back({false, mult, false});
  }
  classify_from_roots(out);
  return out;
}

SexticClass sextic_classify(const BinForm<double>& P, double cluster_tol) {
  if (P.size() != 7) throw std::invalid_argument("sextic_classify: need a sextic");
  double mx = 0;
  for (double c : P) mx = std::max(mx, std::abs(c));
  if (mx == 0) throw std::invalid_argument("sextic_classify: zero polynomial");
  SexticClass out;
  // descending coefficients P[0] z^6 + ... + P[6]
  int lead = 0;
  while (lead < 6 && std::abs(P[lead]) <= 1e-12 * mx) ++lead;
  if (lead > 0) out.roots.push_back({true, lead, true});
  const int deg = 6 - lead;
  std::vector<std::complex<double>> roots;
  if (deg > 0) {
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
    for (int k = 0; k < deg; ++k) C(0, k) = -P[lead + 1 + k] / P[lead];
    for (int k = 1; k < deg; ++k) C(k, k - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(C);
    for (int k = 0; k < deg; ++k) roots.push_back(es.eigenvalues()(k));
  }
  // cluster
  std::vector<bool> used(roots.size(), false);
  std::vector<std::pair<std::complex<double>, int>> clusters;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    std::complex<double> sum = roots[i];
    int n = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      const double scale = std::max(1.0, std::abs(roots[i]));
      if (std::abs(roots[j] - roots[i]) <= cluster_tol * scale) {
        sum += roots[j];
        ++n;
        used[j] = true;
      }
    }
    clusters.emplace_back(sum / double(n), n);
  }
  // pair conjugates / mark reals
  std::vector<bool> taken(clusters.size(), false);
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (taken[i]) continue;
    const auto [z, n] = clusters[i];
    const double scale = std::max(1.0, std::abs(z));
    if (std::abs(z.imag()) <= cluster_tol * scale) {
      out.roots.push_back({true, n, false});
      taken[i] = true;
      continue;
    }
    if (z.imag() < 0) continue; // handled from the + side
    for (std::size_t j = 0; j < clusters.size(); ++j) {
      if (j == i || taken[j]) continue;
      if (std::abs(clusters[j].first - std::conj(z)) <= cluster_tol * scale &&
          clusters[j].second == n) {
        out.roots.push_back({false, n, false});
        taken[i] = taken[j] = true;
        break;
      }
    }
  }
  // any unmatched genuinely-complex cluster in the upper half plane still
  // represents a conjugate pair (its mirror clustered slightly differently)
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const auto [z, n] = clusters[i];
    if (!taken[i] && z.imag() > cluster_tol * std::max(1.0, std::abs(z)))
      out.roots.push_back({false, n, false});
  }
  classify_from_roots(out);
  return out;
}

BinForm<Rat> null_complete(const std::array<Rat, 6>& tail) {
  if (tail[5] == 0) throw std::invalid_argument("null_complete: p6 must be nonzero");
  const Rat &p1 = tail[0], &p2 = tail[1], &p3 = tail[2], &p4 = tail[3],
            &p5 = tail[4], &p6 = tail[5];
  const Rat p0 = (Rat(1, 3) * p1 * p5 - Rat(2, 15) * p2 * p4 + Rat(1, 20) * p3 * p3) /
                 (2 * p6);
  return {p0, p1, p2, p3, p4, p5, p6};
}

namespace {

double sup_norm(const BinForm<double>& p) {
  double m = 0;
  for (double x : p) m = std::max(m, std::abs(x));
  return m;
}

/// Projective sup distance between two sup-normalized sextics (up to sign).
double proj_dist(const BinForm<double>& a, const BinForm<double>& b) {
  double dp = 0, dm = 0;
  for (int k = 0; k < 7; ++k) {
    dp = std::max(dp, std::abs(a[k] - b[k]));
    dm = std::max(dm, std::abs(a[k] + b[k]));
  }
  return std::min(dp, dm);
}

/// Gauss-Newton polish of the fiber coordinates (x, y, theta, alpha, r)
/// against a sup-normalized target; the initial guess can lose several digits
/// at ill-conditioned base points (small y).
void polish_fiber(std::array<double, 5>& v, const BinForm<double>& target) {
  auto eval = [](const std::array<double, 5>& w) {
    return dev(HPoint<double>(w[0], w[1]), w[2], w[3], w[4]);
  };
  auto resid = [&](const std::array<double, 5>& w, Eigen::VectorXd& out) {
    const BinForm<double> D = eval(w);
    double dp = 0, dm = 0;
    for (int k = 0; k < 7; ++k) {
      dp = std::max(dp, std::abs(D[k] - target[k]));
      dm = std::max(dm, std::abs(D[k] + target[k]));
    }
    const double s = dp <= dm ? 1.0 : -1.0;
    for (int k = 0; k < 7; ++k) out(k) = s * D[k] - target[k];
    return std::min(dp, dm);
  };
  Eigen::VectorXd R(7), Rp(7), Rm(7);
  double best = resid(v, R);
  for (int it = 0; it < 12 && best > 1e-13; ++it) {
    Eigen::MatrixXd J(7, 5);
    for (int j = 0; j < 5; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(v[j]));
      std::array<double, 5> wp = v, wm = v;
      wp[j] += h;
      wm[j] -= h;
      if (wm[1] <= 0 || wm[4] <= 0) wm = v; // one-sided at the boundary
      resid(wp, Rp);
      resid(wm, Rm);
      J.col(j) = (Rp - Rm) / (wp[j] - wm[j]);
    }
    const Eigen::VectorXd dv = J.colPivHouseholderQr().solve(-R);
    std::array<double, 5> w = v;
    double t = 1.0;
    bool improved = false;
    for (int half = 0; half < 8 && !improved; ++half, t /= 2) {
      for (int j = 0; j < 5; ++j) w[j] = v[j] + t * dv(j);
      if (w[1] <= 0 || w[4] <= 0) continue;
      Eigen::VectorXd Rw(7);
      const double r = resid(w, Rw);
      if (r < best) {
        best = r;
        v = w;
        R = Rw;
        improved = true;
      }
    }
    if (!improved) break;
  }
}

} // namespace

std::vector<PreimageHit> preimage_search(const BinForm<double>& P0, double tol) {
  if (P0.size() != 7) throw std::invalid_argument("preimage_search: need a sextic");
  BinForm<double> P = P0;
  const double mx = sup_norm(P);
  if (mx == 0) throw std::invalid_argument("preimage_search: zero polynomial");
  for (double& c : P) c /= mx;

  // Candidate base points from conjugate root pairs of P: divisibility of P
  // by the quadratic G(x + iy) is equivalent to x ± iy being a root pair, so
  // this candidate list is exhaustive.
  std::vector<HPoint<double>> cands;
  {
    int lead = 0;
    while (lead < 6 && std::abs(P[lead]) <= 1e-12) ++lead;
    const int deg = 6 - lead;
    if (deg > 0) {
      Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
      for (int k = 0; k < deg; ++k) C(0, k) = -P[lead + 1 + k] / P[lead];
      for (int k = 1; k < deg; ++k) C(k, k - 1) = 1.0;
      Eigen::EigenSolver<Eigen::MatrixXd> es(C);
      for (int k = 0; k < deg; ++k) {
        const std::complex<double> z = es.eigenvalues()(k);
        if (z.imag() <= 1e-7) continue;
        // the quadratic with this root pair is X^2 - 2Re(z) XY + |z|^2 Y^2,
        // proportional to G(x + iy) with x = b/(2c), y^2 = 1/c - x^2
        const double b = -2 * z.real(), c = std::norm(z);
        const double x = b / (2 * c), y2 = 1 / c - x * x;
        if (y2 <= 0) continue;
        cands.emplace_back(x, std::sqrt(y2));
      }
    }
  }

  // All fiber recovery happens in a Moebius-normalized chart: the map
  // z -> y z + x carries i to the candidate base point x + iy with real
  // positive derivative, so it transports the developing-map frame without
  // rotating the fiber angles or changing r.  Conjugating the target by the
  // inverse substitution keeps every projection well conditioned even for
  // base points with tiny imaginary part, where the raw frame partials grow
  // like y^-7 and lose all accuracy to cancellation.
  const HPoint<double> pin(0, 1);
  const BinForm<double> f = f_hat(pin);
  const BinForm<double> fx = curve_Fx(pin), fy = curve_Fy(pin);
  const std::vector<BinForm<double>> base = q6_orth<double>({f, fx, fy});
  const BinForm<double> iixx = q6_project_out(curve_Fxx(pin), base);
  const BinForm<double> iixy = q6_project_out(curve_Fxy(pin), base);

  std::vector<PreimageHit> hits;
  for (const auto& p : cands) {
    // skip duplicates of already-processed base points (repeated root pairs)
    bool dup = false;
    for (const auto& h : hits)
      dup = dup || (std::abs(h.x - p.x) < 1e-6 && std::abs(h.y - p.y) < 1e-6);
    if (dup) continue;

    // conjugated target in the chart centered at i
    const double sy = std::sqrt(p.y);
    const Moebius<double> ginv(1 / sy, -p.x / sy, 0, sy);
    BinForm<double> Pc = apply_rep(moebius_rep(ginv), P);
    {
      const double s = sup_norm(Pc);
      for (double& c : Pc) c /= s;
    }

    double a = q6_pair(Pc, f);
    BinForm<double> Q = Pc;
    if (a < 0) {
      for (double& c : Q) c = -c;
      a = -a;
    }
    if (a <= tol) continue;
    // split Q = a f + (tangent) + (normal); the lift is null, so the tangent
    // magnitude a·sqrt(r²+1) follows from the normal magnitude a·r
    const BinForm<double> rest = q6_project_out(Q, base);
    BinForm<double> tang = bf_add(Q, bf_scale(-1.0, rest));
    tang = bf_add(tang, bf_scale(-a, f));
    // tangent angle: least-squares coordinates of tang in (fx, fy)
    Eigen::MatrixXd At(7, 2);
    Eigen::VectorXd bt(7);
    for (int k = 0; k < 7; ++k) {
      At(k, 0) = fx[k];
      At(k, 1) = fy[k];
      bt(k) = tang[k];
    }
    const Eigen::Vector2d tc = At.colPivHouseholderQr().solve(bt);
    const double theta = std::atan2(tc(1), tc(0));
    // normal magnitude and angle
    const double qn = q6(rest);
    if (qn <= tol * tol * a * a) continue; // no (or lightlike) normal part
    const double r = std::sqrt(qn) / a;
    // the normal space is two-dimensional with ii_yy = -ii_xx, so the normal
    // part reduces to a positive multiple of
    // cos(theta+alpha) ii_xx + sin(theta+alpha) ii_xy
    Eigen::MatrixXd An(7, 2);
    Eigen::VectorXd bn(7);
    for (int k = 0; k < 7; ++k) {
      An(k, 0) = iixx[k];
      An(k, 1) = iixy[k];
      bn(k) = rest[k];
    }
    const Eigen::Vector2d nc = An.colPivHouseholderQr().solve(bn);
    const double alpha = std::atan2(nc(1), nc(0)) - theta;
    // polish around the chart center and confirm by evaluating the
    // developing map against the conjugated target
    const BinForm<double> target = bf_scale(1.0 / sup_norm(Q), Q);
    std::array<double, 5> v = {0, 1, theta, alpha, r};
    polish_fiber(v, target);
    const double res =
        proj_dist(dev(HPoint<double>(v[0], v[1]), v[2], v[3], v[4]), target);
    // base point mapped back through z -> y z + x; angles and r transport
    // unchanged (the chart map has real positive derivative)
    if (res < tol)
      hits.push_back({p.x + p.y * v[0], p.y * v[1], v[2], v[3], v[4], res});
  }
  return hits;
}

} // namespace g2e
