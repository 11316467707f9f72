// Unit tests for the G2-linear layer: basis bridges, Q6, Moebius
// representation and its three generator matrices, and the Stiefel-triple
// frame construction.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g2e/g2basis.hpp"
#include "g2e/rng.hpp"

using namespace g2e;

namespace {

Moebius<double> random_moebius(SplitMix64& rng) {
  for (;;) {
    double a = rng.uniform(-1.5, 1.5), b = rng.uniform(-1.5, 1.5),
           c = rng.uniform(-1.5, 1.5), d = rng.uniform(-1.5, 1.5);
    const double det = a * d - b * c;
    if (det < 0.25) continue; // keep the degree-six representation well conditioned
    const double s = std::sqrt(det);
    return Moebius<double>(a / s, b / s, c / s, d / s);
  }
}

/// Random float Stiefel triple via q-orthogonal Gram-Schmidt.
bool random_triple(SplitMix64& rng, ImVector<double>& x, ImVector<double>& y,
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
  const auto xy = cross(x, y);
  // q(x X y) = +1 for a unit orthogonal spacelike pair, so plain coefficients.
  z = z - quad_pair(z, x) * x - quad_pair(z, y) * y - quad_pair(z, xy) * xy;
  if (quad(z) > -0.05) return false;
  z = (1.0 / std::sqrt(-quad(z))) * z;
  return true;
}

} // namespace

TEST_CASE("bridge B pulls the split form back to the Q6 Gram matrix") {
  const Mat7d& B = bridge_B();
  Mat7d gq = Mat7d::Zero();
  for (int t = 0; t < 7; ++t) gq(t, t) = t < 3 ? 1.0 : -1.0;
  const Mat7d G = B.transpose() * gq * B;
  const double w[7] = {1, -1.0 / 6, 1.0 / 15, -1.0 / 20, 1.0 / 15, -1.0 / 6, 1};
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      const double want = (i + j == 6) ? w[i] : 0.0;
      CHECK(std::abs(G(i, j) - want) < 1e-15);
    }
}

TEST_CASE("q6 landmark values (exact)") {
  BinForm<Rat> x6 = bf_zero<Rat>(6), y6 = bf_zero<Rat>(6), c3 = bf_zero<Rat>(6);
  x6[0] = 1;
  y6[6] = 1;
  c3[3] = 1;
  CHECK(q6_pair(x6, y6) == 1);
  CHECK(q6_pair(c3, c3) == Rat(-1, 20));
  BinForm<Rat> p1 = {Rat(1), Rat(0), Rat(1)}; // X^2+Y^2
  const auto cube = bf_mul(bf_mul(p1, p1), p1);
  CHECK(q6(cube) == Rat(16, 5));
}

TEST_CASE("stiefel_to_g2: landmark triples") {
  using IV = ImVector<Rat>;
  const IV i = IV::basis(0), j = IV::basis(1), l = IV::basis(3);
  const auto id = stiefel_to_g2(i, j, l);
  const auto dg = stiefel_to_g2(i, j, Rat(-1) * l);
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      CHECK(id[a][b] == (a == b ? 1 : 0));
      const Rat want = (a == b) ? (a < 3 ? Rat(1) : Rat(-1)) : Rat(0);
      CHECK(dg[a][b] == want);
    }
}

TEST_CASE("stiefel_to_g2: exact rational triples preserve q exactly") {
  SplitMix64 rng(0xB0B0B001ULL);
  for (int trial = 0; trial < 25; ++trial) {
    const Rat a = rng.rat_nonzero(7, 4), b = rng.rat_nonzero(7, 4);
    const Rat p = rng.rat_nonzero(7, 4), q_ = rng.rat_nonzero(7, 4);
    using IV = ImVector<Rat>;
    IV x = IV::basis(0);
    IV y;
    y.c[1] = (a * a - b * b) / (a * a + b * b);
    y.c[2] = 2 * a * b / (a * a + b * b);
    IV z;
    z.c[3] = (p * p - q_ * q_) / (p * p + q_ * q_);
    z.c[4] = 2 * p * q_ / (p * p + q_ * q_);
    const auto M = stiefel_to_g2(x, y, z);
    // q-Gram preserved exactly: columns have the (+,+,+,-,-,-,-) norms and
    // vanishing pairings.
    IV cols[7];
    for (int cidx = 0; cidx < 7; ++cidx)
      for (int r = 0; r < 7; ++r) cols[cidx].c[r] = M[r][cidx];
    for (int cidx = 0; cidx < 7; ++cidx)
      for (int d = 0; d < 7; ++d) {
        const Rat want = (cidx == d) ? (cidx < 3 ? Rat(1) : Rat(-1)) : Rat(0);
        CHECK(quad_pair(cols[cidx], cols[d]) == want);
      }
    // Simple transitivity: the matrix sends (i, j, l) back to (x, y, z).
    CHECK(cols[0] == x);
    CHECK(cols[1] == y);
    CHECK(cols[3] == z);
  }
}

TEST_CASE("stiefel_to_g2: random float triples pass is_g2 at 1e-10") {
  SplitMix64 rng(0xB0B0B002ULL);
  int done = 0;
  while (done < 50) {
    ImVector<double> x, y, z;
    if (!random_triple(rng, x, y, z)) continue;
    const Mat7d M = to_eigen(stiefel_to_g2(x, y, z, 1e-9));
    const auto res = is_g2(M);
    CHECK(res.cross_resid < 1e-10);
    CHECK(res.quad_resid < 1e-10);
    CHECK(std::abs(M.determinant() - 1.0) < 1e-10);
    ++done;
  }
}

TEST_CASE("is_g2 rejects a non-member") {
  Mat7d M = Mat7d::Identity();
  M(0, 0) = 2.0;
  M(6, 6) = 0.5;
  CHECK(!is_g2(M).pass(1e-6));
}

TEST_CASE("psl2 generator images in B'-coordinates") {
  const double lam = 1.37;
  const Mat7d Md = psl2_embed_bprime(Moebius<double>(lam, 0, 0, 1 / lam));
  Mat7d want = Mat7d::Zero();
  for (int k = 0; k < 7; ++k) want(k, k) = std::pow(lam, 6 - 2 * k);
  CHECK((Md - want).cwiseAbs().maxCoeff() < 1e-12);

  // rotation by 90 degrees: X -> Y, Y -> -X
  const Mat7d Mr = psl2_embed_bprime(Moebius<double>(0, -1, 1, 0));
  Mat7d wr = Mat7d::Zero();
  for (int k = 0; k < 7; ++k) wr(6 - k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  CHECK((Mr - wr).cwiseAbs().maxCoeff() < 1e-12);

  const double s = 0.81;
  const Mat7d Mu = psl2_embed_bprime(Moebius<double>(1, s, 0, 1));
  CHECK((Mu - unipotent_exp(s)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("psl2 representation: homomorphism, Q6 invariance, cross preservation") {
  SplitMix64 rng(0xB0B0B003ULL);
  Mat7d Q6m = Mat7d::Zero();
  const double w[7] = {1, -1.0 / 6, 1.0 / 15, -1.0 / 20, 1.0 / 15, -1.0 / 6, 1};
  for (int k = 0; k < 7; ++k) Q6m(k, 6 - k) = w[k];
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_moebius(rng), h = random_moebius(rng);
    const Mat7d Mg = psl2_embed(g), Mh = psl2_embed(h), Mgh = psl2_embed(g * h);
    CHECK((Mg * Mh - Mgh).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((Mg.transpose() * Q6m * Mg - Q6m).cwiseAbs().maxCoeff() < 1e-10);
    const auto res = is_g2(psl2_embed_im(g));
    CHECK(res.cross_resid < 1e-9);
    CHECK(res.quad_resid < 1e-9);
  }
}

TEST_CASE("Moebius projective sign canonicalization") {
  const Moebius<double> g(-0.6, 0.8, -0.5, -2.0 / 3);
  const Moebius<double> h(0.6, -0.8, 0.5, 2.0 / 3);
  CHECK(g == h);
}

TEST_CASE("basis conversions round trip; B' is a cross-product basis") {
  SplitMix64 rng(0xB0B0B004ULL);
  const Mat7d& B = bridge_B();
  const Mat7d Binv = B.inverse();
  for (int t = 0; t < 10; ++t) {
    Vec7d p;
    for (int k = 0; k < 7; ++k) p(k) = rng.uniform(-1, 1);
    CHECK((Binv * (B * p) - p).cwiseAbs().maxCoeff() < 1e-13);
  }
  // X^6 -> (i+li)/sqrt2 (first Table-1 identification)
  const Vec7d im0 = B * Vec7d::Unit(0);
  CHECK(std::abs(im0(0) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(im0(4) - 1 / std::sqrt(2.0)) < 1e-15);

  // Cross products of B' vectors stay on single B' lines.
  const Vec7d& d = bprime_scale();
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      if (a == b) continue;
      const auto xa = to_im(Vec7d(d(a) * B.col(a))), xb = to_im(Vec7d(d(b) * B.col(b)));
      const Vec7d cb = Binv * from_im(cross(xa, xb));
      int nonzero = 0;
      for (int k = 0; k < 7; ++k)
        if (std::abs(cb(k)) > 1e-9) ++nonzero;
      CHECK(nonzero <= 1);
    }
}

TEST_CASE("weight basis is consistent with the split form") {
  // Complex-bilinear Gram of the u-columns: u_m pairs only with u_{-m}.
  const Mat7c& U = weight_basis();
  Mat7c gq = Mat7c::Zero();
  for (int t = 0; t < 7; ++t) gq(t, t) = t < 3 ? 1.0 : -1.0;
  const Mat7c G = U.transpose() * gq * U;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      const double want = (i + j == 6) ? (i == 3 ? 1.0 : (i == 2 || i == 4 ? -1.0 : 1.0)) : 0.0;
      (void)want;
      if (i + j != 6) CHECK(std::abs(G(i, j)) < 1e-14);
    }
}
