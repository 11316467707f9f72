/// Almost-complex curve implementation: Frenet frame, developing map,
/// limit maps, osculating intersections, and the fiber degenerate set.

#include "g2e/curve.hpp"
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace g2e {

namespace {

constexpr double kFhatScale = 0.5590169943749474241; // sqrt(5)/4

double sup_norm(const BinForm<double>& p) {
  double m = 0;
  for (double x : p) m = std::max(m, std::abs(x));
  return m;
}

BinForm<double> sup_normalize(BinForm<double> p) {
  const double m = sup_norm(p);
  for (double& x : p) x /= m;
  return p;
}

/// Shared float data at a point: f̂-scaled value, partials, the orthogonal
/// L+T base, and the three second-fundamental-form projections.
struct DevFrame {
  BinForm<double> f, fx, fy;
  std::vector<BinForm<double>> base; ///< Q6-orthogonal basis of L + T
  BinForm<double> ii_xx, ii_xy, ii_yy;
};

DevFrame dev_frame(const HPoint<double>& p) {
  DevFrame d;
  auto sc = [](BinForm<double> v) {
    for (double& x : v) x *= kFhatScale;
    return v;
  };
  d.f = sc(curve_F(p));
  d.fx = sc(curve_Fx(p));
  d.fy = sc(curve_Fy(p));
  d.base = q6_orth<double>({d.f, d.fx, d.fy});
  d.ii_xx = q6_project_out(sc(curve_Fxx(p)), d.base);
  d.ii_xy = q6_project_out(sc(curve_Fxy(p)), d.base);
  d.ii_yy = q6_project_out(sc(curve_Fyy(p)), d.base);
  return d;
}

BinForm<double> dev_lift(const DevFrame& d, double theta, double alpha, double r) {
  const double ct = std::cos(theta), st = std::sin(theta);
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  BinForm<double> u = bf_add(bf_scale(ct, d.fx), bf_scale(st, d.fy));
  BinForm<double> dd = bf_add(
      bf_add(bf_scale(ct * ca, d.ii_xx), bf_scale(ct * sa + st * ca, d.ii_xy)),
      bf_scale(st * sa, d.ii_yy));
  const double qu = q6(u), qii = q6(dd);
  BinForm<double> out = d.f;
  out = bf_add(out, bf_scale(std::sqrt(r * r + 1.0) / std::sqrt(-qu), u));
  out = bf_add(out, bf_scale(r / std::sqrt(qii), dd));
  return out;
}

} // namespace

Quadratic<double> g_hat(const HPoint<double>& p) {
  const auto g = curve_g(p);
  const double s = 1.0 / std::sqrt(2.0);
  return {s * g[0], s * g[1], s * g[2]};
}
Quadratic<double> g_hat_x(const HPoint<double>& p) {
  const auto g = curve_gx(p);
  const double s = 1.0 / std::sqrt(2.0);
  return {s * g[0], s * g[1], s * g[2]};
}
Quadratic<double> g_hat_y(const HPoint<double>& p) {
  const auto g = curve_gy(p);
  const double s = 1.0 / std::sqrt(2.0);
  return {s * g[0], s * g[1], s * g[2]};
}

BinForm<double> f_hat(const HPoint<double>& p) {
  BinForm<double> f = curve_F(p);
  for (double& x : f) x *= kFhatScale;
  return f;
}

FrenetExact frenet_exact(const HPoint<Rat>& p) {
  FrenetExact out;
  out.f = curve_F(p);
  const auto base3 = q6_orth<Rat>({out.f, curve_Fx(p), curve_Fy(p)});
  out.t1 = base3[1];
  out.t2 = base3[2];
  std::vector<BinForm<Rat>> base = base3;
  out.n1 = q6_project_out(curve_Fxy(p), base);
  base.push_back(out.n1);
  out.n2 = q6_project_out(curve_Fxx(p), base);
  base.push_back(out.n2);
  const auto g = curve_g(p);
  const auto gx = curve_gx(p);
  const auto gy = curve_gy(p);
  out.b1 = q6_project_out(bf_mul(bf_mul(gx, gx), gy), base);
  base.push_back(out.b1);
  out.b2 = q6_project_out(bf_mul(bf_mul(gy, gy), gx), base);
  (void)g;
  return out;
}

BinForm<double> q6_unit(const BinForm<double>& v) {
  const double s = q6(v);
  BinForm<double> r = bf_scale(1.0 / std::sqrt(std::abs(s)), v);
  const double m = sup_norm(r);
  for (double x : r) {
    if (std::abs(x) > 1e-12 * m) {
      if (x < 0)
        for (double& y : r) y = -y;
      break;
    }
  }
  return r;
}

FrenetFrame frenet(const HPoint<double>& p) {
  const DevFrame d = dev_frame(p);
  FrenetFrame out;
  out.f = d.f;
  out.t1 = q6_unit(d.base[1]);
  out.t2 = q6_unit(q6_project_out(d.fy, {d.base[0], d.base[1]}));
  out.ii_xx = d.ii_xx;
  out.ii_xy = d.ii_xy;
  out.ii_yy = d.ii_yy;
  out.n1 = q6_unit(d.ii_xy);
  out.n2 = q6_unit(q6_project_out(d.ii_xx, {d.ii_xy}));
  // binormal block: projections of gx²·gy and gy²·gx
  const auto gx = curve_gx(p);
  const auto gy = curve_gy(p);
  std::vector<BinForm<double>> base = d.base;
  base.push_back(out.n1);
  base.push_back(out.n2);
  const BinForm<double> rb1 = q6_project_out(bf_mul(bf_mul(gx, gx), gy), base);
  out.b1 = q6_unit(rb1);
  base.push_back(rb1);
  out.b2 = q6_unit(q6_project_out(bf_mul(bf_mul(gy, gy), gx), base));
  return out;
}

ImVector<double> sextic_to_im(const BinForm<double>& p) {
  if (p.size() != 7) throw std::invalid_argument("sextic_to_im: need a sextic");
  Vec7d v;
  for (int t = 0; t < 7; ++t) v(t) = p[t];
  return to_im(Vec7d(bridge_B() * v));
}

BinForm<double> dev(const HPoint<double>& p, double theta, double alpha, double r) {
  if (r <= 0) throw std::invalid_argument("dev: r must be positive");
  return sup_normalize(dev_lift(dev_frame(p), theta, alpha, r));
}

double dev_rank(const HPoint<double>& p, double theta, double alpha, double r,
                double step) {
  if (r <= 0) throw std::invalid_argument("dev_rank: r must be positive");
  auto rep = [](const double* q) {
    const BinForm<double> v =
        dev_lift(dev_frame(HPoint<double>(q[0], q[1])), q[2], q[3], q[4]);
    Eigen::Matrix<double, 7, 1> e;
    for (int t = 0; t < 7; ++t) e(t) = v[t];
    return Eigen::Matrix<double, 7, 1>(e / e.norm());
  };
  const double c[5] = {p.x, p.y, theta, alpha, r};
  Eigen::Matrix<double, 7, 1> P0 = rep(c);
  Eigen::Matrix<double, 7, 5> J;
  for (int i = 0; i < 5; ++i) {
    double qp[5], qm[5];
    std::copy(c, c + 5, qp);
    std::copy(c, c + 5, qm);
    qp[i] += step;
    qm[i] -= step;
    Eigen::Matrix<double, 7, 1> a = rep(qp), b = rep(qm);
    if (a.dot(P0) < 0) a = -a;
    if (b.dot(P0) < 0) b = -b;
    J.col(i) = (a - b) / (2 * step);
  }
  // orthonormal affine chart at the image: drop the radial direction
  for (int i = 0; i < 5; ++i) J.col(i) -= J.col(i).dot(P0) * P0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  return svd.singularValues()(4);
}

BinForm<double> sigma0(const HPoint<double>& p, double theta) {
  const DevFrame d = dev_frame(p);
  BinForm<double> u =
      bf_add(bf_scale(std::cos(theta), d.fx), bf_scale(std::sin(theta), d.fy));
  u = bf_scale(1.0 / std::sqrt(-q6(u)), u);
  return sup_normalize(bf_add(d.f, u));
}

BinForm<double> sigma_inf(const HPoint<double>& p, double theta, double alpha) {
  const DevFrame d = dev_frame(p);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  BinForm<double> u = bf_add(bf_scale(ct, d.fx), bf_scale(st, d.fy));
  BinForm<double> v = bf_add(bf_scale(ca, d.fx), bf_scale(sa, d.fy));
  BinForm<double> dd = bf_add(
      bf_add(bf_scale(ct * ca, d.ii_xx), bf_scale(ct * sa + st * ca, d.ii_xy)),
      bf_scale(st * sa, d.ii_yy));
  // II of the unit arguments, divided by its own Q6 value
  const double su = std::sqrt(-q6(u)), sv = std::sqrt(-q6(v));
  const BinForm<double> ii = bf_scale(1.0 / (su * sv), dd);
  BinForm<double> out =
      bf_add(bf_scale(1.0 / su, u), bf_scale(1.0 / q6(ii), ii));
  return sup_normalize(out);
}

SigmaInfExact sigma_inf_exact(const HPoint<Rat>& p, const Rat& cu, const Rat& su,
                              const Rat& sv_c, const Rat& sv_s) {
  const BinForm<Rat> F = curve_F(p), Fx = curve_Fx(p), Fy = curve_Fy(p);
  const auto base = q6_orth<Rat>({F, Fx, Fy});
  const BinForm<Rat> u = bf_add(bf_scale(cu, Fx), bf_scale(su, Fy));
  const Rat mu = -q6(u);
  const BinForm<Rat> v = bf_add(bf_scale(sv_c, Fx), bf_scale(sv_s, Fy));
  const Rat mv = -q6(v);
  if (mu <= 0 || mv <= 0)
    throw std::invalid_argument("sigma_inf_exact: tangent directions degenerate");
  BinForm<Rat> dd =
      bf_add(bf_add(bf_scale(Rat(cu * sv_c), curve_Fxx(p)),
                    bf_scale(Rat(cu * sv_s + su * sv_c), curve_Fxy(p))),
             bf_scale(Rat(su * sv_s), curve_Fyy(p)));
  const BinForm<Rat> ii = q6_project_out(dd, base);
  const Rat qii = q6(ii);
  if (qii == 0) throw std::invalid_argument("sigma_inf_exact: vanishing II");
  // sigma_inf = u/sqrt(mu) + sqrt(mu mv) II / qii; scaled by sqrt(mu) qii this
  // is the line [qii u + mu sqrt(mu mv) II].
  SigmaInfExact out;
  out.u_part = bf_scale(qii, u);
  out.ii_part = bf_scale(mu, ii);
  out.m = mu * mv;
  return out;
}

bool sigma_inf_same_line(const SigmaInfExact& a, const SigmaInfExact& b) {
  if (a.m != b.m) return false;
  // Solve (b.u + sqrt(m) b.ii) = (l1 + l2 sqrt(m)) (a.u + sqrt(m) a.ii):
  // rational part  b.u  = l1 a.u  + l2 m a.ii
  // radical part   b.ii = l1 a.ii + l2 a.u
  MatQ M(14, VecQ(3, Rat(0)));
  for (int t = 0; t < 7; ++t) {
    M[t][0] = a.u_part[t];
    M[t][1] = a.m * a.ii_part[t];
    M[t][2] = b.u_part[t];
    M[7 + t][0] = a.ii_part[t];
    M[7 + t][1] = a.u_part[t];
    M[7 + t][2] = b.ii_part[t];
  }
  MatQ M2(14, VecQ(2));
  for (int t = 0; t < 14; ++t) { M2[t][0] = M[t][0]; M2[t][1] = M[t][1]; }
  return rank(M) == rank(M2);
}

std::vector<BinForm<Rat>> osculating_basis(const HPoint<Rat>& p) {
  const auto g = curve_g(p);
  std::vector<BinForm<Rat>> out;
  for (int k = 0; k < 5; ++k) {
    BinForm<Rat> quart = bf_zero<Rat>(4);
    quart[k] = 1;
    out.push_back(bf_mul(g, quart));
  }
  return out;
}

OsculatingIntersection osculating_intersect(const HPoint<Rat>& p,
                                            const HPoint<Rat>& q) {
  const auto A = osculating_basis(p), B = osculating_basis(q);
  std::vector<VecQ> Av, Bv;
  for (const auto& v : A) Av.push_back(VecQ(v.begin(), v.end()));
  for (const auto& v : B) Bv.push_back(VecQ(v.begin(), v.end()));
  OsculatingIntersection out;
  const auto W = span_intersect(Av, Bv);
  out.dim = static_cast<int>(W.size());
  MatQ G(out.dim, VecQ(out.dim));
  for (int i = 0; i < out.dim; ++i) {
    out.basis.push_back(BinForm<Rat>(W[i].begin(), W[i].end()));
    for (int j = 0; j <= i; ++j) {
      G[i][j] = q6_pair(BinForm<Rat>(W[i].begin(), W[i].end()),
                        BinForm<Rat>(W[j].begin(), W[j].end()));
      G[j][i] = G[i][j];
    }
  }
  out.sig = gram_signature(G);
  return out;
}

FiberDegenerate fiber_degenerate_set(const Rat& t) {
  if (t <= 0) throw std::invalid_argument("fiber_degenerate_set: t must be positive");
  if (t == 1) throw std::invalid_argument("fiber_degenerate_set: t = 1 is the same fiber");
  FiberDegenerate out;
  const BinForm<Rat> P1 = {Rat(1), Rat(0), Rat(1)};
  const BinForm<Rat> Pt = {t * t, Rat(0), Rat(1)};
  const BinForm<Rat> prod = bf_mul(P1, Pt);
  out.w = bf_mul(prod, BinForm<Rat>{Rat(3) + t * t, Rat(0), -(Rat(1) + 3 * t * t)});
  out.u = bf_mul(prod, BinForm<Rat>{Rat(0), Rat(1), Rat(0)});
  out.q6_w = q6(out.w);
  const Rat t2 = t * t, t4 = t2 * t2, t6 = t4 * t2, t8 = t4 * t4;
  out.closed_form = Rat(4, 15) * (Rat(3) - 24 * t2 - 86 * t4 - 24 * t6 + 3 * t8);
  out.count = out.q6_w > 0 ? 2 : (out.q6_w == 0 ? 1 : 0);
  return out;
}

int fiber_circle_count(const Rat& t, double tol) {
  const FiberDegenerate fd = fiber_degenerate_set(t);
  // Exact intersection K = U_i cap U_{ti}: 3-dimensional, signature (1,2).
  const auto inter = osculating_intersect(HPoint<Rat>(Rat(0), Rat(1)),
                                          HPoint<Rat>(Rat(0), t));
  if (inter.dim != 3 || !(inter.sig == Signature{1, 2, 0}))
    throw std::runtime_error("fiber_circle_count: unexpected intersection type");
  // Orthogonal eigenbasis of the 3x3 Q6 Gram (float).
  Eigen::Matrix3d G;
  Eigen::Matrix<double, 7, 3> K;
  for (int i = 0; i < 3; ++i)
    for (int t7 = 0; t7 < 7; ++t7) K(t7, i) = to_double(inter.basis[i][t7]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) G(i, j) = to_double(q6_pair(inter.basis[i], inter.basis[j]));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(G);
  // eigenvalues ascending: two negative, one positive
  Eigen::Matrix<double, 7, 1> ep = K * es.eigenvectors().col(2) /
                                   std::sqrt(es.eigenvalues()(2));
  Eigen::Matrix<double, 7, 1> e1 = K * es.eigenvectors().col(0) /
                                   std::sqrt(-es.eigenvalues()(0));
  Eigen::Matrix<double, 7, 1> e2 = K * es.eigenvectors().col(1) /
                                   std::sqrt(-es.eigenvalues()(1));
  // Euclidean-orthonormal basis of the plane W = span(w, u).
  Eigen::Matrix<double, 7, 2> W;
  for (int t7 = 0; t7 < 7; ++t7) {
    W(t7, 0) = to_double(fd.w[t7]);
    W(t7, 1) = to_double(fd.u[t7]);
  }
  const Eigen::Matrix<double, 7, 2> Q =
      Eigen::HouseholderQR<Eigen::Matrix<double, 7, 2>>(W).householderQ().setLength(2) *
      Eigen::Matrix<double, 7, 2>::Identity();
  auto dist = [&](double phi) {
    const Eigen::Matrix<double, 7, 1> v = ep + std::cos(phi) * e1 + std::sin(phi) * e2;
    return (v - Q * (Q.transpose() * v)).norm() / v.norm();
  };
  // Coarse scan for local minima, then ternary refinement.
  const int n = 4096;
  std::vector<double> d(n);
  for (int k = 0; k < n; ++k) d[k] = dist(2 * M_PI * k / n);
  int count = 0;
  for (int k = 0; k < n; ++k) {
    const double dm = d[(k + n - 1) % n], dp = d[(k + 1) % n];
    if (d[k] <= dm && d[k] < dp) {
      double lo = 2 * M_PI * (k - 1) / n, hi = 2 * M_PI * (k + 1) / n;
      for (int it = 0; it < 200; ++it) {
        const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (dist(m1) < dist(m2)) hi = m2;
        else lo = m1;
      }
      if (dist((lo + hi) / 2) < tol) ++count;
    }
  }
  return count;
}

K5Witness k5_witness() {
  K5Witness out;
  out.coeffs = {Rat(3, 8), Rat(-1, 2), Rat(1, 8)};
  const BinForm<Rat> P1 = {Rat(1), Rat(0), Rat(1)};
  const BinForm<Rat> lhs =
      bf_mul(P1, BinForm<Rat>{Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)}); // (X²+Y²)Y⁴
  const BinForm<Rat> cube = bf_mul(bf_mul(P1, P1), P1);
  const BinForm<Rat> fyp = {Rat(1), Rat(0), Rat(1), Rat(0), Rat(-1), Rat(0), Rat(-1)};
  const BinForm<Rat> iixxp = {Rat(1), Rat(0), Rat(-5), Rat(0), Rat(-5), Rat(0), Rat(1)};
  BinForm<Rat> rhs = bf_scale(out.coeffs[0], cube);
  rhs = bf_add(rhs, bf_scale(out.coeffs[1], fyp));
  rhs = bf_add(rhs, bf_scale(out.coeffs[2], iixxp));
  out.residual = bf_add(lhs, bf_scale(Rat(-1), rhs));
  out.exact = bf_is_zero(out.residual);
  return out;
}

} // namespace g2e
