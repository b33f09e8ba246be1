#include "geom/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace geom {

double RiemannAt::max_abs() const {
  double mx = 0.0;
  for (double v : lowered) mx = std::max(mx, std::fabs(v));
  return mx;
}

RiemannAt riemann_at(const MetricSpec& spec, const Point& p) {
  const int m = spec.dim;
  SymMatrix g = metric_at(spec, p);
  SymMatrix ginv = invert_sym(g);
  std::vector<SymMatrix> D = metric_partials_at(spec, p);
  std::vector<SymMatrix> H = metric_second_partials_at(spec, p);

  // d_i ginv = -ginv (d_i g) ginv
  std::vector<std::vector<double>> dginv(m,
                                         std::vector<double>(static_cast<std::size_t>(m) * m));
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double s = 0.0;
        for (int c = 0; c < m; ++c)
          for (int d = 0; d < m; ++d) s += ginv(a, c) * D[i](c, d) * ginv(d, b);
        dginv[i][static_cast<std::size_t>(a) * m + b] = -s;
      }

  auto S = [&](int mu, int j, int k) { return D[j](mu, k) + D[k](j, mu) - D[mu](k, j); };
  auto dS = [&](int i, int mu, int j, int k) {
    return H[static_cast<std::size_t>(i) * m + j](mu, k) +
           H[static_cast<std::size_t>(i) * m + k](j, mu) -
           H[static_cast<std::size_t>(i) * m + mu](k, j);
  };

  // Gamma and its exact partials dGamma[i][n][j][k] = d_i Gamma^n_{jk}
  ChristoffelAt gamma = christoffel_at(spec, p);
  std::vector<double> dgamma(static_cast<std::size_t>(m) * m * m * m, 0.0);
  auto dg_at = [&](int i, int n, int j, int k) -> double& {
    return dgamma[((static_cast<std::size_t>(i) * m + n) * m + j) * m + k];
  };
  for (int i = 0; i < m; ++i)
    for (int n = 0; n < m; ++n)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          double s = 0.0;
          for (int mu = 0; mu < m; ++mu)
            s += dginv[i][static_cast<std::size_t>(n) * m + mu] * S(mu, j, k) +
                 ginv(n, mu) * dS(i, mu, j, k);
          dg_at(i, n, j, k) = 0.5 * s;
        }

  RiemannAt out;
  out.base = p;
  out.dim = m;
  out.mixed.assign(static_cast<std::size_t>(m) * m * m * m, 0.0);
  out.lowered.assign(static_cast<std::size_t>(m) * m * m * m, 0.0);

  for (int n = 0; n < m; ++n)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          double s = dg_at(i, n, j, k) - dg_at(j, n, i, k);
          for (int a = 0; a < m; ++a)
            s += gamma.at(a, j, k) * gamma.at(n, i, a) - gamma.at(a, i, k) * gamma.at(n, j, a);
          out.mixed[((static_cast<std::size_t>(n) * m + i) * m + j) * m + k] = s;
        }

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          double s = 0.0;
          for (int n = 0; n < m; ++n) s += g(l, n) * out.mix(n, i, j, k);
          out.lowered[((static_cast<std::size_t>(i) * m + j) * m + k) * m + l] = s;
        }
  return out;
}

TangentVector curvature_apply_at(const MetricSpec& spec, const Point& p,
                                 const std::vector<double>& x, const std::vector<double>& y,
                                 const std::vector<double>& z) {
  const int m = spec.dim;
  RiemannAt R = riemann_at(spec, p);
  std::vector<double> out(m, 0.0);
  for (int n = 0; n < m; ++n) {
    double s = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) s += R.mix(n, i, j, k) * x[i] * y[j] * z[k];
    out[n] = s;
  }
  return TangentVector{p, out};
}

RicciAt ricci_at(const MetricSpec& spec, const Point& p) {
  const int m = spec.dim;
  RiemannAt R = riemann_at(spec, p);
  SymMatrix ginv = invert_sym(metric_at(spec, p));

  std::vector<double> ric(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) s += ginv(a, b) * R.low(a, i, j, b);
      ric[static_cast<std::size_t>(i) * m + j] = s;
    }
  RicciAt out{p, SymMatrix(m, ric), 0.0};
  double sc = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sc += ginv(i, j) * out.ric(i, j);
  out.scalar = sc;
  return out;
}

SymMatrix ricci_via_orthonormal_frame(const MetricSpec& spec, const Point& p) {
  const int m = spec.dim;
  RiemannAt R = riemann_at(spec, p);
  OrthonormalBasis ob = orthonormal_basis(metric_at(spec, p));
  auto e = [&](int col, int i) { return ob.basis[static_cast<std::size_t>(i) * m + col]; };

  // Ric(u,v) = sum_q eps_q Rm(u, e_q, e_q, v) evaluated on coordinate vectors
  std::vector<double> ric(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int q = 0; q < m; ++q) {
        double acc = 0.0;
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) acc += e(q, a) * e(q, b) * R.low(i, a, b, j);
        s += static_cast<double>(ob.signs[q]) * acc;
      }
      ric[static_cast<std::size_t>(i) * m + j] = s;
    }
  return SymMatrix(m, ric);
}

IdentityResiduals identity_residuals(const MetricSpec& spec, const Point& p) {
  const int m = spec.dim;
  RiemannAt R = riemann_at(spec, p);
  IdentityResiduals out;
  out.scale = R.max_abs();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          out.antisym12 = std::max(out.antisym12, std::fabs(R.low(i, j, k, l) + R.low(j, i, k, l)));
          out.antisym34 = std::max(out.antisym34, std::fabs(R.low(i, j, k, l) + R.low(i, j, l, k)));
          out.first_bianchi =
              std::max(out.first_bianchi,
                       std::fabs(R.low(i, j, k, l) + R.low(j, k, i, l) + R.low(k, i, j, l)));
          out.pair_symmetry =
              std::max(out.pair_symmetry, std::fabs(R.low(i, j, k, l) - R.low(k, l, i, j)));
        }
  return out;
}

double second_bianchi_residual(const MetricSpec& spec, const Point& p, double fd_step) {
  const int m = spec.dim;
  TensorField T;
  T.rank = 4;
  T.eval = [&spec](const Point& q) { return riemann_at(spec, q).lowered; };
  std::vector<double> full = covderiv_tensor_full(spec, T, p, fd_step);

  std::size_t m4 = static_cast<std::size_t>(m) * m * m * m;
  auto nabla = [&](int d, int i, int j, int a, int b) {
    return full[static_cast<std::size_t>(d) * m4 +
                ((static_cast<std::size_t>(i) * m + j) * m + a) * m + b];
  };
  double mx = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            mx = std::max(mx, std::fabs(nabla(i, j, k, a, b) + nabla(j, k, i, a, b) +
                                        nabla(k, i, j, a, b)));
  return mx;
}

TangentVector holonomy_curvature_estimate(const MetricSpec& spec, const FamilySpec& fam,
                                          const std::vector<double>& z, double d1, double d2,
                                          const SolverConfig& cfg) {
  const double pad = 1e-9;
  auto leg_t0 = family_curve(spec, fam, "t", 0.0, std::min(0.0, d2) - pad, std::max(0.0, d2) + pad);
  auto leg_s1 = family_curve(spec, fam, "s", d2, std::min(0.0, d1) - pad, std::max(0.0, d1) + pad);
  auto leg_t1 = family_curve(spec, fam, "t", d1, std::min(0.0, d2) - pad, std::max(0.0, d2) + pad);
  auto leg_s0 = family_curve(spec, fam, "s", 0.0, std::min(0.0, d1) - pad, std::max(0.0, d1) + pad);

  std::vector<double> w(z.begin(), z.end());
  w = parallel_transport(spec, leg_t0, 0.0, d2, w, cfg);   // along t at s=0
  w = parallel_transport(spec, leg_s1, 0.0, d1, w, cfg);   // along s at t=d2
  w = parallel_transport(spec, leg_t1, d2, 0.0, w, cfg);   // back along t at s=d1
  w = parallel_transport(spec, leg_s0, d1, 0.0, w, cfg);   // back along s at t=0

  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = (w[i] - z[i]) / (d1 * d2);
  return TangentVector{family_point(spec, fam, 0.0, 0.0), out};
}

double commutator_curvature_check(const MetricSpec& spec, const FamilySpec& fam,
                                  std::span<const Expr> W, double s, double t, double h) {
  const int m = spec.dim;

  // D1(D2 W) and D2(D1 W) by central differences of the inner covariant
  // derivative, plus the Gamma term at (s, t)
  Point p = family_point(spec, fam, s, t);
  auto [vs, vt] = family_velocities(spec, fam, s, t);
  ChristoffelAt gamma = christoffel_at(spec, p);

  auto d2_at = [&](double ss, double tt) { return family_covderivs(spec, fam, W, ss, tt).second; };
  auto d1_at = [&](double ss, double tt) { return family_covderivs(spec, fam, W, ss, tt).first; };

  TangentVector d2w = d2_at(s, t);
  TangentVector d1w = d1_at(s, t);

  std::vector<double> d1d2(m), d2d1(m);
  TangentVector d2p = d2_at(s + h, t), d2m = d2_at(s - h, t);
  TangentVector d1p = d1_at(s, t + h), d1m = d1_at(s, t - h);
  for (int i = 0; i < m; ++i) {
    double a = (d2p.comp[i] - d2m.comp[i]) / (2.0 * h);
    double b = (d1p.comp[i] - d1m.comp[i]) / (2.0 * h);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        a += vs[j] * gamma.at(i, j, k) * d2w.comp[k];
        b += vt[j] * gamma.at(i, j, k) * d1w.comp[k];
      }
    d1d2[i] = a;
    d2d1[i] = b;
  }

  std::vector<double> wv = eval_family_field(spec, fam, W, s, t);
  TangentVector rz = curvature_apply_at(spec, p, vs, vt, wv);

  double mx = 0.0;
  for (int i = 0; i < m; ++i)
    mx = std::max(mx, std::fabs(d1d2[i] - d2d1[i] - rz.comp[i]));
  return mx;
}

EinsteinReport einstein_check(const MetricSpec& spec, int n_samples, std::uint64_t seed,
                              double tol) {
  EinsteinReport rep;
  SplitMix64 rng(seed);
  std::vector<RicciAt> rics;
  std::vector<SymMatrix> gs;
  double kappa_acc = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    Point p = sample_point(spec, rng);
    RicciAt r = ricci_at(spec, p);
    kappa_acc += r.scalar / static_cast<double>(spec.dim);
    rics.push_back(std::move(r));
    gs.push_back(metric_at(spec, p));
  }
  rep.kappa = kappa_acc / static_cast<double>(n_samples);

  bool first = true;
  for (int i = 0; i < n_samples; ++i) {
    const int m = spec.dim;
    std::vector<double> diff(static_cast<std::size_t>(m) * m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double d = rics[i].ric(a, b) - rep.kappa * gs[i](a, b);
        diff[static_cast<std::size_t>(a) * m + b] = d;
        rep.max_deviation = std::max(rep.max_deviation, std::fabs(d));
      }
    // eigen range of Ric - kappa g in a g-orthonormal frame
    OrthonormalBasis ob = orthonormal_basis(gs[i]);
    std::vector<double> s(static_cast<std::size_t>(m) * m, 0.0);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double acc = 0.0;
        for (int c = 0; c < m; ++c)
          for (int d = 0; d < m; ++d)
            acc += ob.basis[static_cast<std::size_t>(c) * m + a] *
                   diff[static_cast<std::size_t>(c) * m + d] *
                   ob.basis[static_cast<std::size_t>(d) * m + b];
        s[static_cast<std::size_t>(a) * m + b] = acc;
      }
    EigenSym eig = jacobi_eigen(SymMatrix(m, s));
    double lo = eig.values.front(), hi = eig.values.back();
    if (first) {
      rep.eig_lo = lo;
      rep.eig_hi = hi;
      first = false;
    } else {
      rep.eig_lo = std::min(rep.eig_lo, lo);
      rep.eig_hi = std::max(rep.eig_hi, hi);
    }
  }
  rep.is_einstein = rep.max_deviation <= tol;
  return rep;
}

}  // namespace geom
