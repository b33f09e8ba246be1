#include "geom/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace geom {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

namespace checks {

Point sample_interior(const MetricSpec& spec, SplitMix64& rng, double margin) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    Point p = sample_point(spec, rng);
    bool ok = true;
    for (int i = 0; i < spec.dim; ++i) {
      if (std::isfinite(spec.domain.lower[i]) && p.x[i] - spec.domain.lower[i] < margin) ok = false;
      if (std::isfinite(spec.domain.upper[i]) && spec.domain.upper[i] - p.x[i] < margin) ok = false;
    }
    if (ok) return p;
  }
  throw Error("could not sample an interior point with margin " + std::to_string(margin));
}

Point nearby_interior(const MetricSpec& spec, SplitMix64& rng, const Point& base, double radius,
                      double margin) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    Point q = base;
    for (int i = 0; i < spec.dim; ++i) q.x[i] += rng.uniform(-radius, radius);
    bool ok = true;
    for (int i = 0; i < spec.dim; ++i) {
      if (std::isfinite(spec.domain.lower[i]) && q.x[i] - spec.domain.lower[i] < margin) ok = false;
      if (std::isfinite(spec.domain.upper[i]) && spec.domain.upper[i] - q.x[i] < margin) ok = false;
    }
    if (ok) return q;
  }
  throw Error("could not sample a nearby interior point");
}

CurveSpec segment_curve(const MetricSpec& spec, const Point& p, const Point& q) {
  std::vector<std::string> exprs;
  for (int i = 0; i < spec.dim; ++i)
    exprs.push_back(fmt17(p.x[i]) + "+(" + fmt17(q.x[i] - p.x[i]) + ")*t");
  return make_analytic_curve(spec, exprs, -0.01, 1.01);
}

std::string centered_polynomial(const MetricSpec& spec, const Point& center, SplitMix64& rng,
                                int degree) {
  auto shifted = [&](int axis) {
    return "(" + spec.coords[axis] + "-(" + fmt17(center.x[axis]) + "))";
  };
  std::string out = fmt17(rng.uniform(-1.0, 1.0));
  for (int d = 1; d <= degree; ++d) {
    std::string term = fmt17(rng.uniform(-1.0, 1.0));
    for (int f = 0; f < d; ++f)
      term += "*" + shifted(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(spec.dim))));
    out += "+" + term;
  }
  return out;
}

VectorFieldExprs random_polynomial_field(const MetricSpec& spec, const Point& center,
                                         SplitMix64& rng, int degree) {
  std::vector<std::string> comps;
  for (int i = 0; i < spec.dim; ++i)
    comps.push_back(centered_polynomial(spec, center, rng, degree));
  return parse_vector_field(spec, comps);
}

}  // namespace checks

namespace {

using checks::sample_interior;

struct Ctx {
  const MetricSpec& spec;
  const VerifyOptions& opts;
  std::vector<CheckResult>& out;

  void add(const std::string& name, double residual, double default_tol,
           const std::string& note = "") {
    double tol = opts.tol_override.value_or(default_tol);
    out.push_back({name, residual <= tol, residual, tol, note});
  }
  SplitMix64 rng(std::uint64_t salt) const { return SplitMix64(opts.seed ^ salt); }
};

void check_validate(Ctx& c) {
  ValidationReport rep = validate_spec(c.spec, c.opts.samples, c.opts.seed, 1e-10);
  double tol = c.opts.tol_override.value_or(1e-12);
  std::string note = "index=" + std::to_string(rep.index) +
                     " min|eig|=" + fmt17(rep.min_abs_eigenvalue);
  if (!rep.failures.empty()) note += " first_failure: " + rep.failures.front();
  c.out.push_back(
      {"spec_validate", rep.ok() && rep.symmetry_max <= tol, rep.symmetry_max, tol, note});
}

void check_torsion(Ctx& c) {
  auto rng = c.rng(0x101);
  double mx = 0.0;
  for (int i = 0; i < c.opts.samples; ++i)
    mx = std::max(mx, torsion_residual(c.spec, sample_point(c.spec, rng)));
  c.add("torsion", mx, 0.0);
}

void check_metric_compatibility(Ctx& c) {
  auto rng = c.rng(0x102);
  // g has closed-form components, so its covariant derivative gets exact
  // dual partials; fd_step is unused on this path
  TensorField T;
  T.rank = 2;
  T.eval = [&](const Point& q) {
    SymMatrix g = metric_at(c.spec, q);
    return std::vector<double>(g.data().begin(), g.data().end());
  };
  T.partials = [&](const Point& q) {
    auto D = metric_partials_at(c.spec, q);
    std::vector<double> out;
    for (const auto& d : D) out.insert(out.end(), d.data().begin(), d.data().end());
    return out;
  };
  double mx = 0.0;
  for (int i = 0; i < c.opts.samples; ++i) {
    Point p = sample_point(c.spec, rng);
    auto full = covderiv_tensor_full(c.spec, T, p, 1e-5);
    for (double v : full) mx = std::max(mx, std::fabs(v));
  }
  c.add("metric_compatibility", mx, 1e-7, "nabla g, exact metric partials");
}

void check_koszul(Ctx& c) {
  auto rng = c.rng(0x103);
  double mx = 0.0;
  for (int i = 0; i < c.opts.samples; ++i) {
    Point p = sample_point(c.spec, rng);
    auto X = checks::random_polynomial_field(c.spec, p, rng, 3);
    auto Y = checks::random_polynomial_field(c.spec, p, rng, 3);
    auto Z = checks::random_polynomial_field(c.spec, p, rng, 3);
    mx = std::max(mx, koszul_residual(c.spec, X, Y, Z, p));
  }
  c.add("koszul", mx, 1e-9, "random cubic fields");
}

void check_transport(Ctx& c) {
  auto rng = c.rng(0x104);
  SolverConfig cfg;
  cfg.dt = 1e-4;
  int trials = std::min(c.opts.samples, 20);
  double iso = 0.0, inv = 0.0;
  for (int i = 0; i < trials; ++i) {
    Point p = sample_interior(c.spec, rng, 0.02);
    Point q = checks::nearby_interior(c.spec, rng, p, 0.5, 0.02);
    CurveSpec curve = checks::segment_curve(c.spec, p, q);
    std::vector<double> v(c.spec.dim), w(c.spec.dim);
    for (int k = 0; k < c.spec.dim; ++k) {
      v[k] = rng.uniform(-1.0, 1.0);
      w[k] = rng.uniform(-1.0, 1.0);
    }
    auto pv = parallel_transport(c.spec, curve, 0.0, 1.0, v, cfg);
    auto pw = parallel_transport(c.spec, curve, 0.0, 1.0, w, cfg);
    double before = inner_at(c.spec, {p, v}, {p, w});
    double after = inner_at(c.spec, {q, pv}, {q, pw});
    iso = std::max(iso, std::fabs(after - before));

    auto back = parallel_transport(c.spec, curve, 1.0, 0.0, pv, cfg);
    for (int k = 0; k < c.spec.dim; ++k) inv = std::max(inv, std::fabs(back[k] - v[k]));
  }
  c.add("transport_isometry", iso, 1e-7, std::to_string(trials) + " segment trials, dt=1e-4");
  c.add("transport_inverse", inv, 1e-8);
}

void check_geodesic_speed(Ctx& c) {
  auto rng = c.rng(0x105);
  SolverConfig cfg;
  cfg.dt = c.opts.dt;
  int trials = std::min(c.opts.samples, 10);
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    Point p = sample_interior(c.spec, rng, 0.05);
    std::vector<double> v(c.spec.dim);
    double norm2 = 0.0, inner = 0.0;
    for (int attempt = 0; attempt < 64; ++attempt) {
      norm2 = 0.0;
      for (int k = 0; k < c.spec.dim; ++k) {
        v[k] = rng.uniform(-0.3, 0.3);
        norm2 += v[k] * v[k];
      }
      inner = inner_at(c.spec, {p, v}, {p, v});
      // avoid near-null initial velocities so relative drift is well defined
      if (std::fabs(inner) >= 0.05 * norm2 && norm2 > 1e-4) break;
    }
    Trajectory traj = geodesic_shoot(c.spec, p, v, 0.0, 10.0, cfg);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    SymMatrix g(c.spec.dim);
    for (std::size_t sidx = 0; sidx < traj.samples(); ++sidx) {
      Point q{{traj.point(sidx).begin(), traj.point(sidx).end()}};
      g = metric_at(c.spec, q);
      double s = 0.0;
      auto u = traj.velocity(sidx);
      for (int a = 0; a < c.spec.dim; ++a)
        for (int b = 0; b < c.spec.dim; ++b) s += g(a, b) * u[a] * u[b];
      double sp = std::sqrt(std::fabs(s));
      lo = std::min(lo, sp);
      hi = std::max(hi, sp);
    }
    if (traj.samples() > 0 && hi > 0.0) worst = std::max(worst, (hi - lo) / hi);
  }
  c.add("geodesic_speed", worst, 1e-6, "relative drift, t in [0,10]");
}

// Residuals are compared against tol * scale. The scale floor keeps
// numerically flat charts (curvature at roundoff) from failing on noise.
double curvature_scale_floor(const MetricSpec& spec, const Point& p) {
  SymMatrix g = metric_at(spec, p);
  ChristoffelAt gamma = christoffel_at(spec, p);
  double gm = g.max_abs(), cm = 0.0;
  for (double v : gamma.gamma) cm = std::max(cm, std::fabs(v));
  return 1e-6 * (1.0 + gm) * (1.0 + cm) * (1.0 + cm);
}

void check_riemann_identities(Ctx& c) {
  auto rng = c.rng(0x106);
  double a12 = 0.0, a34 = 0.0, fb = 0.0, pair = 0.0;
  for (int i = 0; i < c.opts.samples; ++i) {
    Point p = sample_point(c.spec, rng);
    IdentityResiduals r = identity_residuals(c.spec, p);
    double scale = std::max(r.scale, curvature_scale_floor(c.spec, p));
    a12 = std::max(a12, r.antisym12 / scale);
    a34 = std::max(a34, r.antisym34 / scale);
    fb = std::max(fb, r.first_bianchi / scale);
    pair = std::max(pair, r.pair_symmetry / scale);
  }
  c.add("riemann_antisym12", a12, 1e-10, "scaled by max |Rlow|");
  c.add("riemann_antisym34", a34, 1e-10, "scaled by max |Rlow|");
  c.add("first_bianchi", fb, 1e-10, "scaled by max |Rlow|");
  c.add("riemann_pair_symmetry", pair, 1e-10, "scaled by max |Rlow|");
}

void check_second_bianchi(Ctx& c) {
  auto rng = c.rng(0x107);
  const double fd = 1e-4;
  int trials = std::min(c.opts.samples, 10);
  double mx = 0.0;
  for (int i = 0; i < trials; ++i) {
    Point p = sample_interior(c.spec, rng, 3.0 * fd);
    mx = std::max(mx, second_bianchi_residual(c.spec, p, fd));
  }
  c.add("second_bianchi", mx, 1e-5, "fd_step=1e-4");
}

void check_holonomy(Ctx& c) {
  auto rng = c.rng(0x108);
  Point p = sample_interior(c.spec, rng, 0.1);
  std::vector<std::string> fam_exprs;
  for (int i = 0; i < c.spec.dim; ++i) {
    std::string e = fmt17(p.x[i]);
    if (i == 0) e += "+s";
    if (i == 1) e += "+t";
    fam_exprs.push_back(e);
  }
  FamilySpec fam = make_family(c.spec, fam_exprs, -0.1, 0.1, -0.1, 0.1);
  std::vector<double> z(c.spec.dim);
  for (int k = 0; k < c.spec.dim; ++k) z[k] = rng.uniform(-1.0, 1.0);
  auto [xs, xt] = family_velocities(c.spec, fam, 0.0, 0.0);
  TangentVector rz = curvature_apply_at(c.spec, p, xs, xt, z);
  double rnorm = 0.0;
  for (double v : rz.comp) rnorm = std::max(rnorm, std::fabs(v));

  auto estimate = [&](double delta) {
    SolverConfig cfg;
    cfg.dt = delta / 200.0;
    return holonomy_curvature_estimate(c.spec, fam, z, delta, delta, cfg);
  };

  if (rnorm <= 1e-8) {
    TangentVector est = estimate(1e-2);
    double mx = 0.0;
    for (double v : est.comp) mx = std::max(mx, std::fabs(v));
    c.add("holonomy_convergence", mx, 1e-6, "flat chart: estimator must vanish");
    return;
  }

  double err[3];
  double deltas[3] = {4e-2, 2e-2, 1e-2};
  for (int d = 0; d < 3; ++d) {
    TangentVector est = estimate(deltas[d]);
    double e = 0.0;
    for (int k = 0; k < c.spec.dim; ++k) e = std::max(e, std::fabs(est.comp[k] - rz.comp[k]));
    err[d] = e;
  }
  double r1 = err[0] / err[1], r2 = err[1] / err[2];
  double resid = std::max(std::fabs(r1 - 2.0), std::fabs(r2 - 2.0));
  c.add("holonomy_convergence", resid, 0.4,
        "error ratios " + fmt17(r1) + ", " + fmt17(r2) + " (target 2)");
}

void check_commutator(Ctx& c) {
  auto rng = c.rng(0x109);
  Point p = sample_interior(c.spec, rng, 0.2);
  std::vector<std::string> fam_exprs;
  for (int i = 0; i < c.spec.dim; ++i) {
    std::string e = fmt17(p.x[i]);
    if (i == 0) e += "+0.15*s";
    if (i == 1) e += "+0.15*t";
    fam_exprs.push_back(e);
  }
  FamilySpec fam = make_family(c.spec, fam_exprs, -1.0, 1.0, -1.0, 1.0);

  std::vector<std::string> w_exprs;
  for (int i = 0; i < c.spec.dim; ++i)
    w_exprs.push_back(fmt17(rng.uniform(-1.0, 1.0)) + "+" + fmt17(rng.uniform(-1.0, 1.0)) +
                      "*s+" + fmt17(rng.uniform(-1.0, 1.0)) + "*t+" +
                      fmt17(rng.uniform(-1.0, 1.0)) + "*s*t");
  auto W = parse_family_field(c.spec, w_exprs);

  double mx = 0.0;
  for (int i = 0; i < 10; ++i) {
    double s = rng.uniform(-0.5, 0.5);
    double t = rng.uniform(-0.5, 0.5);
    mx = std::max(mx, commutator_curvature_check(c.spec, fam, W, s, t));
  }
  c.add("commutator_lemma", mx, 1e-5, "10 family points, h=1e-4");
}

void check_gradient_duality(Ctx& c) {
  auto rng = c.rng(0x10a);
  int trials = std::max(c.opts.samples, 100);
  double mx = 0.0;
  for (int i = 0; i < trials; ++i) {
    Point p = sample_point(c.spec, rng);
    Expr f = parse_scalar_field(c.spec, checks::centered_polynomial(c.spec, p, rng, 3));
    std::vector<double> xv(c.spec.dim);
    for (int k = 0; k < c.spec.dim; ++k) xv[k] = rng.uniform(-1.0, 1.0);

    TangentVector grad = gradient_at(c.spec, f, p);
    double lhs = inner_at(c.spec, grad, {p, xv});
    Dual1 df = eval_dual1_indexed(f, c.spec.bind_dual1(p));
    double rhs = 0.0;
    for (int k = 0; k < c.spec.dim; ++k) rhs += xv[k] * df.grad(k);
    mx = std::max(mx, std::fabs(lhs - rhs));
  }
  c.add("gradient_duality", mx, 1e-9, std::to_string(trials) + " random (f, X, p) triples");
}

void check_ricci_orthonormal(Ctx& c) {
  auto rng = c.rng(0x10b);
  double mx = 0.0;
  for (int i = 0; i < c.opts.samples; ++i) {
    Point p = sample_point(c.spec, rng);
    RicciAt r = ricci_at(c.spec, p);
    SymMatrix alt = ricci_via_orthonormal_frame(c.spec, p);
    double scale = std::max(1.0, r.ric.max_abs());
    for (int a = 0; a < c.spec.dim; ++a)
      for (int b = 0; b < c.spec.dim; ++b)
        mx = std::max(mx, std::fabs(r.ric(a, b) - alt(a, b)) / scale);
  }
  c.add("ricci_orthonormal", mx, 1e-9, "coordinate trace vs orthonormal-frame trace");
}

void check_einstein(Ctx& c) {
  EinsteinReport rep = einstein_check(c.spec, c.opts.samples, c.opts.seed ^ 0x10c,
                                      c.opts.tol_override.value_or(1e-8));
  // informational: not being Einstein is a property of the metric, not a bug
  std::string note = std::string("is_einstein=") + (rep.is_einstein ? "yes" : "no") +
                     " kappa=" + fmt17(rep.kappa) + " eig_range=[" + fmt17(rep.eig_lo) + "," +
                     fmt17(rep.eig_hi) + "]";
  c.out.push_back({"einstein_report", true, rep.max_deviation,
                   std::numeric_limits<double>::infinity(), note});
}

}  // namespace

std::vector<CheckResult> run_verification(const MetricSpec& spec, const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  Ctx c{spec, opts, out};
  check_validate(c);
  check_torsion(c);
  check_metric_compatibility(c);
  check_koszul(c);
  check_transport(c);
  check_geodesic_speed(c);
  check_riemann_identities(c);
  check_second_bianchi(c);
  check_holonomy(c);
  check_commutator(c);
  check_gradient_duality(c);
  check_ricci_orthonormal(c);
  check_einstein(c);
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace geom
