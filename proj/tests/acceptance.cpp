// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Tolerances are fixed here, not configurable.
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "geom/verify.hpp"
#include "oracles.hpp"

using geom::MetricSpec;
using geom::Point;
using geom::preset;
using geom::SolverConfig;

namespace {

int g_failures = 0;

void report(int number, const std::string& title, bool pass, const std::string& detail) {
  std::printf("%s  criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", number, title.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

void run(int number, const std::string& title, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [pass, detail] = body();
    report(number, title, pass, detail);
  } catch (const std::exception& e) {
    report(number, title, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

Point interior(const MetricSpec& spec, geom::SplitMix64& rng, double margin) {
  return geom::checks::sample_interior(spec, rng, margin);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double mx = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) mx = std::max(mx, std::fabs(a[i] - b[i]));
  return mx;
}

std::vector<MetricSpec> all_presets() {
  std::vector<MetricSpec> specs;
  specs.push_back(preset("semi_euclidean", {{"dim", 4}, {"index", 1}}));
  specs.push_back(preset("sphere", {{"r", 1.0}}));
  specs.push_back(preset("hyperbolic_halfplane"));
  specs.push_back(preset("schwarzschild", {{"M", 1.0}}));
  return specs;
}

// --- criteria ----------------------------------------------------------------

std::pair<bool, std::string> flatness() {
  MetricSpec se = preset("semi_euclidean", {{"dim", 4}, {"index", 1}});
  geom::SplitMix64 rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Point p = geom::sample_point(se, rng);
    geom::RiemannAt R = geom::riemann_at(se, p);
    geom::RicciAt ric = geom::ricci_at(se, p);
    worst = std::max({worst, R.max_abs(), ric.ric.max_abs(), std::fabs(ric.scalar)});
  }
  return {worst <= 1e-12, "max residual " + fmt(worst)};
}

std::pair<bool, std::string> sphere_curvature() {
  geom::SplitMix64 rng(2025);
  double worst = 0.0;
  for (double r : {0.5, 1.0, 2.0, 5.0}) {
    MetricSpec sph = preset("sphere", {{"r", r}});
    for (int i = 0; i < 50; ++i) {
      Point p = geom::sample_point(sph, rng);
      geom::RicciAt ric = geom::ricci_at(sph, p);
      geom::SymMatrix g = geom::metric_at(sph, p);
      worst = std::max(worst, std::fabs(ric.scalar - 2.0 / (r * r)));
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          worst = std::max(worst, std::fabs(ric.ric(a, b) - g(a, b) / (r * r)));
    }
  }
  return {worst <= 1e-8, "max deviation " + fmt(worst)};
}

std::pair<bool, std::string> halfplane_scalar() {
  MetricSpec hp = preset("hyperbolic_halfplane");
  geom::SplitMix64 rng(2026);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i)
    worst = std::max(worst,
                     std::fabs(geom::ricci_at(hp, geom::sample_point(hp, rng)).scalar + 2.0));
  return {worst <= 1e-8, "max |scalar+2| = " + fmt(worst)};
}

std::pair<bool, std::string> schwarzschild_vacuum() {
  MetricSpec sw = preset("schwarzschild", {{"M", 1.0}});
  geom::SplitMix64 rng(2027);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    Point p = geom::sample_point(sw, rng);
    p.x[1] = 2.5 + 7.5 * rng.next_double();  // r in (2.5, 10)
    worst = std::max(worst, geom::ricci_at(sw, p).ric.max_abs());
  }
  return {worst <= 1e-6, "max |Ric| = " + fmt(worst)};
}

double speed_drift(const MetricSpec& spec, const Point& p, const std::vector<double>& v) {
  SolverConfig cfg;
  cfg.dt = 1e-3;
  geom::Trajectory traj = geom::geodesic_shoot(spec, p, v, 0.0, 10.0, cfg);
  if (traj.termination != geom::Termination::completed)
    throw geom::Error("speed-drift trajectory left the chart");
  double lo = 1e300, hi = 0.0;
  for (std::size_t i = 0; i < traj.samples(); ++i) {
    Point q{{traj.point(i).begin(), traj.point(i).end()}};
    geom::SymMatrix g = geom::metric_at(spec, q);
    double s = 0.0;
    auto u = traj.velocity(i);
    for (int a = 0; a < spec.dim; ++a)
      for (int b = 0; b < spec.dim; ++b) s += g(a, b) * u[a] * u[b];
    double sp = std::sqrt(std::fabs(s));
    lo = std::min(lo, sp);
    hi = std::max(hi, sp);
  }
  return (hi - lo) / hi;
}

std::pair<bool, std::string> geodesic_constant_speed() {
  double worst = 0.0;
  worst = std::max(worst, speed_drift(preset("sphere", {{"r", 1.0}}), Point{{M_PI / 3, 0.0}},
                                      {0.05, 0.1}));
  worst = std::max(worst,
                   speed_drift(preset("hyperbolic_halfplane"), Point{{0.0, 1.0}}, {0.0, 1.0}));
  // circular orbit at r = 8M stays in the chart for the whole span
  double ut = 1.0 / std::sqrt(1.0 - 3.0 / 8.0);
  double uphi = std::sqrt(1.0 / 512.0) * ut;
  worst = std::max(worst, speed_drift(preset("schwarzschild", {{"M", 1.0}}),
                                      Point{{0.0, 8.0, M_PI / 2, 0.0}}, {ut, 0.0, 0.0, uphi}));

  // flat space: positions linear to rounding
  MetricSpec se = preset("semi_euclidean", {{"dim", 4}, {"index", 1}});
  Point p{{0.3, -1.0, 2.0, 0.7}};
  std::vector<double> v = {1.0, 0.5, -0.25, 2.0};
  SolverConfig cfg;
  cfg.dt = 1e-3;
  geom::Trajectory traj = geom::geodesic_shoot(se, p, v, 0.0, 10.0, cfg);
  double linerr = 0.0;
  for (std::size_t i = 0; i < traj.samples(); ++i)
    for (int k = 0; k < 4; ++k)
      linerr = std::max(linerr,
                        std::fabs(traj.point(i)[k] - (p.x[k] + traj.t[i] * v[k])) /
                            (1.0 + std::fabs(p.x[k]) + traj.t[i] * std::fabs(v[k])));
  bool pass = worst <= 1e-6 && linerr <= 1e-12;
  return {pass, "max drift " + fmt(worst) + ", flat line error " + fmt(linerr)};
}

std::pair<bool, std::string> hyperbolic_vertical() {
  MetricSpec hp = preset("hyperbolic_halfplane");
  SolverConfig cfg;
  cfg.dt = 1e-3;
  geom::Trajectory traj = geom::geodesic_shoot(hp, Point{{0.0, 1.0}}, {0.0, 1.0}, 0.0, 1.0, cfg);
  auto end = traj.point(traj.samples() - 1);
  double err = std::max(std::fabs(end[0]), std::fabs(end[1] - std::exp(1.0)));
  return {err <= 1e-6, "endpoint error " + fmt(err)};
}

std::pair<bool, std::string> transport_isometry() {
  geom::SplitMix64 rng(2028);
  SolverConfig cfg;
  cfg.dt = 1e-4;
  double iso = 0.0, inv = 0.0;
  for (const auto& spec : all_presets()) {
    for (int trial = 0; trial < 20; ++trial) {
      Point p = interior(spec, rng, 0.02);
      Point q = interior(spec, rng, 0.02);
      geom::CurveSpec curve = geom::checks::segment_curve(spec, p, q);
      std::vector<double> v(spec.dim), w(spec.dim);
      for (int k = 0; k < spec.dim; ++k) {
        v[k] = rng.uniform(-1.0, 1.0);
        w[k] = rng.uniform(-1.0, 1.0);
      }
      auto pv = geom::parallel_transport(spec, curve, 0.0, 1.0, v, cfg);
      auto pw = geom::parallel_transport(spec, curve, 0.0, 1.0, w, cfg);
      iso = std::max(iso, std::fabs(geom::inner_at(spec, {q, pv}, {q, pw}) -
                                    geom::inner_at(spec, {p, v}, {p, w})));
      auto back = geom::parallel_transport(spec, curve, 1.0, 0.0, pv, cfg);
      inv = std::max(inv, max_abs_diff(back, v));
    }
  }
  return {iso <= 1e-7 && inv <= 1e-8, "isometry " + fmt(iso) + ", inverse " + fmt(inv)};
}

std::pair<bool, std::string> holonomy_closed_form() {
  MetricSpec sph = preset("sphere", {{"r", 1.0}});
  SolverConfig cfg;
  cfg.dt = 1e-4;

  std::vector<std::string> lat3 = {"pi/3", "t"};
  geom::CurveSpec c3 = geom::make_analytic_curve(sph, lat3, -0.1, 2.0 * M_PI + 0.1);
  std::vector<double> v = {1.0, 0.0};
  auto got = geom::parallel_transport(sph, c3, 0.0, 2.0 * M_PI, v, cfg);
  double verr = std::max(std::fabs(got[0] + 1.0), std::fabs(got[1]));

  // frame rotation angle at theta0 = pi/4
  double th0 = M_PI / 4, s = std::sin(th0), c = std::cos(th0);
  std::vector<std::string> lat4 = {"pi/4", "t"};
  geom::CurveSpec c4 = geom::make_analytic_curve(sph, lat4, -0.1, 2.0 * M_PI + 0.1);
  std::vector<double> basis = {1.0, 0.0, 0.0, 1.0 / s};  // orthonormal columns
  auto frame = geom::parallel_frame(sph, c4, 0.0, 2.0 * M_PI, basis, cfg);
  auto last = frame.frame(frame.t.size() - 1);
  // orthonormal components of the transported first column
  double m00 = last[0];          // theta component
  double m10 = s * last[2];      // sin * phi component
  double measured = std::atan2(-m10, m00);
  double target = 2.0 * M_PI * c;
  double diff = std::remainder(measured - target, 2.0 * M_PI);
  double aerr = std::fabs(diff);
  return {verr <= 1e-5 && aerr <= 1e-4,
          "loop error " + fmt(verr) + ", angle error " + fmt(aerr)};
}

std::pair<bool, std::string> riemann_symmetries() {
  geom::SplitMix64 rng(2029);
  double worst = 0.0;
  for (const auto& spec : all_presets()) {
    for (int i = 0; i < 50; ++i) {
      Point p = geom::sample_point(spec, rng);
      auto res = geom::identity_residuals(spec, p);
      double scale = std::max(res.scale, 1e-6);
      worst = std::max({worst, res.antisym12 / scale, res.antisym34 / scale,
                        res.first_bianchi / scale, res.pair_symmetry / scale});
    }
  }
  return {worst <= 1e-10, "max scaled residual " + fmt(worst)};
}

std::pair<bool, std::string> second_bianchi() {
  geom::SplitMix64 rng(2030);
  MetricSpec sph = preset("sphere", {{"r", 1.0}});
  double wsph = 0.0;
  for (int i = 0; i < 20; ++i)
    wsph = std::max(wsph, geom::second_bianchi_residual(sph, interior(sph, rng, 1e-3), 1e-4));

  MetricSpec sw = preset("schwarzschild", {{"M", 1.0}});
  double wsw = 0.0;
  for (int i = 0; i < 10; ++i) {
    Point p = interior(sw, rng, 1e-3);
    p.x[1] = 3.0 + 5.0 * rng.next_double();  // r in (3, 8)
    wsw = std::max(wsw, geom::second_bianchi_residual(sw, p, 1e-4));
  }
  return {wsph <= 1e-6 && wsw <= 1e-5, "sphere " + fmt(wsph) + ", schwarzschild " + fmt(wsw)};
}

std::pair<bool, std::string> commutator_lemma() {
  MetricSpec sph = preset("sphere", {{"r", 1.0}});
  std::vector<std::string> fam_exprs = {"1.0+0.25*s", "0.5*t"};
  geom::FamilySpec fam = geom::make_family(sph, fam_exprs, -1.0, 1.0, -1.0, 1.0);
  std::vector<std::string> w_exprs = {"0.3+0.5*s-0.2*t", "1.0-0.4*s*t"};
  auto W = geom::parse_family_field(sph, w_exprs);
  geom::SplitMix64 rng(2031);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i)
    worst = std::max(worst, geom::commutator_curvature_check(
                                sph, fam, W, rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4)));
  return {worst <= 1e-5, "max residual " + fmt(worst)};
}

std::pair<bool, std::string> holonomy_limit() {
  struct Case {
    MetricSpec spec;
    Point base;
    std::vector<std::string> fam;
    std::vector<double> z;
  };
  std::vector<Case> cases;
  cases.push_back({preset("sphere", {{"r", 1.0}}),
                   Point{{M_PI / 3, 0.0}},
                   {"pi/3+s", "t"},
                   {0.0, 1.0}});
  cases.push_back({preset("hyperbolic_halfplane"), Point{{0.0, 2.0}}, {"s", "2+t"}, {1.0, 0.0}});

  bool pass = true;
  std::string detail;
  for (auto& cs : cases) {
    geom::FamilySpec fam = geom::make_family(cs.spec, cs.fam, -0.2, 0.2, -0.2, 0.2);
    auto [xs, xt] = geom::family_velocities(cs.spec, fam, 0.0, 0.0);
    auto rz = geom::curvature_apply_at(cs.spec, cs.base, xs, xt, cs.z);
    double errs[3];
    double deltas[3] = {4e-2, 2e-2, 1e-2};
    for (int k = 0; k < 3; ++k) {
      SolverConfig cfg;
      cfg.dt = deltas[k] / 200.0;
      auto est =
          geom::holonomy_curvature_estimate(cs.spec, fam, cs.z, deltas[k], deltas[k], cfg);
      errs[k] = max_abs_diff(est.comp, rz.comp);
    }
    double r1 = errs[0] / errs[1], r2 = errs[1] / errs[2];
    if (!(r1 >= 1.6 && r1 <= 2.4 && r2 >= 1.6 && r2 <= 2.4)) pass = false;
    detail += cs.spec.name + " ratios " + fmt(r1) + "/" + fmt(r2) + " ";
  }
  return {pass, detail};
}

std::pair<bool, std::string> transport_limit() {
  MetricSpec sph = preset("sphere", {{"r", 1.0}});
  std::vector<std::string> lat = {"1.1", "t"};
  geom::CurveSpec cl = geom::make_analytic_curve(sph, lat, -1.0, 7.0);
  std::vector<std::string> wiggle = {"sin(t)", "cos(2*t)"};
  auto W = geom::parse_curve_field(sph, wiggle);
  auto exact = geom::covderiv_along_curve(sph, cl, W, 1.0);
  bool pass = true;
  std::string detail;
  for (double h : {1e-2, 1e-3, 1e-4}) {
    auto quot = geom::transport_limit_covderiv(sph, cl, W, 1.0, h);
    double err = max_abs_diff(quot.comp, exact.comp);
    if (err > 5.0 * h) pass = false;
    detail += "h=" + fmt(h) + " err=" + fmt(err) + " ";
  }
  return {pass, detail};
}

std::pair<bool, std::string> compatibility_koszul_torsion() {
  geom::SplitMix64 rng(2032);
  double nabla_g = 0.0, koszul = 0.0, torsion = 0.0;
  for (const auto& spec : all_presets()) {
    // closed-form tensor, so the covariant derivative uses exact partials
    geom::TensorField T;
    T.rank = 2;
    T.eval = [&spec](const Point& q) {
      geom::SymMatrix g = geom::metric_at(spec, q);
      return std::vector<double>(g.data().begin(), g.data().end());
    };
    T.partials = [&spec](const Point& q) {
      auto D = geom::metric_partials_at(spec, q);
      std::vector<double> out;
      for (const auto& d : D) out.insert(out.end(), d.data().begin(), d.data().end());
      return out;
    };
    for (int i = 0; i < 50; ++i) {
      Point p = interior(spec, rng, 1e-3);
      auto full = geom::covderiv_tensor_full(spec, T, p, 1e-5);
      for (double v : full) nabla_g = std::max(nabla_g, std::fabs(v));
      torsion = std::max(torsion, geom::torsion_residual(spec, p));
      auto X = geom::checks::random_polynomial_field(spec, p, rng, 3);
      auto Y = geom::checks::random_polynomial_field(spec, p, rng, 3);
      auto Z = geom::checks::random_polynomial_field(spec, p, rng, 3);
      koszul = std::max(koszul, geom::koszul_residual(spec, X, Y, Z, p));
    }
  }
  bool pass = nabla_g <= 1e-7 && koszul <= 1e-9 && torsion == 0.0;
  return {pass, "nabla_g " + fmt(nabla_g) + ", koszul " + fmt(koszul) + ", torsion " +
                    fmt(torsion)};
}

std::pair<bool, std::string> gradient_duality() {
  geom::SplitMix64 rng(2033);
  double worst = 0.0;
  for (const auto& spec : all_presets()) {
    for (int i = 0; i < 100; ++i) {
      Point p = geom::sample_point(spec, rng);
      geom::Expr f =
          geom::parse_scalar_field(spec, geom::checks::centered_polynomial(spec, p, rng, 3));
      std::vector<double> xv(spec.dim);
      for (int k = 0; k < spec.dim; ++k) xv[k] = rng.uniform(-1.0, 1.0);
      geom::TangentVector grad = geom::gradient_at(spec, f, p);
      double lhs = geom::inner_at(spec, grad, {p, xv});
      geom::Dual1 df = geom::eval_dual1_indexed(f, spec.bind_dual1(p));
      double rhs = 0.0;
      for (int k = 0; k < spec.dim; ++k) rhs += xv[k] * df.grad(k);
      worst = std::max(worst, std::fabs(lhs - rhs));
    }
  }
  return {worst <= 1e-9, "max |<grad f, X> - Xf| = " + fmt(worst)};
}

std::pair<bool, std::string> linear_algebra() {
  geom::SplitMix64 rng(2034);
  struct Case {
    MetricSpec spec;
    int nu;
  };
  std::vector<Case> cases;
  cases.push_back({preset("semi_euclidean", {{"dim", 4}, {"index", 1}}), 1});
  cases.push_back({preset("semi_euclidean", {{"dim", 3}, {"index", 0}}), 0});
  cases.push_back({preset("sphere", {{"r", 1.0}}), 0});
  cases.push_back({preset("hyperbolic_halfplane"), 0});
  cases.push_back({preset("schwarzschild", {{"M", 1.0}}), 1});
  double worst = 0.0;
  for (auto& cs : cases) {
    for (int i = 0; i < 20; ++i) {
      geom::SymMatrix g = geom::metric_at(cs.spec, geom::sample_point(cs.spec, rng));
      if (geom::index_of(g) != cs.nu) return {false, "index mismatch on " + cs.spec.name};
      auto ob = geom::orthonormal_basis(g);
      int negs = 0;
      for (int k = 0; k < g.dim(); ++k)
        if (ob.signs[k] < 0) ++negs;
      if (negs != cs.nu) return {false, "sign count mismatch on " + cs.spec.name};
      // B^T g B = diag(signs)
      int m = g.dim();
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          double dot = 0.0;
          for (int i2 = 0; i2 < m; ++i2)
            for (int j2 = 0; j2 < m; ++j2)
              dot += ob.basis[static_cast<std::size_t>(i2) * m + a] * g(i2, j2) *
                     ob.basis[static_cast<std::size_t>(j2) * m + b];
          double want = a == b ? static_cast<double>(ob.signs[a]) : 0.0;
          worst = std::max(worst, std::fabs(dot - want));
        }
    }
  }
  return {worst <= 1e-10, "max |B^T g B - diag(eps)| = " + fmt(worst)};
}

std::pair<bool, std::string> autodiff_and_rk4_order() {
  // duals vs central differences over 200 random expressions
  geom::SplitMix64 rng(2035);
  const std::vector<std::string> vars = {"x", "y"};
  int checked = 0;
  double worst = 0.0;
  while (checked < 200) {
    std::string text = oracles::random_expression(rng, vars, 4);
    geom::Expr e = geom::parse(text, vars);
    double px = rng.uniform(-2.0, 2.0), py = rng.uniform(-2.0, 2.0);
    geom::Bindings at = {{"x", px}, {"y", py}};
    geom::Dual1 d1;
    geom::Dual2 d2;
    double fd[2];
    try {
      d1 = geom::eval_dual1(e, at, vars);
      d2 = geom::eval_dual2(e, at, vars);
      for (int k = 0; k < 2; ++k) {
        auto f = [&](double v) {
          geom::Bindings b = at;
          b[vars[k]] = v;
          return geom::eval_real(e, b);
        };
        fd[k] = oracles::central_diff(f, k == 0 ? px : py);
      }
    } catch (const geom::DomainError&) {
      continue;
    }
    bool tame = std::isfinite(d1.value()) && std::fabs(d1.value()) <= 1e3;
    for (int k = 0; k < 2; ++k)
      if (std::fabs(d1.grad(k)) > 1e3) tame = false;
    if (!tame) continue;
    ++checked;
    for (int k = 0; k < 2; ++k) {
      worst = std::max(worst,
                       std::fabs(d1.grad(k) - fd[k]) / (1.0 + std::fabs(d1.grad(k))));
      if (d2.grad(k) != d1.grad(k)) return {false, "dual2 gradient differs from dual1"};
    }
  }

  // RK4 order on the sphere latitude closed form
  MetricSpec sph = preset("sphere", {{"r", 1.0}});
  std::vector<std::string> lat = {"pi/3", "t"};
  geom::CurveSpec cl = geom::make_analytic_curve(sph, lat, -0.5, 2.0 * M_PI + 0.5);
  std::vector<double> v0 = {1.0, 0.0};
  auto err = [&](double dt) {
    SolverConfig cfg;
    cfg.dt = dt;
    auto got = geom::parallel_transport(sph, cl, 0.0, 2.0 * M_PI, v0, cfg);
    // rotation by 2 pi cos(pi/3) = pi maps v to -v
    return std::max(std::fabs(got[0] + 1.0), std::fabs(got[1]));
  };
  double ratio = err(0.02) / err(0.01);
  bool pass = worst <= 1e-6 && ratio >= 12.0 && ratio <= 20.0;
  return {pass, "max fd deviation " + fmt(worst) + ", rk4 ratio " + fmt(ratio)};
}

std::pair<bool, std::string> cli_determinism() {
  const std::string cmd = std::string(GEOM_CLI_PATH) +
                          " verify --preset sphere --param r=1 --samples 50 --seed 7 2>/dev/null";
  auto capture = [&](int& exit_code) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw geom::Error("popen failed");
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
  };
  int code1 = -1, code2 = -1;
  std::string run1 = capture(code1);
  std::string run2 = capture(code2);
  bool pass = code1 == 0 && code2 == 0 && run1 == run2 && !run1.empty();
  return {pass, "exit codes " + std::to_string(code1) + "/" + std::to_string(code2) +
                    (run1 == run2 ? ", byte-identical" : ", OUTPUT DIFFERS")};
}

}  // namespace

int main() {
  run(1, "flatness of semi-Euclidean charts", flatness);
  run(2, "sphere scalar and Ricci curvature", sphere_curvature);
  run(3, "hyperbolic half-plane scalar curvature", halfplane_scalar);
  run(4, "Schwarzschild vacuum Ricci", schwarzschild_vacuum);
  run(5, "geodesic constant speed", geodesic_constant_speed);
  run(6, "hyperbolic vertical geodesic endpoint", hyperbolic_vertical);
  run(7, "parallel transport isometry and inverse", transport_isometry);
  run(8, "latitude-loop holonomy closed form", holonomy_closed_form);
  run(9, "Riemann symmetries and first Bianchi", riemann_symmetries);
  run(10, "second Bianchi identity", second_bianchi);
  run(11, "curvature-commutator lemma", commutator_lemma);
  run(12, "holonomy-limit convergence", holonomy_limit);
  run(13, "transport-limit difference quotient", transport_limit);
  run(14, "metric compatibility, Koszul, torsion", compatibility_koszul_torsion);
  run(15, "gradient duality", gradient_duality);
  run(16, "index and orthonormal basis", linear_algebra);
  run(17, "autodiff vs finite differences, RK4 order", autodiff_and_rk4_order);
  run(18, "CLI determinism", cli_determinism);

  if (g_failures == 0) {
    std::printf("acceptance: all 18 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
