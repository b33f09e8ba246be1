#include "geom/transport.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace geom {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::domain_escape: return "domain_escape";
    case Termination::max_steps: return "max_steps";
  }
  return "?";
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
  os << "t";
  for (int i = 1; i <= traj.dim; ++i) os << ",x" << i;
  for (int i = 1; i <= traj.dim; ++i) os << ",v" << i;
  os << "\n";
  char buf[40];
  for (std::size_t s = 0; s < traj.samples(); ++s) {
    std::snprintf(buf, sizeof(buf), "%.17g", traj.t[s]);
    os << buf;
    auto p = traj.point(s);
    auto v = traj.velocity(s);
    for (int i = 0; i < traj.dim; ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", p[i]);
      os << ',' << buf;
    }
    for (int i = 0; i < traj.dim; ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
      os << ',' << buf;
    }
    os << "\n";
  }
  os << "# termination=" << to_string(traj.termination);
  if (traj.termination != Termination::completed) {
    std::snprintf(buf, sizeof(buf), "%.17g", traj.t_exit);
    os << " t_exit=" << buf;
  }
  os << "\n";
}

std::pair<double, double> CurveSpec::interval() const {
  if (analytic()) {
    const auto& a = std::get<AnalyticCurve>(rep);
    return {a.t_lo, a.t_hi};
  }
  const auto& tr = std::get<Trajectory>(rep);
  if (tr.t.empty()) return {0.0, 0.0};
  return {tr.t.front(), tr.t.back()};
}

CurveSpec make_analytic_curve(const MetricSpec& spec, std::span<const std::string> exprs,
                              double t_lo, double t_hi) {
  if (static_cast<int>(exprs.size()) != spec.dim)
    throw DimensionMismatch("curve needs one expression per coordinate");
  AnalyticCurve c;
  c.t_lo = t_lo;
  c.t_hi = t_hi;
  std::vector<std::string> allowed;
  allowed.push_back(c.param);
  for (const auto& [k, v] : spec.params) allowed.push_back(k);
  for (const auto& e : exprs) c.comp.push_back(parse(e, allowed));
  return CurveSpec{std::move(c)};
}

CurveSpec make_numeric_curve(Trajectory traj) { return CurveSpec{std::move(traj)}; }

std::vector<Expr> parse_curve_field(const MetricSpec& spec, std::span<const std::string> exprs) {
  if (static_cast<int>(exprs.size()) != spec.dim)
    throw DimensionMismatch("curve field needs one expression per coordinate");
  std::vector<std::string> allowed;
  allowed.push_back("t");
  for (const auto& [k, v] : spec.params) allowed.push_back(k);
  std::vector<Expr> out;
  for (const auto& e : exprs) out.push_back(parse(e, allowed));
  return out;
}

namespace {

// value/derivative bindings for an analytic curve's own variable list
std::vector<Dual1> curve_bindings(const MetricSpec& spec, const AnalyticCurve& c, double t,
                                  const Expr& sample_expr) {
  const auto& vars = sample_expr.variables();
  std::vector<Dual1> by_index(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string& name = vars[i];
    if (name == c.param) {
      by_index[i] = Dual1::variable(t, 1, 0);
      continue;
    }
    bool found = false;
    for (const auto& [k, v] : c.fixed)
      if (k == name) {
        by_index[i] = Dual1::constant(v, 1);
        found = true;
        break;
      }
    if (found) continue;
    for (std::size_t k = 0; k < spec.params.size(); ++k)
      if (spec.params[k].first == name) {
        by_index[i] = Dual1::constant(spec.param_values[k], 1);
        found = true;
        break;
      }
    if (!found) throw UnknownIdentifier(name);
  }
  return by_index;
}

std::pair<std::vector<double>, std::vector<double>> analytic_state(const MetricSpec& spec,
                                                                   const AnalyticCurve& c,
                                                                   double t) {
  std::vector<double> x(spec.dim), v(spec.dim);
  for (int i = 0; i < spec.dim; ++i) {
    auto binds = curve_bindings(spec, c, t, c.comp[i]);
    Dual1 d = eval_dual1_indexed(c.comp[i], binds);
    x[i] = d.value();
    v[i] = d.grad(0);
  }
  return {x, v};
}

// cubic Hermite between bracketing samples, using stored velocities
std::pair<std::vector<double>, std::vector<double>> numeric_state(const Trajectory& tr,
                                                                  double t) {
  const int m = tr.dim;
  if (tr.samples() == 0) throw OutOfInterval("numeric curve has no samples");
  if (t < tr.t.front() || t > tr.t.back())
    throw OutOfInterval("curve parameter outside the stored trajectory");
  if (tr.samples() == 1 || t == tr.t.back()) {
    std::size_t i = tr.samples() - 1;
    return {{tr.point(i).begin(), tr.point(i).end()},
            {tr.velocity(i).begin(), tr.velocity(i).end()}};
  }
  auto it = std::upper_bound(tr.t.begin(), tr.t.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - tr.t.begin());
  if (hi == 0) hi = 1;
  std::size_t lo = hi - 1;
  double dt = tr.t[hi] - tr.t[lo];
  double s = (t - tr.t[lo]) / dt;
  double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
  double h10 = s * (1.0 - s) * (1.0 - s);
  double h01 = s * s * (3.0 - 2.0 * s);
  double h11 = s * s * (s - 1.0);
  double g00 = 6.0 * s * (s - 1.0);
  double g10 = (1.0 - s) * (1.0 - 3.0 * s);
  double g01 = -g00;
  double g11 = s * (3.0 * s - 2.0);
  std::vector<double> x(m), v(m);
  auto p0 = tr.point(lo), p1 = tr.point(hi);
  auto v0 = tr.velocity(lo), v1 = tr.velocity(hi);
  for (int i = 0; i < m; ++i) {
    x[i] = h00 * p0[i] + h10 * dt * v0[i] + h01 * p1[i] + h11 * dt * v1[i];
    v[i] = (g00 * p0[i] + g01 * p1[i]) / dt + g10 * v0[i] + g11 * v1[i];
  }
  return {x, v};
}

std::pair<std::vector<double>, std::vector<double>> raw_state(const MetricSpec& spec,
                                                              const CurveSpec& c, double t) {
  auto [lo, hi] = c.interval();
  if (t < lo || t > hi) throw OutOfInterval("curve parameter outside the interval");
  if (c.analytic()) return analytic_state(spec, std::get<AnalyticCurve>(c.rep), t);
  return numeric_state(std::get<Trajectory>(c.rep), t);
}

}  // namespace

std::pair<Point, std::vector<double>> curve_state(const MetricSpec& spec, const CurveSpec& c,
                                                  double t) {
  auto [x, v] = raw_state(spec, c, t);
  Point p{std::move(x)};
  require_in_domain(spec, p);
  return {std::move(p), std::move(v)};
}

TangentVector covderiv_along_curve(const MetricSpec& spec, const CurveSpec& c,
                                   std::span<const Expr> V, double t) {
  const int m = spec.dim;
  auto [p, cdot] = curve_state(spec, c, t);
  ChristoffelAt gamma = christoffel_at(spec, p);

  std::vector<double> vv(m), vdot(m);
  for (int i = 0; i < m; ++i) {
    std::vector<Dual1> binds;
    const auto& vars = V[i].variables();
    binds.resize(vars.size());
    for (std::size_t q = 0; q < vars.size(); ++q) {
      if (vars[q] == "t") {
        binds[q] = Dual1::variable(t, 1, 0);
      } else {
        bool found = false;
        for (std::size_t k = 0; k < spec.params.size(); ++k)
          if (spec.params[k].first == vars[q]) {
            binds[q] = Dual1::constant(spec.param_values[k], 1);
            found = true;
            break;
          }
        if (!found) throw UnknownIdentifier(vars[q]);
      }
    }
    Dual1 d = eval_dual1_indexed(V[i], binds);
    vv[i] = d.value();
    vdot[i] = d.grad(0);
  }

  std::vector<double> out(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double s = vdot[i];
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) s += cdot[j] * gamma.at(i, j, k) * vv[k];
    out[i] = s;
  }
  return TangentVector{p, out};
}

namespace {

// -Gamma(cdot) as a matrix: A_ik = -sum_j cdot_j Gamma^i_{jk}
std::vector<double> transport_matrix(const MetricSpec& spec, const CurveSpec& c, double t) {
  const int m = spec.dim;
  auto [p, cdot] = curve_state(spec, c, t);
  ChristoffelAt gamma = christoffel_at(spec, p);
  std::vector<double> A(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      double s = 0.0;
      for (int j = 0; j < m; ++j) s += cdot[j] * gamma.at(i, j, k);
      A[static_cast<std::size_t>(i) * m + k] = -s;
    }
  return A;
}

void matvec_into(const std::vector<double>& A, const std::vector<double>& f, int m, int cols,
                 std::vector<double>& out) {
  for (int c = 0; c < cols; ++c)
    for (int i = 0; i < m; ++i) {
      double s = 0.0;
      for (int k = 0; k < m; ++k)
        s += A[static_cast<std::size_t>(i) * m + k] * f[static_cast<std::size_t>(k) * cols + c];
      out[static_cast<std::size_t>(i) * cols + c] = s;
    }
}

// RK4 for the linear system F' = A(t) F with `cols` right-hand columns,
// recording samples when `record` is set
void integrate_linear(const MetricSpec& spec, const CurveSpec& c, double t0, double t1,
                      std::vector<double>& F, int cols, const SolverConfig& cfg,
                      FrameTrajectory* record) {
  const int m = spec.dim;
  double span = t1 - t0;
  if (record) {
    record->dim = m;
    record->t.push_back(t0);
    record->frames.insert(record->frames.end(), F.begin(), F.end());
  }
  if (span == 0.0) return;
  double n_real = std::ceil(std::fabs(span) / cfg.dt);
  if (n_real > static_cast<double>(cfg.max_steps))
    throw MaxStepsExceeded("transport needs " + std::to_string(n_real) + " steps");
  long n = std::max(1L, static_cast<long>(n_real));
  double h = span / static_cast<double>(n);

  std::vector<double> k1(F.size()), k2(F.size()), k3(F.size()), k4(F.size()), tmp(F.size());
  for (long step = 0; step < n; ++step) {
    double t = t0 + static_cast<double>(step) * h;
    auto A0 = transport_matrix(spec, c, t);
    auto Ah = transport_matrix(spec, c, t + 0.5 * h);
    auto A1 = transport_matrix(spec, c, t + h);

    matvec_into(A0, F, m, cols, k1);
    for (std::size_t q = 0; q < F.size(); ++q) tmp[q] = F[q] + 0.5 * h * k1[q];
    matvec_into(Ah, tmp, m, cols, k2);
    for (std::size_t q = 0; q < F.size(); ++q) tmp[q] = F[q] + 0.5 * h * k2[q];
    matvec_into(Ah, tmp, m, cols, k3);
    for (std::size_t q = 0; q < F.size(); ++q) tmp[q] = F[q] + h * k3[q];
    matvec_into(A1, tmp, m, cols, k4);
    for (std::size_t q = 0; q < F.size(); ++q)
      F[q] += (h / 6.0) * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]);

    if (record) {
      record->t.push_back(t + h);
      record->frames.insert(record->frames.end(), F.begin(), F.end());
    }
  }
}

double det_general(std::vector<double> A, int m) {
  double det = 1.0;
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::fabs(A[static_cast<std::size_t>(r) * m + col]) >
          std::fabs(A[static_cast<std::size_t>(piv) * m + col]))
        piv = r;
    if (piv != col) {
      for (int j = 0; j < m; ++j)
        std::swap(A[static_cast<std::size_t>(piv) * m + j],
                  A[static_cast<std::size_t>(col) * m + j]);
      det = -det;
    }
    double p = A[static_cast<std::size_t>(col) * m + col];
    det *= p;
    if (p == 0.0) return 0.0;
    for (int r = col + 1; r < m; ++r) {
      double f = A[static_cast<std::size_t>(r) * m + col] / p;
      for (int j = col; j < m; ++j)
        A[static_cast<std::size_t>(r) * m + j] -= f * A[static_cast<std::size_t>(col) * m + j];
    }
  }
  return det;
}

}  // namespace

std::vector<double> parallel_transport(const MetricSpec& spec, const CurveSpec& c, double t0,
                                       double t1, const std::vector<double>& v,
                                       const SolverConfig& cfg) {
  if (static_cast<int>(v.size()) != spec.dim)
    throw DimensionMismatch("transported vector has wrong dimension");
  std::vector<double> F(v.begin(), v.end());
  integrate_linear(spec, c, t0, t1, F, 1, cfg, nullptr);
  return F;
}

FrameTrajectory parallel_frame(const MetricSpec& spec, const CurveSpec& c, double t0, double t1,
                               const std::vector<double>& basis, const SolverConfig& cfg) {
  const int m = spec.dim;
  if (static_cast<int>(basis.size()) != m * m)
    throw DimensionMismatch("frame must be a dim x dim matrix");
  std::vector<double> F(basis.begin(), basis.end());
  double d0 = det_general(F, m);
  if (std::fabs(d0) <= 1e-12) throw SingularFrame("initial frame is singular");

  FrameTrajectory out;
  integrate_linear(spec, c, t0, t1, F, m, cfg, &out);

  out.min_abs_det = std::fabs(d0);
  for (std::size_t s = 0; s < out.t.size(); ++s) {
    auto fr = out.frame(s);
    out.min_abs_det =
        std::min(out.min_abs_det, std::fabs(det_general({fr.begin(), fr.end()}, m)));
  }
  return out;
}

Trajectory geodesic_shoot(const MetricSpec& spec, const Point& p, const std::vector<double>& v,
                          double t0, double t1, const SolverConfig& cfg) {
  const int m = spec.dim;
  require_in_domain(spec, p);
  if (static_cast<int>(v.size()) != m)
    throw DimensionMismatch("initial velocity has wrong dimension");

  Trajectory traj;
  traj.dim = m;

  std::vector<double> x(p.x), u(v.begin(), v.end());
  auto record = [&](double t) {
    traj.t.push_back(t);
    traj.x.insert(traj.x.end(), x.begin(), x.end());
    traj.v.insert(traj.v.end(), u.begin(), u.end());
  };
  record(t0);

  double span = t1 - t0;
  if (span == 0.0) return traj;
  double n_real = std::ceil(std::fabs(span) / cfg.dt);
  long n;
  double h;
  if (n_real > static_cast<double>(cfg.max_steps)) {
    n = cfg.max_steps;
    h = (span > 0.0 ? cfg.dt : -cfg.dt);
    traj.termination = Termination::max_steps;
  } else {
    n = std::max(1L, static_cast<long>(n_real));
    h = span / static_cast<double>(n);
  }

  // acceleration u'_i = -Gamma^i_{jk} u_j u_k at position x
  auto accel = [&](const std::vector<double>& xx, const std::vector<double>& uu,
                   std::vector<double>& a) {
    ChristoffelAt gamma = christoffel_at(spec, Point{xx});
    for (int i = 0; i < m; ++i) {
      double s = 0.0;
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) s += gamma.at(i, j, k) * uu[j] * uu[k];
      a[i] = -s;
    }
  };

  std::vector<double> kx1(m), ku1(m), kx2(m), ku2(m), kx3(m), ku3(m), kx4(m), ku4(m);
  std::vector<double> xs(m), us(m);
  for (long step = 0; step < n; ++step) {
    double t = traj.t.back();
    bool escaped = false;
    try {
      kx1 = u;
      accel(x, u, ku1);
      for (int i = 0; i < m; ++i) {
        xs[i] = x[i] + 0.5 * h * kx1[i];
        us[i] = u[i] + 0.5 * h * ku1[i];
      }
      kx2 = us;
      accel(xs, us, ku2);
      for (int i = 0; i < m; ++i) {
        xs[i] = x[i] + 0.5 * h * kx2[i];
        us[i] = u[i] + 0.5 * h * ku2[i];
      }
      kx3 = us;
      accel(xs, us, ku3);
      for (int i = 0; i < m; ++i) {
        xs[i] = x[i] + h * kx3[i];
        us[i] = u[i] + h * ku3[i];
      }
      kx4 = us;
      accel(xs, us, ku4);
      for (int i = 0; i < m; ++i) {
        xs[i] = x[i] + (h / 6.0) * (kx1[i] + 2.0 * kx2[i] + 2.0 * kx3[i] + kx4[i]);
        us[i] = u[i] + (h / 6.0) * (ku1[i] + 2.0 * ku2[i] + 2.0 * ku3[i] + ku4[i]);
      }
      if (!spec.domain.contains(xs)) escaped = true;
    } catch (const OutOfChart&) {
      escaped = true;
    } catch (const DomainError&) {
      escaped = true;
    }
    if (escaped) {
      // the step that exits is discarded; the trajectory ends at the last
      // interior sample
      traj.termination = Termination::domain_escape;
      traj.t_exit = t;
      return traj;
    }
    x = xs;
    u = us;
    record(t + h);
  }
  if (traj.termination == Termination::max_steps) traj.t_exit = traj.t.back();
  return traj;
}

double speed_at(const MetricSpec& spec, const CurveSpec& c, double t) {
  auto [p, cdot] = curve_state(spec, c, t);
  SymMatrix g = metric_at(spec, p);
  double s = 0.0;
  for (int i = 0; i < spec.dim; ++i)
    for (int j = 0; j < spec.dim; ++j) s += g(i, j) * cdot[i] * cdot[j];
  return std::sqrt(std::fabs(s));
}

double curve_length(const MetricSpec& spec, const CurveSpec& c, double a, double b, int n_quad) {
  if (n_quad < 2) throw Error("curve_length needs n_quad >= 2");
  if (!(a <= b)) throw OutOfInterval("curve_length needs a <= b");
  int n = n_quad % 2 == 0 ? n_quad : n_quad + 1;
  double h = (b - a) / static_cast<double>(n);
  double acc = speed_at(spec, c, a) + speed_at(spec, c, b);
  for (int i = 1; i < n; ++i)
    acc += speed_at(spec, c, a + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

TangentVector transport_limit_covderiv(const MetricSpec& spec, const CurveSpec& c,
                                       std::span<const Expr> V, double t, double h) {
  const int m = spec.dim;
  auto eval_V = [&](double tt) {
    std::vector<double> out(m);
    for (int i = 0; i < m; ++i) {
      const auto& vars = V[i].variables();
      std::vector<double> binds(vars.size());
      for (std::size_t q = 0; q < vars.size(); ++q) {
        if (vars[q] == "t") {
          binds[q] = tt;
        } else {
          bool found = false;
          for (std::size_t k = 0; k < spec.params.size(); ++k)
            if (spec.params[k].first == vars[q]) {
              binds[q] = spec.param_values[k];
              found = true;
              break;
            }
          if (!found) throw UnknownIdentifier(vars[q]);
        }
      }
      out[i] = eval_real_indexed(V[i], binds);
    }
    return out;
  };

  SolverConfig cfg;
  cfg.dt = std::fabs(h) / 100.0;
  auto ahead = eval_V(t + h);
  auto back = parallel_transport(spec, c, t + h, t, ahead, cfg);
  auto here = eval_V(t);
  std::vector<double> out(m);
  for (int i = 0; i < m; ++i) out[i] = (back[i] - here[i]) / h;
  auto [p, cdot] = curve_state(spec, c, t);
  return TangentVector{p, out};
}

// --- one-parameter families ---------------------------------------------

FamilySpec make_family(const MetricSpec& spec, std::span<const std::string> exprs, double s_lo,
                       double s_hi, double t_lo, double t_hi) {
  if (static_cast<int>(exprs.size()) != spec.dim)
    throw DimensionMismatch("family needs one expression per coordinate");
  FamilySpec fam;
  fam.s_lo = s_lo;
  fam.s_hi = s_hi;
  fam.t_lo = t_lo;
  fam.t_hi = t_hi;
  std::vector<std::string> allowed{"s", "t"};
  for (const auto& [k, v] : spec.params) allowed.push_back(k);
  for (const auto& e : exprs) fam.comp.push_back(parse(e, allowed));
  return fam;
}

std::vector<Expr> parse_family_field(const MetricSpec& spec, std::span<const std::string> exprs) {
  if (static_cast<int>(exprs.size()) != spec.dim)
    throw DimensionMismatch("family field needs one expression per coordinate");
  std::vector<std::string> allowed{"s", "t"};
  for (const auto& [k, v] : spec.params) allowed.push_back(k);
  std::vector<Expr> out;
  for (const auto& e : exprs) out.push_back(parse(e, allowed));
  return out;
}

namespace {

// two-slot duals: slot 0 = s, slot 1 = t
std::vector<Dual1> family_bindings(const MetricSpec& spec, const Expr& e, double s, double t) {
  const auto& vars = e.variables();
  std::vector<Dual1> binds(vars.size());
  for (std::size_t q = 0; q < vars.size(); ++q) {
    if (vars[q] == "s") {
      binds[q] = Dual1::variable(s, 2, 0);
    } else if (vars[q] == "t") {
      binds[q] = Dual1::variable(t, 2, 1);
    } else {
      bool found = false;
      for (std::size_t k = 0; k < spec.params.size(); ++k)
        if (spec.params[k].first == vars[q]) {
          binds[q] = Dual1::constant(spec.param_values[k], 2);
          found = true;
          break;
        }
      if (!found) throw UnknownIdentifier(vars[q]);
    }
  }
  return binds;
}

}  // namespace

Point family_point(const MetricSpec& spec, const FamilySpec& fam, double s, double t) {
  Point p;
  p.x.resize(spec.dim);
  for (int i = 0; i < spec.dim; ++i) {
    auto binds = family_bindings(spec, fam.comp[i], s, t);
    p.x[i] = eval_dual1_indexed(fam.comp[i], binds).value();
  }
  require_in_domain(spec, p);
  return p;
}

std::pair<std::vector<double>, std::vector<double>> family_velocities(const MetricSpec& spec,
                                                                      const FamilySpec& fam,
                                                                      double s, double t) {
  std::vector<double> ds(spec.dim), dt(spec.dim);
  for (int i = 0; i < spec.dim; ++i) {
    auto binds = family_bindings(spec, fam.comp[i], s, t);
    Dual1 d = eval_dual1_indexed(fam.comp[i], binds);
    ds[i] = d.grad(0);
    dt[i] = d.grad(1);
  }
  return {ds, dt};
}

std::vector<double> eval_family_field(const MetricSpec& spec, const FamilySpec&,
                                      std::span<const Expr> W, double s, double t) {
  std::vector<double> out(spec.dim);
  for (int i = 0; i < spec.dim; ++i) {
    auto binds = family_bindings(spec, W[i], s, t);
    out[i] = eval_dual1_indexed(W[i], binds).value();
  }
  return out;
}

std::pair<TangentVector, TangentVector> family_covderivs(const MetricSpec& spec,
                                                         const FamilySpec& fam,
                                                         std::span<const Expr> W, double s,
                                                         double t) {
  const int m = spec.dim;
  Point p = family_point(spec, fam, s, t);
  auto [vs, vt] = family_velocities(spec, fam, s, t);
  ChristoffelAt gamma = christoffel_at(spec, p);

  std::vector<double> wv(m), ws(m), wt(m);
  for (int i = 0; i < m; ++i) {
    auto binds = family_bindings(spec, W[i], s, t);
    Dual1 d = eval_dual1_indexed(W[i], binds);
    wv[i] = d.value();
    ws[i] = d.grad(0);
    wt[i] = d.grad(1);
  }

  std::vector<double> d1(m), d2(m);
  for (int i = 0; i < m; ++i) {
    double a = ws[i], b = wt[i];
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        a += vs[j] * gamma.at(i, j, k) * wv[k];
        b += vt[j] * gamma.at(i, j, k) * wv[k];
      }
    d1[i] = a;
    d2[i] = b;
  }
  return {TangentVector{p, d1}, TangentVector{p, d2}};
}

CurveSpec family_curve(const MetricSpec&, const FamilySpec& fam, const std::string& running,
                       double frozen_value, double lo, double hi) {
  AnalyticCurve c;
  c.param = running;
  c.comp = fam.comp;
  c.t_lo = lo;
  c.t_hi = hi;
  c.fixed.emplace_back(running == "s" ? "t" : "s", frozen_value);
  return CurveSpec{std::move(c)};
}

}  // namespace geom
