// ODE layer: covariant derivatives along curves, parallel transport and
// frames, geodesic shooting, speed and arc length, the transport-limit
// difference quotient, and covariant derivatives along one-parameter
// families. All integration is fixed-step classical 4th-order Runge-Kutta;
// the requested span is divided into uniform steps no longer than dt, so a
// given (curve, dt) pair reproduces exactly.
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "geom/connection.hpp"

namespace geom {

struct SolverConfig {
  double dt = 1e-3;
  long max_steps = 2'000'000;
};

enum class Termination { completed, domain_escape, max_steps };

const char* to_string(Termination t);

// Time-stamped samples of an integrated curve; t strictly monotone.
struct Trajectory {
  int dim = 0;
  std::vector<double> t;
  std::vector<double> x;  // samples * dim
  std::vector<double> v;  // samples * dim
  Termination termination = Termination::completed;
  double t_exit = 0.0;  // last retained sample time when terminated early

  std::size_t samples() const { return t.size(); }
  std::span<const double> point(std::size_t i) const {
    return {x.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
  std::span<const double> velocity(std::size_t i) const {
    return {v.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
};

// header t,x1..xm,v1..vm; one row per sample, 17 significant digits; final
// comment line records the termination reason
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

// Analytic curve: one expression per coordinate in a single running variable
// (plus chart parameters and optional frozen bindings).
struct AnalyticCurve {
  std::string param = "t";
  std::vector<Expr> comp;
  double t_lo = 0.0, t_hi = 0.0;
  std::vector<std::pair<std::string, double>> fixed;
};

struct CurveSpec {
  std::variant<AnalyticCurve, Trajectory> rep;

  bool analytic() const { return std::holds_alternative<AnalyticCurve>(rep); }
  std::pair<double, double> interval() const;
};

CurveSpec make_analytic_curve(const MetricSpec& spec, std::span<const std::string> exprs,
                              double t_lo, double t_hi);
CurveSpec make_numeric_curve(Trajectory traj);

// Position and velocity at parameter t. Analytic curves differentiate the
// expressions; numeric curves use cubic Hermite interpolation between the
// stored samples.
std::pair<Point, std::vector<double>> curve_state(const MetricSpec& spec, const CurveSpec& c,
                                                  double t);

// expressions of the single variable t for a field along a curve
std::vector<Expr> parse_curve_field(const MetricSpec& spec, std::span<const std::string> exprs);

// (DV)^i = Vdot^i + sum_{j,k} cdot_j Gamma^i_{jk} V^k
TangentVector covderiv_along_curve(const MetricSpec& spec, const CurveSpec& c,
                                   std::span<const Expr> V, double t);

// Solves fdot_i = -sum_{j,k} cdot_j Gamma^i_{jk} f_k from t0 to t1 (either
// order) and returns the transported components.
std::vector<double> parallel_transport(const MetricSpec& spec, const CurveSpec& c, double t0,
                                       double t1, const std::vector<double>& v,
                                       const SolverConfig& cfg = {});

struct FrameTrajectory {
  int dim = 0;
  std::vector<double> t;
  std::vector<double> frames;  // samples * dim * dim, row-major, columns are vectors
  double min_abs_det = 0.0;

  std::span<const double> frame(std::size_t i) const {
    std::size_t mm = static_cast<std::size_t>(dim) * dim;
    return {frames.data() + i * mm, mm};
  }
};

// Transports every column of `basis` from t0 to t1, recording each step.
FrameTrajectory parallel_frame(const MetricSpec& spec, const CurveSpec& c, double t0, double t1,
                               const std::vector<double>& basis, const SolverConfig& cfg = {});

// Integrates xddot_i + Gamma^i_{jk} xdot_j xdot_k = 0 from (p, v) over
// [t0, t1]; stops at the last interior sample when the chart is escaped.
Trajectory geodesic_shoot(const MetricSpec& spec, const Point& p, const std::vector<double>& v,
                          double t0, double t1, const SolverConfig& cfg = {});

// |<cdot, cdot>|^(1/2)
double speed_at(const MetricSpec& spec, const CurveSpec& c, double t);

// composite Simpson quadrature of the speed over [a, b]
double curve_length(const MetricSpec& spec, const CurveSpec& c, double a, double b, int n_quad);

// difference quotient (P_{t+h -> t} V(t+h) - V(t)) / h with transport at
// fine step h/100
TangentVector transport_limit_covderiv(const MetricSpec& spec, const CurveSpec& c,
                                       std::span<const Expr> V, double t, double h);

// One-parameter family of curves: expressions of (s, t) on a rectangle.
struct FamilySpec {
  std::vector<Expr> comp;
  double s_lo = 0.0, s_hi = 0.0, t_lo = 0.0, t_hi = 0.0;
};

FamilySpec make_family(const MetricSpec& spec, std::span<const std::string> exprs, double s_lo,
                       double s_hi, double t_lo, double t_hi);

// expressions of (s, t) for a field along a family
std::vector<Expr> parse_family_field(const MetricSpec& spec, std::span<const std::string> exprs);

Point family_point(const MetricSpec& spec, const FamilySpec& fam, double s, double t);

// (ds fam, dt fam) at (s, t)
std::pair<std::vector<double>, std::vector<double>> family_velocities(const MetricSpec& spec,
                                                                      const FamilySpec& fam,
                                                                      double s, double t);

// components of a family field at (s, t)
std::vector<double> eval_family_field(const MetricSpec& spec, const FamilySpec& fam,
                                      std::span<const Expr> W, double s, double t);

// D1 differentiates in s along transverse curves, D2 in t along longitudinal
// curves; returns (D1 W, D2 W) at (s, t).
std::pair<TangentVector, TangentVector> family_covderivs(const MetricSpec& spec,
                                                         const FamilySpec& fam,
                                                         std::span<const Expr> W, double s,
                                                         double t);

// curve obtained by freezing one family variable ("s" or "t")
CurveSpec family_curve(const MetricSpec& spec, const FamilySpec& fam, const std::string& running,
                       double frozen_value, double lo, double hi);

}  // namespace geom
