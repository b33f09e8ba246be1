// One coordinate chart of a semi-Riemannian manifold: spec loading and
// validation, pointwise evaluation of g and its first/second partials,
// metric-induced product, flat/sharp, gradient, and built-in presets.
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "geom/expr.hpp"
#include "geom/linalg.hpp"
#include "geom/rng.hpp"

namespace geom {

// Open box; +-infinity allowed on either side.
struct DomainBox {
  std::vector<double> lower, upper;
  bool contains(std::span<const double> x) const {
    for (std::size_t i = 0; i < lower.size(); ++i)
      if (!(x[i] > lower[i] && x[i] < upper[i])) return false;
    return true;
  }
};

struct Point {
  std::vector<double> x;
};

struct TangentVector {
  Point base;
  std::vector<double> comp;
};

struct Covector {
  Point base;
  std::vector<double> comp;
};

class MetricSpec {
 public:
  std::string name;
  int dim = 0;
  std::vector<std::string> coords;
  DomainBox domain;
  std::vector<Expr> g_exprs;  // row-major dim x dim
  std::vector<std::pair<std::string, double>> params;

  // Declared-variable order shared by every expression evaluated against this
  // chart: coordinates first, parameters after.
  std::vector<std::string> variable_order;  // size dim + params
  std::vector<double> param_values;         // aligned with the parameter tail

  const Expr& g(int i, int j) const { return g_exprs[static_cast<std::size_t>(i) * dim + j]; }

  // value array for the fast indexed evaluation path
  std::vector<double> bind(const Point& p) const;
  std::vector<Dual1> bind_dual1(const Point& p) const;
  std::vector<Dual2> bind_dual2(const Point& p) const;

  void finalize();  // fills variable_order / param_values, parses nothing
};

MetricSpec load_spec(const std::string& json_text);
MetricSpec load_spec_file(const std::string& path);

// semi_euclidean (params dim, index), sphere (param r), hyperbolic_halfplane,
// schwarzschild (param M)
MetricSpec preset(const std::string& name, const std::map<std::string, double>& params = {});

// parse an expression over this chart's coordinates and parameters
Expr parse_scalar_field(const MetricSpec& spec, std::string_view text);

SymMatrix metric_at(const MetricSpec& spec, const Point& p);

// D[k](i,j) = d_k g_ij, each D[k] symmetrized in (i,j)
std::vector<SymMatrix> metric_partials_at(const MetricSpec& spec, const Point& p);

// H[l*dim+k](i,j) = d_l d_k g_ij; symmetric in (l,k) and in (i,j)
std::vector<SymMatrix> metric_second_partials_at(const MetricSpec& spec, const Point& p);

double inner_at(const MetricSpec& spec, const TangentVector& v, const TangentVector& w);

Covector flat_field_at(const MetricSpec& spec, const TangentVector& v);
TangentVector sharp_field_at(const MetricSpec& spec, const Covector& omega);

// comp_j = sum_i ginv_ji d_i f, partials via first-order duals
TangentVector gradient_at(const MetricSpec& spec, const Expr& f, const Point& p);

struct ValidationReport {
  double symmetry_max = 0.0;        // worst relative |g_ij - g_ji| seen
  double min_abs_eigenvalue = 0.0;  // over all samples
  int index = -1;                   // constant index, or the first sample's
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Samples n points uniformly in the domain box (unbounded sides clipped to
// [-10, 10]), checks symmetry, non-degeneracy, and constancy of the index.
// Deterministic for a given seed.
ValidationReport validate_spec(const MetricSpec& spec, int n_samples, std::uint64_t seed,
                               double tol = 1e-10);

// One uniform sample in the clipped domain box.
Point sample_point(const MetricSpec& spec, SplitMix64& rng);

void require_in_domain(const MetricSpec& spec, const Point& p);

}  // namespace geom
