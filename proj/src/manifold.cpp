#include "geom/manifold.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace geom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// validation samples in unbounded directions are drawn from [-10, 10]
constexpr double kSampleClip = 10.0;

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<double> MetricSpec::bind(const Point& p) const {
  std::vector<double> v(variable_order.size());
  for (int i = 0; i < dim; ++i) v[i] = p.x[i];
  for (std::size_t i = 0; i < param_values.size(); ++i) v[dim + i] = param_values[i];
  return v;
}

std::vector<Dual1> MetricSpec::bind_dual1(const Point& p) const {
  std::vector<Dual1> v(variable_order.size());
  for (int i = 0; i < dim; ++i) v[i] = Dual1::variable(p.x[i], dim, i);
  for (std::size_t i = 0; i < param_values.size(); ++i)
    v[dim + i] = Dual1::constant(param_values[i], dim);
  return v;
}

std::vector<Dual2> MetricSpec::bind_dual2(const Point& p) const {
  std::vector<Dual2> v(variable_order.size());
  for (int i = 0; i < dim; ++i) v[i] = Dual2::variable(p.x[i], dim, i);
  for (std::size_t i = 0; i < param_values.size(); ++i)
    v[dim + i] = Dual2::constant(param_values[i], dim);
  return v;
}

void MetricSpec::finalize() {
  variable_order = coords;
  param_values.clear();
  for (const auto& [k, v] : params) {
    variable_order.push_back(k);
    param_values.push_back(v);
  }
}

void require_in_domain(const MetricSpec& spec, const Point& p) {
  if (static_cast<int>(p.x.size()) != spec.dim)
    throw DimensionMismatch("point dimension does not match chart");
  if (!spec.domain.contains(p.x)) {
    std::string msg = "point (";
    for (std::size_t i = 0; i < p.x.size(); ++i)
      msg += (i ? "," : "") + fmt17(p.x[i]);
    throw OutOfChart(msg + ") is outside the chart domain");
  }
}

// --- spec loading -----------------------------------------------------------

namespace {

double domain_bound(const nlohmann::json& v, bool is_lower) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    throw SchemaError("domain bound string must be 'inf' or '-inf', got '" + s + "'");
  }
  throw SchemaError(std::string("domain ") + (is_lower ? "lower" : "upper") +
                    " bound must be a number or 'inf'/'-inf'");
}

}  // namespace

MetricSpec load_spec(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("spec document must be a JSON object");

  MetricSpec spec;
  if (!doc.contains("name") || !doc["name"].is_string())
    throw SchemaError("missing or non-string field 'name'");
  spec.name = doc["name"].get<std::string>();

  if (!doc.contains("dim") || !doc["dim"].is_number_integer())
    throw SchemaError("missing or non-integer field 'dim'");
  spec.dim = doc["dim"].get<int>();
  if (spec.dim < 1 || spec.dim > kMaxDim)
    throw SchemaError("dim must be between 1 and " + std::to_string(kMaxDim));

  if (!doc.contains("coords") || !doc["coords"].is_array() ||
      static_cast<int>(doc["coords"].size()) != spec.dim)
    throw SchemaError("'coords' must be an array of dim identifiers");
  for (const auto& c : doc["coords"]) {
    if (!c.is_string() || !valid_identifier(c.get<std::string>()))
      throw SchemaError("coordinate names must be identifiers");
    spec.coords.push_back(c.get<std::string>());
  }
  for (int i = 0; i < spec.dim; ++i)
    for (int j = i + 1; j < spec.dim; ++j)
      if (spec.coords[i] == spec.coords[j])
        throw SchemaError("duplicate coordinate name '" + spec.coords[i] + "'");

  if (!doc.contains("domain") || !doc["domain"].is_object())
    throw SchemaError("missing 'domain' object");
  const auto& dom = doc["domain"];
  if (!dom.contains("lower") || !dom.contains("upper") || !dom["lower"].is_array() ||
      !dom["upper"].is_array() || static_cast<int>(dom["lower"].size()) != spec.dim ||
      static_cast<int>(dom["upper"].size()) != spec.dim)
    throw SchemaError("'domain' needs 'lower' and 'upper' arrays of length dim");
  for (int i = 0; i < spec.dim; ++i) {
    double lo = domain_bound(dom["lower"][i], true);
    double hi = domain_bound(dom["upper"][i], false);
    if (!(lo < hi)) throw SchemaError("domain lower bound must be strictly below upper");
    spec.domain.lower.push_back(lo);
    spec.domain.upper.push_back(hi);
  }

  if (doc.contains("params")) {
    if (!doc["params"].is_object()) throw SchemaError("'params' must be an object");
    for (const auto& [k, v] : doc["params"].items()) {
      if (!valid_identifier(k)) throw SchemaError("parameter name '" + k + "' is not an identifier");
      if (!v.is_number()) throw SchemaError("parameter '" + k + "' must be a number");
      for (const auto& c : spec.coords)
        if (c == k) throw SchemaError("parameter '" + k + "' shadows a coordinate");
      spec.params.emplace_back(k, v.get<double>());
    }
  }
  spec.finalize();

  if (!doc.contains("metric") || !doc["metric"].is_array() ||
      static_cast<int>(doc["metric"].size()) != spec.dim)
    throw SchemaError("'metric' must be a dim x dim array of expression strings");
  for (int i = 0; i < spec.dim; ++i) {
    const auto& row = doc["metric"][i];
    if (!row.is_array() || static_cast<int>(row.size()) != spec.dim)
      throw SchemaError("'metric' row " + std::to_string(i) + " must have dim entries");
    for (int j = 0; j < spec.dim; ++j) {
      if (!row[j].is_string())
        throw SchemaError("metric entries must be expression strings");
      spec.g_exprs.push_back(parse(row[j].get<std::string>(), spec.variable_order));
    }
  }
  return spec;
}

MetricSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open spec file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_spec(ss.str());
}

// --- presets ----------------------------------------------------------------

namespace {

MetricSpec build_spec(std::string name, std::vector<std::string> coords,
                      std::vector<double> lower, std::vector<double> upper,
                      std::vector<std::string> entries,
                      std::vector<std::pair<std::string, double>> params) {
  MetricSpec spec;
  spec.name = std::move(name);
  spec.dim = static_cast<int>(coords.size());
  spec.coords = std::move(coords);
  spec.domain.lower = std::move(lower);
  spec.domain.upper = std::move(upper);
  spec.params = std::move(params);
  spec.finalize();
  for (const auto& e : entries) spec.g_exprs.push_back(parse(e, spec.variable_order));
  return spec;
}

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

MetricSpec preset(const std::string& name, const std::map<std::string, double>& params) {
  if (name == "semi_euclidean") {
    int m = static_cast<int>(param_or(params, "dim", 4));
    int nu = static_cast<int>(param_or(params, "index", 0));
    if (m < 1 || m > kMaxDim) throw SchemaError("semi_euclidean dim must be in [1, 8]");
    if (nu < 0 || nu > m) throw SchemaError("semi_euclidean index must be in [0, dim]");
    std::vector<std::string> coords, entries;
    for (int i = 0; i < m; ++i) coords.push_back("x" + std::to_string(i + 1));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        entries.push_back(i != j ? "0" : (i < nu ? "-1" : "1"));
    return build_spec("semi_euclidean", coords, std::vector<double>(m, -kInf),
                      std::vector<double>(m, kInf), entries, {});
  }
  if (name == "sphere") {
    double r = param_or(params, "r", 1.0);
    if (!(r > 0.0)) throw SchemaError("sphere radius must be positive");
    // theta keeps a margin from the poles; phi is unbounded so curves can
    // wind around (the components do not depend on phi)
    return build_spec("sphere", {"theta", "phi"}, {0.01, -kInf}, {M_PI - 0.01, kInf},
                      {"r^2", "0", "0", "r^2*sin(theta)^2"}, {{"r", r}});
  }
  if (name == "hyperbolic_halfplane") {
    return build_spec("hyperbolic_halfplane", {"x", "y"}, {-kInf, 0.01}, {kInf, kInf},
                      {"1/y^2", "0", "0", "1/y^2"}, {});
  }
  if (name == "schwarzschild") {
    double M = param_or(params, "M", 1.0);
    if (!(M > 0.0)) throw SchemaError("schwarzschild mass must be positive");
    return build_spec("schwarzschild", {"t", "r", "theta", "phi"},
                      {-kInf, 2.0 * M * 1.05, 0.01, -kInf},
                      {kInf, kInf, M_PI - 0.01, kInf},
                      {"-(1-2*M/r)", "0", "0", "0",
                       "0", "1/(1-2*M/r)", "0", "0",
                       "0", "0", "r^2", "0",
                       "0", "0", "0", "r^2*sin(theta)^2"},
                      {{"M", M}});
  }
  throw UnknownPreset(name);
}

Expr parse_scalar_field(const MetricSpec& spec, std::string_view text) {
  return parse(text, spec.variable_order);
}

// --- pointwise evaluation ---------------------------------------------------

SymMatrix metric_at(const MetricSpec& spec, const Point& p) {
  require_in_domain(spec, p);
  const int m = spec.dim;
  auto values = spec.bind(p);
  std::vector<double> raw(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      raw[static_cast<std::size_t>(i) * m + j] = eval_real_indexed(spec.g(i, j), values);
  return SymMatrix(m, raw);
}

std::vector<SymMatrix> metric_partials_at(const MetricSpec& spec, const Point& p) {
  require_in_domain(spec, p);
  const int m = spec.dim;
  auto values = spec.bind_dual1(p);
  std::vector<std::vector<double>> raw(m, std::vector<double>(static_cast<std::size_t>(m) * m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Dual1 d = eval_dual1_indexed(spec.g(i, j), values);
      for (int k = 0; k < m; ++k) raw[k][static_cast<std::size_t>(i) * m + j] = d.grad(k);
    }
  std::vector<SymMatrix> out;
  out.reserve(m);
  for (int k = 0; k < m; ++k) out.emplace_back(m, raw[k]);
  return out;
}

std::vector<SymMatrix> metric_second_partials_at(const MetricSpec& spec, const Point& p) {
  require_in_domain(spec, p);
  const int m = spec.dim;
  auto values = spec.bind_dual2(p);
  std::vector<std::vector<double>> raw(static_cast<std::size_t>(m) * m,
                                       std::vector<double>(static_cast<std::size_t>(m) * m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Dual2 d = eval_dual2_indexed(spec.g(i, j), values);
      for (int l = 0; l < m; ++l)
        for (int k = 0; k < m; ++k)
          raw[static_cast<std::size_t>(l) * m + k][static_cast<std::size_t>(i) * m + j] =
              d.hess(l, k);
    }
  std::vector<SymMatrix> out;
  out.reserve(static_cast<std::size_t>(m) * m);
  for (auto& r : raw) out.emplace_back(m, r);
  return out;
}

double inner_at(const MetricSpec& spec, const TangentVector& v, const TangentVector& w) {
  if (v.base.x != w.base.x) throw BasePointMismatch("inner product of vectors at different points");
  SymMatrix g = metric_at(spec, v.base);
  double s = 0.0;
  for (int i = 0; i < spec.dim; ++i)
    for (int j = 0; j < spec.dim; ++j) s += g(i, j) * v.comp[i] * w.comp[j];
  return s;
}

Covector flat_field_at(const MetricSpec& spec, const TangentVector& v) {
  SymMatrix g = metric_at(spec, v.base);
  return Covector{v.base, flat_components(g, v.comp)};
}

TangentVector sharp_field_at(const MetricSpec& spec, const Covector& omega) {
  SymMatrix ginv = invert_sym(metric_at(spec, omega.base));
  return TangentVector{omega.base, sharp_components(ginv, omega.comp)};
}

TangentVector gradient_at(const MetricSpec& spec, const Expr& f, const Point& p) {
  require_in_domain(spec, p);
  auto values = spec.bind_dual1(p);
  Dual1 df = eval_dual1_indexed(f, values);
  SymMatrix ginv = invert_sym(metric_at(spec, p));
  std::vector<double> omega(spec.dim);
  for (int i = 0; i < spec.dim; ++i) omega[i] = df.grad(i);
  return TangentVector{p, sharp_components(ginv, omega)};
}

// --- validation -------------------------------------------------------------

Point sample_point(const MetricSpec& spec, SplitMix64& rng) {
  Point p;
  p.x.resize(spec.dim);
  for (int i = 0; i < spec.dim; ++i) {
    double lo = std::max(spec.domain.lower[i], -kSampleClip);
    double hi = std::min(spec.domain.upper[i], kSampleClip);
    if (!(lo < hi)) {  // box lies entirely outside the clip window
      lo = spec.domain.lower[i];
      hi = spec.domain.upper[i];
      if (std::isinf(hi)) hi = lo + 2.0 * kSampleClip;
      if (std::isinf(lo)) lo = hi - 2.0 * kSampleClip;
    }
    p.x[i] = rng.uniform(lo, hi);
  }
  return p;
}

ValidationReport validate_spec(const MetricSpec& spec, int n_samples, std::uint64_t seed,
                               double tol) {
  ValidationReport report;
  report.min_abs_eigenvalue = kInf;
  SplitMix64 rng(seed);
  for (int s = 0; s < n_samples; ++s) {
    Point p = sample_point(spec, rng);
    auto values = spec.bind(p);

    double sym = 0.0;
    std::vector<double> raw(static_cast<std::size_t>(spec.dim) * spec.dim);
    bool eval_ok = true;
    try {
      for (int i = 0; i < spec.dim; ++i)
        for (int j = 0; j < spec.dim; ++j)
          raw[static_cast<std::size_t>(i) * spec.dim + j] =
              eval_real_indexed(spec.g(i, j), values);
    } catch (const DomainError& e) {
      report.failures.push_back("sample " + std::to_string(s) + ": " + e.what());
      eval_ok = false;
    }
    if (!eval_ok) continue;

    for (int i = 0; i < spec.dim; ++i)
      for (int j = i + 1; j < spec.dim; ++j) {
        double a = raw[static_cast<std::size_t>(i) * spec.dim + j];
        double b = raw[static_cast<std::size_t>(j) * spec.dim + i];
        double rel = std::fabs(a - b) / std::max(1.0, std::fabs(a));
        sym = std::max(sym, rel);
      }
    report.symmetry_max = std::max(report.symmetry_max, sym);
    if (sym > 1e-12)
      report.failures.push_back("sample " + std::to_string(s) +
                                ": metric components asymmetric, rel error " + fmt17(sym));

    SymMatrix g(spec.dim, raw);
    EigenSym eig = jacobi_eigen(g);
    const double cutoff = tol * g.max_abs();  // scale-invariant, as in index_of
    int idx = 0;
    bool degenerate = false;
    for (double v : eig.values) {
      report.min_abs_eigenvalue = std::min(report.min_abs_eigenvalue, std::fabs(v));
      if (std::fabs(v) <= cutoff) degenerate = true;
      if (v < 0.0) ++idx;
    }
    if (degenerate) {
      report.failures.push_back("sample " + std::to_string(s) + ": degenerate metric");
      continue;
    }
    if (report.index < 0) {
      report.index = idx;
    } else if (idx != report.index) {
      report.failures.push_back("sample " + std::to_string(s) + ": index changed from " +
                                std::to_string(report.index) + " to " + std::to_string(idx));
    }
  }
  return report;
}

}  // namespace geom
