#include "geom/connection.hpp"

#include <cmath>

namespace geom {

VectorFieldExprs parse_vector_field(const MetricSpec& spec, std::span<const std::string> texts) {
  if (static_cast<int>(texts.size()) != spec.dim)
    throw DimensionMismatch("vector field needs one expression per coordinate");
  VectorFieldExprs f;
  for (const auto& t : texts) f.comp.push_back(parse(t, spec.variable_order));
  return f;
}

ChristoffelAt christoffel_at(const MetricSpec& spec, const Point& p) {
  const int m = spec.dim;
  SymMatrix ginv = invert_sym(metric_at(spec, p));
  std::vector<SymMatrix> D = metric_partials_at(spec, p);

  ChristoffelAt out;
  out.base = p;
  out.dim = m;
  out.gamma.assign(static_cast<std::size_t>(m) * m * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double s = 0.0;
        for (int mu = 0; mu < m; ++mu)
          s += ginv(i, mu) * (D[j](mu, k) + D[k](j, mu) - D[mu](k, j));
        out.gamma[(static_cast<std::size_t>(i) * m + j) * m + k] = 0.5 * s;
      }
  return out;
}

std::vector<double> eval_field(const MetricSpec& spec, const VectorFieldExprs& Y, const Point& p) {
  auto values = spec.bind(p);
  std::vector<double> out(spec.dim);
  for (int i = 0; i < spec.dim; ++i) out[i] = eval_real_indexed(Y.comp[i], values);
  return out;
}

TangentVector covderiv_vector_at(const MetricSpec& spec, const TangentVector& v,
                                 const VectorFieldExprs& Y) {
  const int m = spec.dim;
  require_in_domain(spec, v.base);
  auto duals = spec.bind_dual1(v.base);
  ChristoffelAt gamma = christoffel_at(spec, v.base);

  std::vector<double> out(m, 0.0);
  std::vector<double> yv(m);
  std::vector<std::vector<double>> dy(m, std::vector<double>(m));
  for (int i = 0; i < m; ++i) {
    Dual1 d = eval_dual1_indexed(Y.comp[i], duals);
    yv[i] = d.value();
    for (int k = 0; k < m; ++k) dy[i][k] = d.grad(k);
  }
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int k = 0; k < m; ++k) s += v.comp[k] * dy[i][k];
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) s += v.comp[k] * gamma.at(i, j, k) * yv[j];
    out[i] = s;
  }
  return TangentVector{v.base, out};
}

TangentVector covderiv_vector_field_at(const MetricSpec& spec, const VectorFieldExprs& X,
                                       const VectorFieldExprs& Y, const Point& p) {
  return covderiv_vector_at(spec, TangentVector{p, eval_field(spec, X, p)}, Y);
}

std::vector<double> lie_bracket_at(const MetricSpec& spec, const VectorFieldExprs& X,
                                   const VectorFieldExprs& Y, const Point& p) {
  const int m = spec.dim;
  auto duals = spec.bind_dual1(p);
  std::vector<double> out(m, 0.0);
  std::vector<Dual1> xs(m), ys(m);
  for (int i = 0; i < m; ++i) {
    xs[i] = eval_dual1_indexed(X.comp[i], duals);
    ys[i] = eval_dual1_indexed(Y.comp[i], duals);
  }
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int k = 0; k < m; ++k)
      s += xs[k].value() * ys[i].grad(k) - ys[k].value() * xs[i].grad(k);
    out[i] = s;
  }
  return out;
}

double torsion_residual(const MetricSpec& spec, const Point& p) {
  ChristoffelAt gamma = christoffel_at(spec, p);
  const int m = spec.dim;
  double mx = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        mx = std::max(mx, std::fabs(gamma.at(i, j, k) - gamma.at(i, k, j)));
  return mx;
}

namespace {

// directional derivative along X(p) of the scalar q -> <Y, Z>_q, exact via duals
double derive_inner(const MetricSpec& spec, const VectorFieldExprs& X, const VectorFieldExprs& Y,
                    const VectorFieldExprs& Z, const Point& p) {
  const int m = spec.dim;
  auto duals = spec.bind_dual1(p);
  Dual1 acc = Dual1::constant(0.0, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      acc = acc + eval_dual1_indexed(spec.g(i, j), duals) *
                      eval_dual1_indexed(Y.comp[i], duals) * eval_dual1_indexed(Z.comp[j], duals);
  auto xv = eval_field(spec, X, p);
  double s = 0.0;
  for (int k = 0; k < m; ++k) s += xv[k] * acc.grad(k);
  return s;
}

double inner_vectors(const MetricSpec& spec, const Point& p, std::span<const double> a,
                     std::span<const double> b) {
  SymMatrix g = metric_at(spec, p);
  double s = 0.0;
  for (int i = 0; i < spec.dim; ++i)
    for (int j = 0; j < spec.dim; ++j) s += g(i, j) * a[i] * b[j];
  return s;
}

}  // namespace

double koszul_residual(const MetricSpec& spec, const VectorFieldExprs& X,
                       const VectorFieldExprs& Y, const VectorFieldExprs& Z, const Point& p) {
  TangentVector nxy = covderiv_vector_field_at(spec, X, Y, p);
  auto zv = eval_field(spec, Z, p);
  auto yv = eval_field(spec, Y, p);
  auto xv = eval_field(spec, X, p);
  double lhs = 2.0 * inner_vectors(spec, p, nxy.comp, zv);

  double rhs = derive_inner(spec, X, Y, Z, p) + derive_inner(spec, Y, Z, X, p) -
               derive_inner(spec, Z, X, Y, p);
  rhs += inner_vectors(spec, p, zv, lie_bracket_at(spec, X, Y, p));
  rhs -= inner_vectors(spec, p, yv, lie_bracket_at(spec, X, Z, p));
  rhs -= inner_vectors(spec, p, xv, lie_bracket_at(spec, Y, Z, p));
  return std::fabs(lhs - rhs);
}

std::vector<double> covderiv_tensor_full(const MetricSpec& spec, const TensorField& T,
                                         const Point& p, double fd_step) {
  const int m = spec.dim;
  const int r = T.rank;
  std::size_t size = 1;
  for (int a = 0; a < r; ++a) size *= static_cast<std::size_t>(m);

  // partial derivatives d_k T, exact when supplied, else central differences
  std::vector<double> dT;
  if (T.partials) {
    dT = T.partials(p);
    if (dT.size() != size * m) throw DimensionMismatch("tensor partials size mismatch");
  } else {
    dT.assign(size * m, 0.0);
    for (int k = 0; k < m; ++k) {
      Point pp = p, pm = p;
      pp.x[k] += fd_step;
      pm.x[k] -= fd_step;
      if (!spec.domain.contains(pp.x) || !spec.domain.contains(pm.x))
        throw StepTooLarge("finite-difference stencil leaves the chart domain");
      auto tp = T.eval(pp);
      auto tm = T.eval(pm);
      for (std::size_t idx = 0; idx < size; ++idx)
        dT[static_cast<std::size_t>(k) * size + idx] = (tp[idx] - tm[idx]) / (2.0 * fd_step);
    }
  }

  auto tv = T.eval(p);
  ChristoffelAt gamma = christoffel_at(spec, p);

  // index decoding for the rank-r block
  std::vector<std::size_t> stride(r, 1);
  for (int a = r - 2; a >= 0; --a) stride[a] = stride[a + 1] * static_cast<std::size_t>(m);

  std::vector<double> out(size * m, 0.0);
  std::vector<int> idx(r, 0);
  for (std::size_t flat = 0; flat < size; ++flat) {
    std::size_t rem = flat;
    for (int a = 0; a < r; ++a) {
      idx[a] = static_cast<int>(rem / stride[a]);
      rem %= stride[a];
    }
    for (int k = 0; k < m; ++k) {
      double s = dT[static_cast<std::size_t>(k) * size + flat];
      for (int a = 0; a < r; ++a) {
        int ia = idx[a];
        for (int mu = 0; mu < m; ++mu) {
          auto swapped = static_cast<std::size_t>(
              static_cast<long long>(flat) +
              static_cast<long long>(mu - ia) * static_cast<long long>(stride[a]));
          s -= gamma.at(mu, ia, k) * tv[swapped];
        }
      }
      out[static_cast<std::size_t>(k) * size + flat] = s;
    }
  }
  return out;
}

std::vector<double> covderiv_tensor_r0_at(const MetricSpec& spec, const TensorField& T,
                                          const VectorFieldExprs& X, const Point& p,
                                          double fd_step) {
  const int m = spec.dim;
  auto full = covderiv_tensor_full(spec, T, p, fd_step);
  std::size_t size = full.size() / static_cast<std::size_t>(m);
  auto xv = eval_field(spec, X, p);
  std::vector<double> out(size, 0.0);
  for (int k = 0; k < m; ++k)
    for (std::size_t idx = 0; idx < size; ++idx)
      out[idx] += xv[k] * full[static_cast<std::size_t>(k) * size + idx];
  return out;
}

}  // namespace geom
