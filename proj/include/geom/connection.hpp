// Levi-Civita connection in coordinates: Christoffel symbols, covariant
// derivatives of expression-defined vector fields, Koszul and torsion
// residuals, covariant derivatives of covariant tensor fields.
#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "geom/manifold.hpp"

namespace geom {

// Gamma^i_{jk}, upper index first; symmetric in (j, k). The stored layout
// follows nabla_{E_k} E_j = sum_i Gamma^i_{jk} E_i.
struct ChristoffelAt {
  Point base;
  int dim = 0;
  std::vector<double> gamma;  // dim^3, [i][j][k] row-major

  double at(int i, int j, int k) const {
    return gamma[(static_cast<std::size_t>(i) * dim + j) * dim + k];
  }
};

// Components of a vector field in the coordinate frame, one expression per
// coordinate, over coords + params.
struct VectorFieldExprs {
  std::vector<Expr> comp;
};

VectorFieldExprs parse_vector_field(const MetricSpec& spec, std::span<const std::string> texts);

// Gamma^i_{jk} = 1/2 sum_mu ginv^{i mu} (d_j g_{mu k} + d_k g_{j mu} - d_mu g_{kj})
ChristoffelAt christoffel_at(const MetricSpec& spec, const Point& p);

// components of the field Y at a point
std::vector<double> eval_field(const MetricSpec& spec, const VectorFieldExprs& Y, const Point& p);

// nabla_v Y for a single tangent vector v at v.base
TangentVector covderiv_vector_at(const MetricSpec& spec, const TangentVector& v,
                                 const VectorFieldExprs& Y);

// (nabla_X Y)^i = sum_k X^k d_k Y^i + sum_{j,k} X^k Gamma^i_{jk} Y^j at p
TangentVector covderiv_vector_field_at(const MetricSpec& spec, const VectorFieldExprs& X,
                                       const VectorFieldExprs& Y, const Point& p);

// [X,Y]^i = sum_k (X^k d_k Y^i - Y^k d_k X^i)
std::vector<double> lie_bracket_at(const MetricSpec& spec, const VectorFieldExprs& X,
                                   const VectorFieldExprs& Y, const Point& p);

// max_{i,j,k} |Gamma^i_{jk} - Gamma^i_{kj}|; zero for the symmetric formula
double torsion_residual(const MetricSpec& spec, const Point& p);

// |2<nabla_X Y, Z> - Koszul right-hand side| evaluated pointwise
double koszul_residual(const MetricSpec& spec, const VectorFieldExprs& X,
                       const VectorFieldExprs& Y, const VectorFieldExprs& Z, const Point& p);

// Fully covariant rank-r tensor field evaluated pointwise. `partials`, when
// set, supplies exact derivatives (rank r+1 flat array, derivative index
// first); otherwise the directional term uses central differences.
struct TensorField {
  int rank = 0;
  std::function<std::vector<double>(const Point&)> eval;
  std::function<std::vector<double>(const Point&)> partials;  // optional
};

// (nabla T)[k][i1..ir] = d_k T_{i1..ir} - sum_a sum_mu Gamma^mu_{i_a k} T_{..mu..};
// derivative slot first. Throws StepTooLarge if the stencil leaves the chart.
std::vector<double> covderiv_tensor_full(const MetricSpec& spec, const TensorField& T,
                                         const Point& p, double fd_step);

// the full derivative contracted with X^k
std::vector<double> covderiv_tensor_r0_at(const MetricSpec& spec, const TensorField& T,
                                          const VectorFieldExprs& X, const Point& p,
                                          double fd_step);

}  // namespace geom
