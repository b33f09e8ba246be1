// Dense symmetric-matrix algebra for pointwise scalar products: inversion,
// index (signature), flat/sharp on components, orthonormalization. The eigen
// solver is a cyclic Jacobi iteration; matrices here are at most 8x8.
#pragma once

#include <span>
#include <vector>

#include "geom/errors.hpp"

namespace geom {

class SymMatrix {
 public:
  SymMatrix() : dim_(0) {}
  explicit SymMatrix(int dim) : dim_(dim), e_(static_cast<std::size_t>(dim) * dim, 0.0) {}

  // Symmetrizes: stores (a[i][j] + a[j][i]) / 2.
  SymMatrix(int dim, std::span<const double> row_major);

  static SymMatrix identity(int dim);
  static SymMatrix diagonal(std::span<const double> d);

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * dim_ + j]; }
  // keeps symmetry: writes (i,j) and (j,i)
  void set(int i, int j, double v) {
    e_[static_cast<std::size_t>(i) * dim_ + j] = v;
    e_[static_cast<std::size_t>(j) * dim_ + i] = v;
  }
  std::span<const double> data() const { return e_; }

  double max_abs() const;

 private:
  int dim_;
  std::vector<double> e_;
};

// Eigen decomposition a = Q diag(values) Q^T, columns of Q are eigenvectors.
struct EigenSym {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // row-major m x m; column k pairs with values[k]
};

EigenSym jacobi_eigen(const SymMatrix& a);

// Throws DegenerateMetric when |det| <= tol * max|entry|^dim (the test is
// invariant under uniform rescaling of g).
SymMatrix invert_sym(const SymMatrix& g, double tol = 1e-12);

// Count of negative eigenvalues (Sylvester index). Throws DegenerateMetric
// when any |eigenvalue| <= tol * max|entry|.
int index_of(const SymMatrix& g, double tol = 1e-10);

struct OrthonormalBasis {
  std::vector<double> basis;  // row-major m x m, column k is the k-th basis vector
  std::vector<int> signs;     // epsilon_k in {-1, +1}, negatives first
};

// B^T g B = diag(signs) with negative directions first.
OrthonormalBasis orthonormal_basis(const SymMatrix& g, double tol = 1e-10);

// omega_j = sum_i g_ij v_i
std::vector<double> flat_components(const SymMatrix& g, std::span<const double> v);
// v_j = sum_i ginv_ji omega_i
std::vector<double> sharp_components(const SymMatrix& g_inv, std::span<const double> omega);

}  // namespace geom
