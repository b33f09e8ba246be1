#include "geom/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace geom {

SymMatrix::SymMatrix(int dim, std::span<const double> row_major)
    : dim_(dim), e_(static_cast<std::size_t>(dim) * dim) {
  if (row_major.size() != e_.size()) throw DimensionMismatch("matrix data size mismatch");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      e_[static_cast<std::size_t>(i) * dim + j] =
          0.5 * (row_major[static_cast<std::size_t>(i) * dim + j] +
                 row_major[static_cast<std::size_t>(j) * dim + i]);
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m.set(i, i, d[i]);
  return m;
}

double SymMatrix::max_abs() const {
  double mx = 0.0;
  for (double v : e_) mx = std::max(mx, std::fabs(v));
  return mx;
}

EigenSym jacobi_eigen(const SymMatrix& a) {
  const int m = a.dim();
  std::vector<double> A(a.data().begin(), a.data().end());
  std::vector<double> Q(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) Q[static_cast<std::size_t>(i) * m + i] = 1.0;
  auto at = [&](std::vector<double>& M, int i, int j) -> double& {
    return M[static_cast<std::size_t>(i) * m + j];
  };

  double fro = 0.0;
  for (double v : A) fro += v * v;
  fro = std::sqrt(fro);
  const double stop = 1e-12 * std::max(1.0, fro);

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) off += 2.0 * at(A, i, j) * at(A, i, j);
    if (std::sqrt(off) <= stop) break;

    for (int p = 0; p < m - 1; ++p) {
      for (int q = p + 1; q < m; ++q) {
        double apq = at(A, p, q);
        if (apq == 0.0) continue;
        double theta = (at(A, q, q) - at(A, p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < m; ++k) {
          double akp = at(A, k, p), akq = at(A, k, q);
          at(A, k, p) = c * akp - s * akq;
          at(A, k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < m; ++k) {
          double apk = at(A, p, k), aqk = at(A, q, k);
          at(A, p, k) = c * apk - s * aqk;
          at(A, q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < m; ++k) {
          double qkp = at(Q, k, p), qkq = at(Q, k, q);
          at(Q, k, p) = c * qkp - s * qkq;
          at(Q, k, q) = s * qkp + c * qkq;
        }
      }
    }
  }

  EigenSym out;
  out.values.resize(m);
  for (int i = 0; i < m; ++i) out.values[i] = at(A, i, i);

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return out.values[i] < out.values[j]; });

  EigenSym sorted;
  sorted.values.resize(m);
  sorted.vectors.assign(static_cast<std::size_t>(m) * m, 0.0);
  for (int k = 0; k < m; ++k) {
    sorted.values[k] = out.values[order[k]];
    for (int i = 0; i < m; ++i)
      sorted.vectors[static_cast<std::size_t>(i) * m + k] = at(Q, i, order[k]);
  }
  return sorted;
}

SymMatrix invert_sym(const SymMatrix& g, double tol) {
  const int m = g.dim();
  std::vector<double> A(g.data().begin(), g.data().end());
  std::vector<double> B(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) B[static_cast<std::size_t>(i) * m + i] = 1.0;
  auto at = [&](std::vector<double>& M, int i, int j) -> double& {
    return M[static_cast<std::size_t>(i) * m + j];
  };

  double det = 1.0;
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::fabs(at(A, r, col)) > std::fabs(at(A, piv, col))) piv = r;
    if (piv != col) {
      for (int j = 0; j < m; ++j) {
        std::swap(at(A, piv, j), at(A, col, j));
        std::swap(at(B, piv, j), at(B, col, j));
      }
      det = -det;
    }
    double p = at(A, col, col);
    det *= p;
    if (p == 0.0) break;
    double ip = 1.0 / p;
    for (int j = 0; j < m; ++j) {
      at(A, col, j) *= ip;
      at(B, col, j) *= ip;
    }
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      double f = at(A, r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < m; ++j) {
        at(A, r, j) -= f * at(A, col, j);
        at(B, r, j) -= f * at(B, col, j);
      }
    }
  }
  // scale-invariant degeneracy test: a uniformly rescaled metric must not
  // change its verdict, so |det| is measured against max|entry|^m
  double scale = 1.0;
  for (int k = 0; k < m; ++k) scale *= g.max_abs();
  if (std::fabs(det) <= tol * scale)
    throw DegenerateMetric("matrix is degenerate: |det| = " + std::to_string(std::fabs(det)));
  return SymMatrix(m, B);
}

int index_of(const SymMatrix& g, double tol) {
  EigenSym eig = jacobi_eigen(g);
  const double cutoff = tol * g.max_abs();
  int count = 0;
  for (double v : eig.values) {
    if (std::fabs(v) <= cutoff)
      throw DegenerateMetric("eigenvalue " + std::to_string(v) + " within tolerance of zero");
    if (v < 0.0) ++count;
  }
  return count;
}

OrthonormalBasis orthonormal_basis(const SymMatrix& g, double tol) {
  const int m = g.dim();
  EigenSym eig = jacobi_eigen(g);
  const double cutoff = tol * g.max_abs();
  for (double v : eig.values)
    if (std::fabs(v) <= cutoff)
      throw DegenerateMetric("eigenvalue " + std::to_string(v) + " within tolerance of zero");

  // eigenvalues ascend, so negative directions come first automatically
  OrthonormalBasis out;
  out.basis.assign(static_cast<std::size_t>(m) * m, 0.0);
  out.signs.resize(m);
  for (int k = 0; k < m; ++k) {
    double lam = eig.values[k];
    out.signs[k] = lam < 0.0 ? -1 : 1;
    double scale = 1.0 / std::sqrt(std::fabs(lam));
    for (int i = 0; i < m; ++i)
      out.basis[static_cast<std::size_t>(i) * m + k] =
          eig.vectors[static_cast<std::size_t>(i) * m + k] * scale;
  }
  return out;
}

std::vector<double> flat_components(const SymMatrix& g, std::span<const double> v) {
  const int m = g.dim();
  if (static_cast<int>(v.size()) != m) throw DimensionMismatch("flat: size mismatch");
  std::vector<double> w(m, 0.0);
  for (int j = 0; j < m; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += g(i, j) * v[i];
    w[j] = s;
  }
  return w;
}

std::vector<double> sharp_components(const SymMatrix& g_inv, std::span<const double> omega) {
  const int m = g_inv.dim();
  if (static_cast<int>(omega.size()) != m) throw DimensionMismatch("sharp: size mismatch");
  std::vector<double> v(m, 0.0);
  for (int j = 0; j < m; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += g_inv(j, i) * omega[i];
    v[j] = s;
  }
  return v;
}

}  // namespace geom
