// Curvature at a point: Riemann (mixed and lowered), Ricci, scalar, the
// symmetry and Bianchi identity residuals, the small-loop holonomy estimator,
// the commutator check, and the Einstein condition.
#pragma once

#include <span>

#include "geom/transport.hpp"

namespace geom {

// Rmix[n][i][j][k]: R(E_i,E_j)E_k = sum_n Rmix[n][i][j][k] E_n.
// Rlow[i][j][k][l] = <R(E_i,E_j)E_k, E_l>.
struct RiemannAt {
  Point base;
  int dim = 0;
  std::vector<double> mixed;    // dim^4, [n][i][j][k]
  std::vector<double> lowered;  // dim^4, [i][j][k][l]

  double mix(int n, int i, int j, int k) const {
    return mixed[((static_cast<std::size_t>(n) * dim + i) * dim + j) * dim + k];
  }
  double low(int i, int j, int k, int l) const {
    return lowered[((static_cast<std::size_t>(i) * dim + j) * dim + k) * dim + l];
  }
  double max_abs() const;
};

// dGamma assembled exactly from first/second metric partials, with
// d(ginv) = -ginv (dg) ginv; no finite differences on this path.
RiemannAt riemann_at(const MetricSpec& spec, const Point& p);

// contraction of the mixed tensor with three vectors at p
TangentVector curvature_apply_at(const MetricSpec& spec, const Point& p,
                                 const std::vector<double>& x, const std::vector<double>& y,
                                 const std::vector<double>& z);

struct RicciAt {
  Point base;
  SymMatrix ric;
  double scalar = 0.0;
};

// Ric_ij = sum_{a,b} ginv^{ab} Rlow[a][i][j][b]; scalar = sum ginv^{ij} Ric_ij
RicciAt ricci_at(const MetricSpec& spec, const Point& p);

// Ricci through an orthonormal frame: Ric(u,v) = sum_i eps_i Rm(u,e_i,e_i,v).
// Used as an independent route against ricci_at.
SymMatrix ricci_via_orthonormal_frame(const MetricSpec& spec, const Point& p);

struct IdentityResiduals {
  double antisym12 = 0.0;       // Rlow[ijkl] + Rlow[jikl]
  double antisym34 = 0.0;       // Rlow[ijkl] + Rlow[ijlk]
  double first_bianchi = 0.0;   // cyclic sum over the first three slots
  double pair_symmetry = 0.0;   // Rlow[ijkl] - Rlow[klij]
  double scale = 0.0;           // max |Rlow| at the point
};

IdentityResiduals identity_residuals(const MetricSpec& spec, const Point& p);

// max over indices of |(nabla_i R)_{jk..} + (nabla_j R)_{ki..} + (nabla_k R)_{ij..}|,
// nabla R by central differences of riemann_at at step fd_step
double second_bianchi_residual(const MetricSpec& spec, const Point& p, double fd_step);

// Four-transport loop around the family rectangle [0,d1] x [0,d2]:
// along t at s=0 from 0 to d2, along s at t=d2 from 0 to d1, back along t at
// s=d1, back along s at t=0; estimate = (loop(z) - z) / (d1 d2), approximating
// R(x, y)z with x = ds fam(0,0) and y = dt fam(0,0), error O(max(d1,d2)).
TangentVector holonomy_curvature_estimate(const MetricSpec& spec, const FamilySpec& fam,
                                          const std::vector<double>& z, double d1, double d2,
                                          const SolverConfig& cfg = {});

// |D1 D2 W - D2 D1 W - R(ds fam, dt fam) W| at (s, t); the second covariant
// derivatives use nested central differences of family_covderivs at step h
double commutator_curvature_check(const MetricSpec& spec, const FamilySpec& fam,
                                  std::span<const Expr> W, double s, double t, double h = 1e-4);

struct EinsteinReport {
  bool is_einstein = false;
  double kappa = 0.0;          // mean of tr(ginv Ric)/dim over the samples
  double max_deviation = 0.0;  // max |Ric - kappa g| componentwise
  double eig_lo = 0.0;         // eigenvalue range of Ric - kappa g in a
  double eig_hi = 0.0;         // g-orthonormal frame, over all samples
};

EinsteinReport einstein_check(const MetricSpec& spec, int n_samples, std::uint64_t seed,
                              double tol);

}  // namespace geom
