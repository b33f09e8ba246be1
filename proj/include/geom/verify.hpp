// Named verification checks: every identity the engine claims (torsion,
// metric compatibility, Koszul, transport isometry, constant geodesic speed,
// Riemann symmetries, both Bianchi identities, holonomy convergence, the
// commutator lemma, gradient duality) evaluated on seeded random samples.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geom/curvature.hpp"

namespace geom {

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tol = 0.0;
  std::string note;
};

struct VerifyOptions {
  int samples = 50;
  std::uint64_t seed = 7;
  double dt = 1e-3;                  // geodesic-speed integration step
  std::optional<double> tol_override;  // replaces every per-check default
};

std::vector<CheckResult> run_verification(const MetricSpec& spec, const VerifyOptions& opts);

bool all_passed(const std::vector<CheckResult>& results);

namespace checks {

// Sample a point whose bounded coordinates keep at least `margin` distance
// from the domain walls (deterministic retries).
Point sample_interior(const MetricSpec& spec, SplitMix64& rng, double margin);

// A second interior point within `radius` of `base` in every coordinate;
// keeps segment-curve velocities O(1) regardless of the chart's extent.
Point nearby_interior(const MetricSpec& spec, SplitMix64& rng, const Point& base, double radius,
                      double margin);

// Straight segment p -> q in coordinates, parameter in [0, 1] with padding.
CurveSpec segment_curve(const MetricSpec& spec, const Point& p, const Point& q);

// Random polynomial of the given degree in the chart coordinates, centered
// at `center` so values and derivatives stay O(1) near it.
std::string centered_polynomial(const MetricSpec& spec, const Point& center, SplitMix64& rng,
                                int degree);

// Random polynomial vector field centered at `center`.
VectorFieldExprs random_polynomial_field(const MetricSpec& spec, const Point& center,
                                         SplitMix64& rng, int degree);

}  // namespace checks

}  // namespace geom
