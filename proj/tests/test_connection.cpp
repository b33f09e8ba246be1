#include <doctest.h>

#include <cmath>

#include "geom/connection.hpp"
#include "oracles.hpp"

using geom::MetricSpec;
using geom::Point;
using geom::preset;

namespace {

std::vector<MetricSpec> all_presets() {
  std::vector<MetricSpec> specs;
  specs.push_back(preset("semi_euclidean", {{"dim", 4}, {"index", 1}}));
  specs.push_back(preset("sphere", {{"r", 1.0}}));
  specs.push_back(preset("hyperbolic_halfplane"));
  specs.push_back(preset("schwarzschild", {{"M", 1.0}}));
  return specs;
}

Point interior_sample(const MetricSpec& spec, geom::SplitMix64& rng, double margin) {
  for (;;) {
    Point p = geom::sample_point(spec, rng);
    bool ok = true;
    for (int i = 0; i < spec.dim; ++i) {
      if (std::isfinite(spec.domain.lower[i]) && p.x[i] - spec.domain.lower[i] < margin) ok = false;
      if (std::isfinite(spec.domain.upper[i]) && spec.domain.upper[i] - p.x[i] < margin) ok = false;
    }
    if (ok) return p;
  }
}

}  // namespace

TEST_CASE("christoffel symbols: flat, sphere, half-plane closed forms") {
  MetricSpec se = preset("semi_euclidean", {{"dim", 4}, {"index", 1}});
  auto g0 = geom::christoffel_at(se, Point{{0.0, 1.0, -2.0, 3.0}});
  for (double v : g0.gamma) CHECK(v == 0.0);

  MetricSpec sph = preset("sphere", {{"r", 1.0}});
  double th = M_PI / 3;
  auto gs = geom::christoffel_at(sph, Point{{th, 0.2}});
  CHECK(gs.at(0, 1, 1) == doctest::Approx(-std::sin(th) * std::cos(th)));  // -sqrt(3)/4
  CHECK(gs.at(0, 1, 1) == doctest::Approx(-0.43301270189221935));
  CHECK(gs.at(1, 0, 1) == doctest::Approx(1.0 / std::tan(th)));
  CHECK(gs.at(1, 0, 1) == doctest::Approx(0.57735026918962573));
  CHECK(gs.at(1, 1, 0) == gs.at(1, 0, 1));

  MetricSpec hp = preset("hyperbolic_halfplane");
  auto gh = geom::christoffel_at(hp, Point{{0.0, 2.0}});
  CHECK(gh.at(0, 0, 1) == doctest::Approx(-0.5));  // Gamma^x_{xy} = -1/y
  CHECK(gh.at(1, 0, 0) == doctest::Approx(0.5));   // Gamma^y_{xx} = 1/y
  CHECK(gh.at(1, 1, 1) == doctest::Approx(-0.5));  // Gamma^y_{yy} = -1/y
}

TEST_CASE("schwarzschild christoffel closed forms") {
  // gamma^r_tt = M(r-2M)/r^3, gamma^t_tr = M/(r(r-2M)),
  // gamma^r_rr = -M/(r(r-2M)), gamma^phi_{r phi} = 1/r,
  // gamma^r_{phi phi} = -(r-2M) sin^2(theta)
  MetricSpec sw = preset("schwarzschild", {{"M", 1.0}});
  const double M = 1.0;
  geom::SplitMix64 rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    double r = rng.uniform(3.0, 9.0);
    double th = rng.uniform(0.4, M_PI - 0.4);
    auto g = geom::christoffel_at(sw, Point{{0.0, r, th, 0.3}});
    CHECK(g.at(1, 0, 0) == doctest::Approx(M * (r - 2.0 * M) / (r * r * r)).epsilon(1e-12));
    CHECK(g.at(0, 0, 1) == doctest::Approx(M / (r * (r - 2.0 * M))).epsilon(1e-12));
    CHECK(g.at(1, 1, 1) == doctest::Approx(-M / (r * (r - 2.0 * M))).epsilon(1e-12));
    CHECK(g.at(3, 1, 3) == doctest::Approx(1.0 / r).epsilon(1e-12));
    CHECK(g.at(1, 3, 3) ==
          doctest::Approx(-(r - 2.0 * M) * std::sin(th) * std::sin(th)).epsilon(1e-12));
  }
}

TEST_CASE("christoffel agrees with the all-finite-difference pipeline") {
  // moderate sampling: the oracle's own truncation error explodes near the
  // singular chart edges
  geom::SplitMix64 rng(71);
  for (const auto& spec : all_presets()) {
    for (int trial = 0; trial < 25; ++trial) {
      Point p = oracles::moderate_sample(spec, rng);
      auto exact = geom::christoffel_at(spec, p);
      auto fd = oracles::fd_christoffel(spec, p);
      for (std::size_t q = 0; q < fd.size(); ++q)
        CHECK(std::fabs(exact.gamma[q] - fd[q]) <= 1e-6);
    }
  }
}

TEST_CASE("torsion residual is exactly zero") {
  geom::SplitMix64 rng(73);
  for (const auto& spec : all_presets())
    for (int trial = 0; trial < 20; ++trial)
      CHECK(geom::torsion_residual(spec, geom::sample_point(spec, rng)) == 0.0);
}

TEST_CASE("covariant derivative of expression fields") {
  MetricSpec se2 = preset("semi_euclidean", {{"dim", 2}, {"index", 0}});
  std::vector<std::string> cx = {"1", "0"};
  std::vector<std::string> cy = {"x1", "0"};
  auto X = geom::parse_vector_field(se2, cx);
  auto Y = geom::parse_vector_field(se2, cy);
  Point p{{0.7, -0.3}};
  auto d = geom::covderiv_vector_field_at(se2, X, Y, p);
  CHECK(d.comp[0] == doctest::Approx(1.0));
  CHECK(d.comp[1] == doctest::Approx(0.0));

  // constant fields in flat space have vanishing derivative
  std::vector<std::string> c1 = {"2", "3"};
  std::vector<std::string> c2 = {"-1", "5"};
  auto C1 = geom::parse_vector_field(se2, c1);
  auto C2 = geom::parse_vector_field(se2, c2);
  auto dc = geom::covderiv_vector_field_at(se2, C1, C2, p);
  CHECK(dc.comp[0] == 0.0);
  CHECK(dc.comp[1] == 0.0);

  // sphere: nabla_{dphi} dphi = (Gamma^theta_{phiphi}, Gamma^phi_{phiphi})
  MetricSpec sph = preset("sphere", {{"r", 1.0}});
  std::vector<std::string> cphi = {"0", "1"};
  auto Phi = geom::parse_vector_field(sph, cphi);
  double th = M_PI / 3;
  auto ds = geom::covderiv_vector_field_at(sph, Phi, Phi, Point{{th, 0.0}});
  CHECK(ds.comp[0] == doctest::Approx(-0.43301270189221935));
  CHECK(ds.comp[1] == doctest::Approx(0.0));
}

TEST_CASE("koszul residual vanishes") {
  MetricSpec se = preset("semi_euclidean", {{"dim", 3}, {"index", 1}});
  std::vector<std::string> e1 = {"1", "0", "0"};
  std::vector<std::string> e2 = {"0", "1", "0"};
  auto E1 = geom::parse_vector_field(se, e1);
  auto E2 = geom::parse_vector_field(se, e2);
  CHECK(geom::koszul_residual(se, E1, E2, E2, Point{{0.0, 0.0, 0.0}}) == doctest::Approx(0.0));

  MetricSpec sph = preset("sphere", {{"r", 1.0}});
  std::vector<std::string> et = {"1", "0"};
  std::vector<std::string> ep = {"0", "1"};
  auto Et = geom::parse_vector_field(sph, et);
  auto Ep = geom::parse_vector_field(sph, ep);
  CHECK(geom::koszul_residual(sph, Et, Ep, Ep, Point{{M_PI / 4, 0.0}}) <= 1e-12);

  // random polynomial fields on the half-plane
  MetricSpec hp = preset("hyperbolic_halfplane");
  geom::SplitMix64 rng(79);
  for (int trial = 0; trial < 100; ++trial) {
    Point p = geom::sample_point(hp, rng);
    auto mk = [&]() {
      std::vector<std::string> comps;
      for (int i = 0; i < 2; ++i) {
        std::string cx = oracles::fmt17(rng.uniform(-1.0, 1.0));
        std::string lin = oracles::fmt17(rng.uniform(-1.0, 1.0));
        std::string quad = oracles::fmt17(rng.uniform(-1.0, 1.0));
        std::string cube = oracles::fmt17(rng.uniform(-1.0, 1.0));
        std::string dx = "(x-(" + oracles::fmt17(p.x[0]) + "))";
        std::string dy = "(y-(" + oracles::fmt17(p.x[1]) + "))";
        comps.push_back(cx + "+" + lin + "*" + dx + "+" + quad + "*" + dx + "*" + dy + "+" +
                        cube + "*" + dy + "*" + dy + "*" + dy);
      }
      return geom::parse_vector_field(hp, comps);
    };
    auto X = mk();
    auto Y = mk();
    auto Z = mk();
    CHECK(geom::koszul_residual(hp, X, Y, Z, p) <= 1e-9);
  }
}

TEST_CASE("covariant derivative of the metric vanishes (metric compatibility)") {
  geom::SplitMix64 rng(83);
  for (const auto& spec : all_presets()) {
    geom::TensorField T;
    T.rank = 2;
    T.eval = [&spec](const Point& q) {
      geom::SymMatrix g = geom::metric_at(spec, q);
      return std::vector<double>(g.data().begin(), g.data().end());
    };
    // finite-difference route; moderate region, the stencil truncation
    // carries third metric derivatives
    for (int trial = 0; trial < 20; ++trial) {
      Point p = oracles::moderate_sample(spec, rng);
      auto full = geom::covderiv_tensor_full(spec, T, p, 1e-5);
      for (double v : full) CHECK(std::fabs(v) <= 1e-7);
    }
    // exact-partials route
    geom::TensorField Texact = T;
    Texact.partials = [&spec](const Point& q) {
      auto D = geom::metric_partials_at(spec, q);
      std::vector<double> out;
      for (const auto& d : D) out.insert(out.end(), d.data().begin(), d.data().end());
      return out;
    };
    for (int trial = 0; trial < 10; ++trial) {
      Point p = interior_sample(spec, rng, 1e-3);
      auto full = geom::covderiv_tensor_full(spec, Texact, p, 0.0);
      for (double v : full) CHECK(std::fabs(v) <= 1e-11);
    }
  }
}

TEST_CASE("covderiv_tensor_r0_at on a constant tensor in flat space is zero") {
  MetricSpec se = preset("semi_euclidean", {{"dim", 3}, {"index", 0}});
  geom::TensorField T;
  T.rank = 2;
  T.eval = [](const Point&) {
    return std::vector<double>{1.0, 2.0, 0.0, 2.0, -1.0, 0.5, 0.0, 0.5, 3.0};
  };
  std::vector<std::string> xs = {"1", "-2", "0.5"};
  auto X = geom::parse_vector_field(se, xs);
  auto d = geom::covderiv_tensor_r0_at(se, T, X, Point{{0.1, 0.2, 0.3}}, 1e-5);
  for (double v : d) CHECK(std::fabs(v) <= 1e-12);
}

TEST_CASE("covderiv_tensor_full rejects stencils that leave the chart") {
  MetricSpec sph = preset("sphere", {{"r", 1.0}});
  geom::TensorField T;
  T.rank = 0;
  T.eval = [](const Point&) { return std::vector<double>{1.0}; };
  T.rank = 1;
  T.eval = [](const Point& q) { return std::vector<double>{q.x[0], q.x[1]}; };
  CHECK_THROWS_AS(geom::covderiv_tensor_full(sph, T, Point{{0.0101, 0.0}}, 1e-2),
                  geom::StepTooLarge);
}
