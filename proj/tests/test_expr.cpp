#include <doctest.h>

#include <cmath>

#include "geom/expr.hpp"
#include "oracles.hpp"

using geom::Bindings;
using geom::Dual1;
using geom::Dual2;
using geom::Expr;
using geom::parse;

namespace {

const std::vector<std::string> kXY = {"x", "y"};

double eval(const std::string& text, const Bindings& b,
            const std::vector<std::string>& vars = kXY) {
  return geom::eval_real(parse(text, vars), b);
}

}  // namespace

TEST_CASE("parse accepts the documented grammar") {
  std::vector<std::string> rt = {"r", "theta"};
  CHECK_NOTHROW(parse("r^2*sin(theta)^2", rt));
  std::vector<std::string> schw = {"M", "r", "theta", "phi", "t"};
  CHECK_NOTHROW(parse("1/(1-2*M/r)", schw));
  CHECK_NOTHROW(parse("  1 + 2*x ", kXY));
  CHECK_NOTHROW(parse("-x^2", kXY));
  CHECK_NOTHROW(parse("x^-2", kXY));
  CHECK_NOTHROW(parse("2^3^2", kXY));  // right-associative
}

TEST_CASE("parse rejects malformed input with positions") {
  CHECK_THROWS_AS(parse("", kXY), geom::SyntaxError);
  CHECK_THROWS_AS(parse("2x", kXY), geom::SyntaxError);  // no implicit multiplication
  CHECK_THROWS_AS(parse("(x+1", kXY), geom::SyntaxError);
  CHECK_THROWS_AS(parse("x+", kXY), geom::SyntaxError);
  CHECK_THROWS_AS(parse("x*/y", kXY), geom::SyntaxError);

  try {
    parse("x + @", kXY);
    FAIL("expected SyntaxError");
  } catch (const geom::SyntaxError& e) {
    CHECK(e.position == 4);
  }
}

TEST_CASE("unknown identifiers are reported by name") {
  try {
    parse("sni(x)", kXY);
    FAIL("expected UnknownIdentifier");
  } catch (const geom::UnknownIdentifier& e) {
    CHECK(e.name == "sni");
  }
  CHECK_THROWS_AS(parse("x+z", kXY), geom::UnknownIdentifier);
}

TEST_CASE("unbound variables surface at eval time") {
  geom::Expr e = parse("x+y", kXY);
  CHECK_THROWS_AS(geom::eval_real(e, {{"x", 1.0}}), geom::UnknownIdentifier);
}

TEST_CASE("eval_real basics") {
  std::vector<std::string> rt = {"r", "theta"};
  CHECK(eval("r^2*sin(theta)^2", {{"r", 1.0}, {"theta", M_PI / 2}}, rt) == doctest::Approx(1.0));
  CHECK(eval("x+y*y", {{"x", 1.0}, {"y", 2.0}}) == doctest::Approx(5.0));
  CHECK(eval("pi", {{"x", 0.0}, {"y", 0.0}}) == doctest::Approx(M_PI));
  CHECK_THROWS_AS(eval("sqrt(0-1)", {{"x", 0.0}, {"y", 0.0}}), geom::DomainError);
  CHECK_THROWS_AS(eval("1/x", {{"x", 0.0}, {"y", 0.0}}), geom::DomainError);
  CHECK_THROWS_AS(eval("log(0-2)", {{"x", 0.0}, {"y", 0.0}}), geom::DomainError);
}

TEST_CASE("precedence: ^ binds tighter than unary minus, * over +") {
  Bindings b = {{"x", 3.0}, {"y", 2.0}};
  CHECK(eval("-x^2", b) == doctest::Approx(-9.0));
  CHECK(eval("2^3^2", b) == doctest::Approx(512.0));  // 2^(3^2)
  CHECK(eval("2+3*4", b) == doctest::Approx(14.0));
  CHECK(eval("2*x^2", b) == doctest::Approx(18.0));
  CHECK(eval("x^-2", b) == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("integer power fast path avoids spurious domain errors") {
  Bindings b = {{"x", 0.0}, {"y", -2.0}};
  CHECK(eval("sin(x)^2", b) == doctest::Approx(0.0));
  CHECK(eval("y^3", b) == doctest::Approx(-8.0));   // negative base, integer exponent
  CHECK(eval("y^2", b) == doctest::Approx(4.0));
  CHECK_THROWS_AS(eval("y^0.5", b), geom::DomainError);   // non-integer needs positive base
  CHECK_THROWS_AS(eval("x^-1", b), geom::DomainError);    // zero base, negative exponent
  CHECK(eval("x^0", b) == doctest::Approx(1.0));
}

TEST_CASE("dual1 gradients on hand examples") {
  Expr e = parse("x*y", kXY);
  Dual1 d = geom::eval_dual1(e, {{"x", 3.0}, {"y", 2.0}}, kXY);
  CHECK(d.value() == doctest::Approx(6.0));
  CHECK(d.grad(0) == doctest::Approx(2.0));
  CHECK(d.grad(1) == doctest::Approx(3.0));

  std::vector<std::string> th = {"theta"};
  Dual1 s = geom::eval_dual1(parse("sin(theta)", th), {{"theta", 0.0}}, th);
  CHECK(s.value() == doctest::Approx(0.0));
  CHECK(s.grad(0) == doctest::Approx(1.0));

  Dual1 q = geom::eval_dual1(parse("1/y^2", kXY), {{"x", 0.0}, {"y", 2.0}}, kXY);
  CHECK(q.value() == doctest::Approx(0.25));
  // frozen from the central-difference oracle, h=1e-6
  auto f = [](double y) { return 1.0 / (y * y); };
  CHECK(q.grad(1) == doctest::Approx(oracles::central_diff(f, 2.0)).epsilon(1e-9));
  CHECK(q.grad(1) == doctest::Approx(-0.25));
}

TEST_CASE("dual2 values on hand examples") {
  std::vector<std::string> x = {"x"};
  Dual2 d = geom::eval_dual2(parse("x^2", x), {{"x", 3.0}}, x);
  CHECK(d.value() == doctest::Approx(9.0));
  CHECK(d.grad(0) == doctest::Approx(6.0));
  CHECK(d.hess(0, 0) == doctest::Approx(2.0));

  Dual2 xy = geom::eval_dual2(parse("x*y", kXY), {{"x", 1.5}, {"y", -2.0}}, kXY);
  CHECK(xy.hess(0, 1) == doctest::Approx(1.0));
  CHECK(xy.hess(0, 0) == doctest::Approx(0.0));
  CHECK(xy.hess(1, 1) == doctest::Approx(0.0));

  std::vector<std::string> th = {"theta"};
  Dual2 s2 = geom::eval_dual2(parse("sin(theta)^2", th), {{"theta", M_PI / 3}}, th);
  // second central difference oracle agrees with 2 cos(2 theta)
  auto f = [](double t) { return std::sin(t) * std::sin(t); };
  CHECK(s2.hess(0, 0) == doctest::Approx(oracles::second_diff(f, M_PI / 3)).epsilon(1e-6));
  CHECK(s2.hess(0, 0) == doctest::Approx(2.0 * std::cos(2.0 * M_PI / 3)));
}

TEST_CASE("abs derivative is sign(x) with 0 at the kink") {
  std::vector<std::string> x = {"x"};
  CHECK(geom::eval_dual1(parse("abs(x)", x), {{"x", -3.0}}, x).grad(0) == doctest::Approx(-1.0));
  CHECK(geom::eval_dual1(parse("abs(x)", x), {{"x", 2.0}}, x).grad(0) == doctest::Approx(1.0));
  CHECK(geom::eval_dual1(parse("abs(x)", x), {{"x", 0.0}}, x).grad(0) == doctest::Approx(0.0));
}

TEST_CASE("property: dual derivatives match finite differences on random expressions") {
  geom::SplitMix64 rng(42);
  int generated = 0;
  int checked = 0;
  while (checked < 200 && generated < 2000) {
    ++generated;
    std::string text = oracles::random_expression(rng, kXY, 4);
    Expr e = parse(text, kXY);
    double px = rng.uniform(-2.0, 2.0);
    double py = rng.uniform(-2.0, 2.0);
    Bindings at = {{"x", px}, {"y", py}};

    Dual1 d1;
    Dual2 d2;
    double fd[2];
    double fd2[2][2];
    try {
      d1 = geom::eval_dual1(e, at, kXY);
      d2 = geom::eval_dual2(e, at, kXY);
      for (int k = 0; k < 2; ++k) {
        auto f = [&](double v) {
          Bindings b = at;
          b[kXY[k]] = v;
          return geom::eval_real(e, b);
        };
        fd[k] = oracles::central_diff(f, k == 0 ? px : py);
        fd2[k][k] = oracles::second_diff(f, k == 0 ? px : py);
      }
      auto fxy = [&](double xx, double yy) {
        return geom::eval_real(e, {{"x", xx}, {"y", yy}});
      };
      const double h = 1e-4;
      fd2[0][1] = fd2[1][0] = (fxy(px + h, py + h) - fxy(px + h, py - h) - fxy(px - h, py + h) +
                               fxy(px - h, py - h)) /
                              (4.0 * h * h);
    } catch (const geom::DomainError&) {
      continue;  // regenerate away from kinks and poles
    }
    double scale = std::fabs(d1.value());
    if (!std::isfinite(scale) || scale > 1e3) continue;

    bool skip = false;
    for (int k = 0; k < 2; ++k)
      if (std::fabs(d1.grad(k)) > 1e3 || std::fabs(d2.hess(k, k)) > 1e3) skip = true;
    if (skip) continue;

    ++checked;
    for (int k = 0; k < 2; ++k) {
      CAPTURE(text);
      CHECK(std::fabs(d1.grad(k) - fd[k]) <= 1e-6 * (1.0 + std::fabs(d1.grad(k))));
      // dual2 gradient must equal dual1 gradient exactly
      CHECK(d2.grad(k) == d1.grad(k));
    }
    // hessian exactly symmetric, and consistent with second differences
    CHECK(d2.hess(0, 1) == d2.hess(1, 0));
    for (int k = 0; k < 2; ++k)
      CHECK(std::fabs(d2.hess(k, k) - fd2[k][k]) <= 2e-5 * (1.0 + std::fabs(d2.hess(k, k))));
    CHECK(std::fabs(d2.hess(0, 1) - fd2[0][1]) <= 2e-5 * (1.0 + std::fabs(d2.hess(0, 1))));
  }
  CHECK(checked == 200);
}

TEST_CASE("print-parse fixpoint evaluates identically") {
  geom::SplitMix64 rng(7);
  int checked = 0, generated = 0;
  while (checked < 100 && generated < 1000) {
    ++generated;
    std::string text = oracles::random_expression(rng, kXY, 4);
    Expr e = parse(text, kXY);
    Expr round = parse(geom::to_string(e), kXY);
    double px = rng.uniform(-2.0, 2.0), py = rng.uniform(-2.0, 2.0);
    Bindings b = {{"x", px}, {"y", py}};
    double a, c;
    try {
      a = geom::eval_real(e, b);
      c = geom::eval_real(round, b);
    } catch (const geom::DomainError&) {
      continue;
    }
    if (!std::isfinite(a)) continue;
    ++checked;
    CHECK(std::fabs(a - c) <= 1e-15 * std::max(1.0, std::fabs(a)));
  }
  CHECK(checked == 100);
}
