// Forward-mode dual scalars: first-order (value + gradient) and second-order
// (value + gradient + Hessian). Seed slots correspond to chart coordinates;
// capacity is fixed so evaluation stays allocation-free.
#pragma once

#include <array>
#include <cmath>
#include <cstring>

#include "geom/errors.hpp"

namespace geom {

// Charts are desk-scale; eight coordinates is the supported maximum.
inline constexpr int kMaxDim = 8;

// value + first partials in `n` seed slots
class Dual1 {
 public:
  Dual1() : v_(0.0), n_(0) { g_.fill(0.0); }
  explicit Dual1(double v, int n = 0) : v_(v), n_(n) { g_.fill(0.0); }

  // constant c in an n-slot context
  static Dual1 constant(double c, int n) { return Dual1(c, n); }

  // variable seeded on slot `slot`
  static Dual1 variable(double v, int n, int slot) {
    Dual1 d(v, n);
    d.g_[slot] = 1.0;
    return d;
  }

  double value() const { return v_; }
  int slots() const { return n_; }
  double grad(int k) const { return g_[k]; }
  double& grad(int k) { return g_[k]; }

  bool has_zero_derivatives() const {
    for (int k = 0; k < n_; ++k)
      if (g_[k] != 0.0) return false;
    return true;
  }

  friend Dual1 operator-(const Dual1& a) {
    Dual1 r(-a.v_, a.n_);
    for (int k = 0; k < a.n_; ++k) r.g_[k] = -a.g_[k];
    return r;
  }
  friend Dual1 operator+(const Dual1& a, const Dual1& b) {
    Dual1 r(a.v_ + b.v_, a.n_);
    for (int k = 0; k < a.n_; ++k) r.g_[k] = a.g_[k] + b.g_[k];
    return r;
  }
  friend Dual1 operator-(const Dual1& a, const Dual1& b) {
    Dual1 r(a.v_ - b.v_, a.n_);
    for (int k = 0; k < a.n_; ++k) r.g_[k] = a.g_[k] - b.g_[k];
    return r;
  }
  friend Dual1 operator*(const Dual1& a, const Dual1& b) {
    Dual1 r(a.v_ * b.v_, a.n_);
    for (int k = 0; k < a.n_; ++k) r.g_[k] = a.g_[k] * b.v_ + a.v_ * b.g_[k];
    return r;
  }

  // f(a) with supplied f(a.v) and f'(a.v)
  static Dual1 chain(const Dual1& a, double f, double df) {
    Dual1 r(f, a.n_);
    for (int k = 0; k < a.n_; ++k) r.g_[k] = df * a.g_[k];
    return r;
  }

 private:
  double v_;
  int n_;
  std::array<double, kMaxDim> g_;
};

// value + first partials + symmetric second partials
class Dual2 {
 public:
  Dual2() : v_(0.0), n_(0) {
    g_.fill(0.0);
    h_.fill(0.0);
  }
  explicit Dual2(double v, int n = 0) : v_(v), n_(n) {
    g_.fill(0.0);
    h_.fill(0.0);
  }

  static Dual2 constant(double c, int n) { return Dual2(c, n); }

  static Dual2 variable(double v, int n, int slot) {
    Dual2 d(v, n);
    d.g_[slot] = 1.0;
    return d;
  }

  double value() const { return v_; }
  int slots() const { return n_; }
  double grad(int k) const { return g_[k]; }
  double hess(int i, int j) const { return h_[i * kMaxDim + j]; }

  bool has_zero_derivatives() const {
    for (int k = 0; k < n_; ++k)
      if (g_[k] != 0.0) return false;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (h_[i * kMaxDim + j] != 0.0) return false;
    return true;
  }

  friend Dual2 operator-(const Dual2& a) {
    Dual2 r(-a.v_, a.n_);
    for (int k = 0; k < a.n_; ++k) r.g_[k] = -a.g_[k];
    for (int i = 0; i < a.n_; ++i)
      for (int j = 0; j <= i; ++j) r.set_h(i, j, -a.hess(i, j));
    return r;
  }
  friend Dual2 operator+(const Dual2& a, const Dual2& b) {
    Dual2 r(a.v_ + b.v_, a.n_);
    for (int k = 0; k < a.n_; ++k) r.g_[k] = a.g_[k] + b.g_[k];
    for (int i = 0; i < a.n_; ++i)
      for (int j = 0; j <= i; ++j) r.set_h(i, j, a.hess(i, j) + b.hess(i, j));
    return r;
  }
  friend Dual2 operator-(const Dual2& a, const Dual2& b) {
    Dual2 r(a.v_ - b.v_, a.n_);
    for (int k = 0; k < a.n_; ++k) r.g_[k] = a.g_[k] - b.g_[k];
    for (int i = 0; i < a.n_; ++i)
      for (int j = 0; j <= i; ++j) r.set_h(i, j, a.hess(i, j) - b.hess(i, j));
    return r;
  }
  friend Dual2 operator*(const Dual2& a, const Dual2& b) {
    Dual2 r(a.v_ * b.v_, a.n_);
    for (int k = 0; k < a.n_; ++k) r.g_[k] = a.g_[k] * b.v_ + a.v_ * b.g_[k];
    // h(uv) = u''v + uv'' + u'⊗v' + v'⊗u', entered lower-triangle first so the
    // stored matrix is symmetric bit-for-bit
    for (int i = 0; i < a.n_; ++i)
      for (int j = 0; j <= i; ++j)
        r.set_h(i, j, a.hess(i, j) * b.v_ + a.v_ * b.hess(i, j) +
                          a.g_[i] * b.g_[j] + a.g_[j] * b.g_[i]);
    return r;
  }

  // f(a) with supplied f(a.v), f'(a.v), f''(a.v)
  static Dual2 chain(const Dual2& a, double f, double df, double ddf) {
    Dual2 r(f, a.n_);
    for (int k = 0; k < a.n_; ++k) r.g_[k] = df * a.g_[k];
    for (int i = 0; i < a.n_; ++i)
      for (int j = 0; j <= i; ++j)
        r.set_h(i, j, df * a.hess(i, j) + ddf * a.g_[i] * a.g_[j]);
    return r;
  }

 private:
  void set_h(int i, int j, double v) {
    h_[i * kMaxDim + j] = v;
    h_[j * kMaxDim + i] = v;
  }

  double v_;
  int n_;
  std::array<double, kMaxDim> g_;
  std::array<double, kMaxDim * kMaxDim> h_;
};

// --- elementary functions -------------------------------------------------
// Domain checks live in the expression evaluator; these assume valid input.

inline double scalar_value(double x) { return x; }
inline double scalar_value(const Dual1& x) { return x.value(); }
inline double scalar_value(const Dual2& x) { return x.value(); }

inline bool derivatives_vanish(double) { return true; }
inline bool derivatives_vanish(const Dual1& x) { return x.has_zero_derivatives(); }
inline bool derivatives_vanish(const Dual2& x) { return x.has_zero_derivatives(); }

inline double make_like(double, double c) { return c; }
inline Dual1 make_like(const Dual1& proto, double c) { return Dual1::constant(c, proto.slots()); }
inline Dual2 make_like(const Dual2& proto, double c) { return Dual2::constant(c, proto.slots()); }

inline double apply_chain(double, double f, double, double) { return f; }
inline Dual1 apply_chain(const Dual1& a, double f, double df, double) {
  return Dual1::chain(a, f, df);
}
inline Dual2 apply_chain(const Dual2& a, double f, double df, double ddf) {
  return Dual2::chain(a, f, df, ddf);
}

template <class T>
T dual_sin(const T& x) {
  double v = scalar_value(x);
  return apply_chain(x, std::sin(v), std::cos(v), -std::sin(v));
}
template <class T>
T dual_cos(const T& x) {
  double v = scalar_value(x);
  return apply_chain(x, std::cos(v), -std::sin(v), -std::cos(v));
}
template <class T>
T dual_tan(const T& x) {
  double v = scalar_value(x);
  double t = std::tan(v);
  double sec2 = 1.0 + t * t;
  return apply_chain(x, t, sec2, 2.0 * t * sec2);
}
template <class T>
T dual_sinh(const T& x) {
  double v = scalar_value(x);
  return apply_chain(x, std::sinh(v), std::cosh(v), std::sinh(v));
}
template <class T>
T dual_cosh(const T& x) {
  double v = scalar_value(x);
  return apply_chain(x, std::cosh(v), std::sinh(v), std::cosh(v));
}
template <class T>
T dual_tanh(const T& x) {
  double v = scalar_value(x);
  double t = std::tanh(v);
  double sech2 = 1.0 - t * t;
  return apply_chain(x, t, sech2, -2.0 * t * sech2);
}
template <class T>
T dual_exp(const T& x) {
  double e = std::exp(scalar_value(x));
  return apply_chain(x, e, e, e);
}
// caller guarantees a positive argument
template <class T>
T dual_log(const T& x) {
  double v = scalar_value(x);
  return apply_chain(x, std::log(v), 1.0 / v, -1.0 / (v * v));
}
// caller guarantees a non-negative argument; derivative at 0 overflows to inf
template <class T>
T dual_sqrt(const T& x) {
  double v = scalar_value(x);
  double s = std::sqrt(v);
  return apply_chain(x, s, 0.5 / s, -0.25 / (s * v));
}
// derivative sign(x), 0 at the kink
template <class T>
T dual_abs(const T& x) {
  double v = scalar_value(x);
  double sg = (v > 0.0) ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
  return apply_chain(x, std::fabs(v), sg, 0.0);
}
// caller guarantees a non-zero denominator value
template <class T>
T dual_recip(const T& x) {
  double v = scalar_value(x);
  return apply_chain(x, 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}
template <class T>
T dual_div(const T& a, const T& b) {
  return a * dual_recip(b);
}

// integer power by repeated multiplication; |n| <= 64, caller checked n < 0
// against a zero base
template <class T>
T dual_ipow(const T& x, long n) {
  bool neg = n < 0;
  if (neg) n = -n;
  T acc = make_like(x, 1.0);
  for (long i = 0; i < n; ++i) acc = acc * x;
  return neg ? dual_recip(acc) : acc;
}

}  // namespace geom
