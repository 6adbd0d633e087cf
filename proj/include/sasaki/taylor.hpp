#pragma once

// Truncated univariate Taylor series ("jets"): a_0 + a_1 e + ... + a_m e^m.
// Arithmetic keeps the smaller truncation order of the operands; d()
// differentiates and drops one order. Used to evaluate the torus-reduced
// curvature formulas with exact derivatives.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace sasaki {

template <class T>
class Jet {
 public:
  static constexpr int kMaxOrder = 8;

  Jet() = default;
  Jet(T constant, int order) : order_(check(order)) { c_[0] = constant; }
  // sigma + e at the given order.
  static Jet variable(T at, int order) {
    Jet j(at, order);
    if (order >= 1) j.c_[1] = T(1);
    return j;
  }

  int order() const { return order_; }
  const T& operator[](int k) const { return c_[k]; }
  T& operator[](int k) { return c_[k]; }
  T value() const { return c_[0]; }
  // k-th derivative at the expansion point.
  T derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c_[k] * f;
  }

  Jet d() const {
    if (order_ == 0) throw std::logic_error("jet derivative needs order >= 1");
    Jet r(T(0), order_ - 1);
    for (int k = 0; k < order_; ++k) r.c_[k] = T(k + 1) * c_[k + 1];
    return r;
  }

  Jet truncated(int order) const {
    Jet r = *this;
    r.order_ = std::min(order_, order);
    for (int k = r.order_ + 1; k <= kMaxOrder; ++k) r.c_[k] = T(0);
    return r;
  }

  Jet operator-() const {
    Jet r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r(T(0), std::min(a.order_, b.order_));
    for (int k = 0; k <= r.order_; ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(T(0), std::min(a.order_, b.order_));
    for (int k = 0; k <= r.order_; ++k) {
      T acc(0);
      for (int i = 0; i <= k; ++i) acc += a.c_[i] * b.c_[k - i];
      r.c_[k] = acc;
    }
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r(T(0), std::min(a.order_, b.order_));
    for (int k = 0; k <= r.order_; ++k) {
      T acc = a.c_[k];
      for (int i = 1; i <= k; ++i) acc -= b.c_[i] * r.c_[k - i];
      r.c_[k] = acc / b.c_[0];
    }
    return r;
  }
  template <class S>
  friend Jet operator*(const Jet& a, S s) {
    Jet r = a;
    for (auto& x : r.c_) x *= T(s);
    return r;
  }
  template <class S>
  friend Jet operator*(S s, const Jet& a) {
    return a * s;
  }
  template <class S>
  friend Jet operator/(const Jet& a, S s) {
    Jet r = a;
    for (auto& x : r.c_) x /= T(s);
    return r;
  }
  template <class S>
  friend Jet operator+(const Jet& a, S s) {
    Jet r = a;
    r.c_[0] += T(s);
    return r;
  }
  template <class S>
  friend Jet operator+(S s, const Jet& a) {
    return a + s;
  }
  template <class S>
  friend Jet operator-(const Jet& a, S s) {
    return a + (-s);
  }
  template <class S>
  friend Jet operator-(S s, const Jet& a) {
    return (-a) + s;
  }

 private:
  static int check(int order) {
    if (order < 0 || order > kMaxOrder) throw std::invalid_argument("jet order out of range");
    return order;
  }
  std::array<T, kMaxOrder + 1> c_{};
  int order_ = 0;
};

// cos and sin of a jet by the coupled recurrences c' = -s u', s' = c u'.
template <class T>
void sincos(const Jet<T>& u, Jet<T>& s, Jet<T>& c) {
  using std::cos;
  using std::sin;
  const int m = u.order();
  s = Jet<T>(sin(u[0]), m);
  c = Jet<T>(cos(u[0]), m);
  for (int k = 1; k <= m; ++k) {
    T as(0), ac(0);
    for (int i = 1; i <= k; ++i) {
      as += T(i) * u[i] * c[k - i];
      ac -= T(i) * u[i] * s[k - i];
    }
    s[k] = as / T(k);
    c[k] = ac / T(k);
  }
}

template <class T>
Jet<T> cos(const Jet<T>& u) {
  Jet<T> s, c;
  sincos(u, s, c);
  return c;
}

template <class T>
Jet<T> sin(const Jet<T>& u) {
  Jet<T> s, c;
  sincos(u, s, c);
  return s;
}

}  // namespace sasaki
