#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace fbtopo {

// Forward-mode dual number carrying K directional derivatives. Used to
// propagate exact derivatives through the element assembly loops; the
// branch points of the smoothed Heaviside are C1, so branching on the
// value part is safe.
template <int K>
struct Dual {
  double v = 0.0;
  std::array<double, K> d{};

  Dual() = default;
  Dual(double value) : v(value) { d.fill(0.0); }  // NOLINT: implicit by design

  static Dual seed(double value, int dir) {
    Dual r(value);
    r.d[dir] = 1.0;
    return r;
  }

  Dual operator-() const {
    Dual r;
    r.v = -v;
    for (int i = 0; i < K; ++i) r.d[i] = -d[i];
    return r;
  }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (int i = 0; i < K; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (int i = 0; i < K; ++i) d[i] -= o.d[i];
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }

  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v * b.v;
    for (int i = 0; i < K; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    return r;
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    Dual r;
    const double inv = 1.0 / b.v;
    r.v = a.v * inv;
    for (int i = 0; i < K; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) * inv;
    return r;
  }

  friend Dual operator+(Dual a, double s) {
    a.v += s;
    return a;
  }
  friend Dual operator+(double s, Dual a) {
    a.v += s;
    return a;
  }
  friend Dual operator-(Dual a, double s) {
    a.v -= s;
    return a;
  }
  friend Dual operator-(double s, const Dual& a) { return Dual(s) - a; }
  friend Dual operator*(Dual a, double s) {
    a.v *= s;
    for (int i = 0; i < K; ++i) a.d[i] *= s;
    return a;
  }
  friend Dual operator*(double s, Dual a) { return a * s; }
  friend Dual operator/(Dual a, double s) { return a * (1.0 / s); }
  friend Dual operator/(double s, const Dual& a) { return Dual(s) / a; }

  friend bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
  friend bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
  friend bool operator<(const Dual& a, double b) { return a.v < b; }
  friend bool operator>(const Dual& a, double b) { return a.v > b; }
  friend bool operator<(double a, const Dual& b) { return a < b.v; }
  friend bool operator>(double a, const Dual& b) { return a > b.v; }
};

template <int K>
Dual<K> sqrt(const Dual<K>& a) {
  Dual<K> r;
  r.v = std::sqrt(a.v);
  const double g = 0.5 / r.v;
  for (int i = 0; i < K; ++i) r.d[i] = g * a.d[i];
  return r;
}

template <int K>
Dual<K> log(const Dual<K>& a) {
  Dual<K> r;
  r.v = std::log(a.v);
  const double g = 1.0 / a.v;
  for (int i = 0; i < K; ++i) r.d[i] = g * a.d[i];
  return r;
}

// value(): strips the derivative part; lets templated kernels branch and
// query spatial indices with plain doubles.
inline double value(double x) { return x; }
template <int K>
double value(const Dual<K>& x) {
  return x.v;
}

using std::log;
using std::sqrt;

}  // namespace fbtopo
