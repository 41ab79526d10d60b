#pragma once
// Truncated Taylor jets with runtime length and a small gradient dual type.
// Jet<T> holds c[0..n) where c[k] is the k-th Taylor coefficient (not derivative).
#include <array>
#include <cassert>
#include <cmath>
#include <complex>

namespace oscint {

// value + gradient in two real variables
struct Dual2 {
  double v = 0, d0 = 0, d1 = 0;
  constexpr Dual2() = default;
  constexpr Dual2(double x) : v(x) {}
  constexpr Dual2(double x, double a, double b) : v(x), d0(a), d1(b) {}

  Dual2& operator+=(const Dual2& o) { v += o.v; d0 += o.d0; d1 += o.d1; return *this; }
  Dual2& operator-=(const Dual2& o) { v -= o.v; d0 -= o.d0; d1 -= o.d1; return *this; }
  Dual2& operator*=(const Dual2& o) {
    d0 = d0 * o.v + v * o.d0;
    d1 = d1 * o.v + v * o.d1;
    v *= o.v;
    return *this;
  }
  Dual2& operator/=(const Dual2& o) {
    const double inv = 1.0 / o.v;
    const double q = v * inv;
    d0 = (d0 - q * o.d0) * inv;
    d1 = (d1 - q * o.d1) * inv;
    v = q;
    return *this;
  }
};
inline Dual2 operator+(Dual2 a, const Dual2& b) { return a += b; }
inline Dual2 operator-(Dual2 a, const Dual2& b) { return a -= b; }
inline Dual2 operator*(Dual2 a, const Dual2& b) { return a *= b; }
inline Dual2 operator/(Dual2 a, const Dual2& b) { return a /= b; }
inline Dual2 operator-(const Dual2& a) { return {-a.v, -a.d0, -a.d1}; }
inline Dual2 exp(const Dual2& a) {
  const double e = std::exp(a.v);
  return {e, e * a.d0, e * a.d1};
}
inline Dual2 sqrt(const Dual2& a) {
  const double s = std::sqrt(a.v);
  const double k = 0.5 / s;
  return {s, k * a.d0, k * a.d1};
}

template <class T, int Cap = 16>
struct Jet {
  std::array<T, Cap> c{};
  int n = 1;

  Jet() = default;
  explicit Jet(int len, T c0 = T{}) : n(len) {
    assert(len >= 1 && len <= Cap);
    c[0] = c0;
  }
  // x0 + t (the independent variable shifted to x0, scaled by dx)
  static Jet variable(int len, T x0, T dx = T{1}) {
    Jet j(len, x0);
    if (len > 1) j.c[1] = dx;
    return j;
  }

  T& operator[](int k) { return c[k]; }
  const T& operator[](int k) const { return c[k]; }

  Jet& operator+=(const Jet& o) { for (int k = 0; k < n; ++k) c[k] += o.c[k]; return *this; }
  Jet& operator-=(const Jet& o) { for (int k = 0; k < n; ++k) c[k] -= o.c[k]; return *this; }
  Jet& operator+=(const T& s) { c[0] += s; return *this; }
  Jet& operator-=(const T& s) { c[0] -= s; return *this; }
  Jet& operator*=(const T& s) { for (int k = 0; k < n; ++k) c[k] *= s; return *this; }
  Jet& operator*=(const Jet& o) { *this = *this * o; return *this; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, const T& s) { return a += s; }
  friend Jet operator+(const T& s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, const T& s) { return a -= s; }
  friend Jet operator-(const T& s, const Jet& a) {
    Jet r = -a;
    r.c[0] += s;
    return r;
  }
  friend Jet operator*(Jet a, const T& s) { return a *= s; }
  friend Jet operator*(const T& s, Jet a) { return a *= s; }
  friend Jet operator-(const Jet& a) {
    Jet r(a.n);
    for (int k = 0; k < a.n; ++k) r.c[k] = -a.c[k];
    return r;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.n);
    for (int k = 0; k < a.n; ++k) {
      T s = a.c[0] * b.c[k];
      for (int j = 1; j <= k; ++j) s += a.c[j] * b.c[k - j];
      r.c[k] = s;
    }
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet q(a.n);
    const T inv = T{1} / b.c[0];
    for (int k = 0; k < a.n; ++k) {
      T s = a.c[k];
      for (int j = 1; j <= k; ++j) s -= b.c[j] * q.c[k - j];
      q.c[k] = s * inv;
    }
    return q;
  }
  friend Jet operator/(const T& s, const Jet& b) { return Jet(b.n, s) / b; }
  friend Jet operator/(Jet a, const T& s) { return a *= (T{1} / s); }
};

template <class T, int C>
Jet<T, C> exp(const Jet<T, C>& u) {
  using std::exp;
  Jet<T, C> e(u.n, exp(u.c[0]));
  for (int k = 1; k < u.n; ++k) {
    T s = u.c[1] * e.c[k - 1];
    for (int j = 2; j <= k; ++j) s += T(double(j)) * u.c[j] * e.c[k - j];
    e.c[k] = s / T(double(k));
  }
  return e;
}

template <class T, int C>
Jet<T, C> sqrt(const Jet<T, C>& u) {
  using std::sqrt;
  Jet<T, C> s(u.n, sqrt(u.c[0]));
  const T inv2 = T{1} / (T{2.0} * s.c[0]);
  for (int k = 1; k < u.n; ++k) {
    T acc = u.c[k];
    for (int j = 1; j < k; ++j) acc -= s.c[j] * s.c[k - j];
    s.c[k] = acc * inv2;
  }
  return s;
}

// d/dt of the jet; the top coefficient is lost (length shrinks by one)
template <class T, int C>
Jet<T, C> derivative(const Jet<T, C>& u) {
  Jet<T, C> d(u.n > 1 ? u.n - 1 : 1);
  if (u.n == 1) return d;
  for (int k = 0; k + 1 < u.n; ++k) d.c[k] = T(double(k + 1)) * u.c[k + 1];
  return d;
}

// truncate / extend to a new length
template <class T, int C>
Jet<T, C> resized(const Jet<T, C>& u, int len) {
  Jet<T, C> r(len);
  for (int k = 0; k < len; ++k) r.c[k] = k < u.n ? u.c[k] : T{};
  return r;
}

using CJet = Jet<std::complex<double>>;
using DJet = Jet<Dual2>;

}  // namespace oscint
