// Minimal complex type usable with both double and DoubleDouble components.
// Branch conventions are principal: arg in (-pi, pi].
#pragma once

#include <cmath>
#include <complex>

#include "hypasym/double_double.hpp"

namespace hypasym {

template <class T>
struct Complex {
  T re{};
  T im{};

  constexpr Complex() = default;
  constexpr Complex(T r) : re(r), im(0.0) {}  // NOLINT: implicit by design
  constexpr Complex(T r, T i) : re(r), im(i) {}
  template <class U>
    requires(!std::is_same_v<U, T> && std::is_arithmetic_v<U>)
  constexpr Complex(U r) : re(static_cast<double>(r)), im(0.0) {}  // NOLINT

  Complex operator-() const { return {-re, -im}; }
  Complex& operator+=(const Complex& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  Complex& operator-=(const Complex& b) {
    re -= b.re;
    im -= b.im;
    return *this;
  }
  Complex& operator*=(const Complex& b) { return *this = *this * b; }
  Complex& operator/=(const Complex& b) { return *this = *this / b; }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Complex& a, const T& b) { return {a.re * b, a.im * b}; }
  friend Complex operator*(const T& b, const Complex& a) { return {a.re * b, a.im * b}; }
  friend Complex operator/(const Complex& a, const T& b) { return {a.re / b, a.im / b}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    // Scale by the larger component to keep the denominator in range.
    using std::abs;
    if (abs(b.re) >= abs(b.im)) {
      T q = b.im / b.re;
      T den = b.re + b.im * q;
      return {(a.re + a.im * q) / den, (a.im - a.re * q) / den};
    }
    T q = b.re / b.im;
    T den = b.re * q + b.im;
    return {(a.re * q + a.im) / den, (a.im * q - a.re) / den};
  }
  template <class U>
    requires(!std::is_same_v<U, T> && std::is_arithmetic_v<U>)
  friend Complex operator*(const Complex& a, U b) {
    return {a.re * static_cast<double>(b), a.im * static_cast<double>(b)};
  }
  template <class U>
    requires(!std::is_same_v<U, T> && std::is_arithmetic_v<U>)
  friend Complex operator*(U b, const Complex& a) {
    return {a.re * static_cast<double>(b), a.im * static_cast<double>(b)};
  }
  template <class U>
    requires(!std::is_same_v<U, T> && std::is_arithmetic_v<U>)
  friend Complex operator/(const Complex& a, U b) {
    return {a.re / static_cast<double>(b), a.im / static_cast<double>(b)};
  }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

using ComplexD = Complex<double>;
using ComplexDD = Complex<DoubleDouble>;

inline constexpr ComplexDD kI{DoubleDouble(0.0), DoubleDouble(1.0)};

template <class T>
Complex<T> conj(const Complex<T>& z) {
  return {z.re, -z.im};
}

template <class T>
T norm(const Complex<T>& z) {
  return z.re * z.re + z.im * z.im;
}

template <class T>
T abs(const Complex<T>& z) {
  using std::abs;
  using std::sqrt;
  T a = abs(z.re);
  T b = abs(z.im);
  if (a < b) std::swap(a, b);
  if (a == T(0.0)) return T(0.0);
  T q = b / a;
  return a * sqrt(T(1.0) + q * q);
}

template <class T>
T arg(const Complex<T>& z) {
  using std::atan2;
  return atan2(z.im, z.re);
}

// modulus * exp(i*phase)
template <class T>
Complex<T> polar(const T& modulus, const T& phase) {
  using std::cos;
  using std::sin;
  if constexpr (std::is_same_v<T, DoubleDouble>) {
    DoubleDouble s, c;
    sincos(phase, s, c);
    return {modulus * c, modulus * s};
  } else {
    return {modulus * cos(phase), modulus * sin(phase)};
  }
}

template <class T>
Complex<T> exp(const Complex<T>& z) {
  using std::exp;
  return polar(exp(z.re), z.im);
}

template <class T>
Complex<T> log(const Complex<T>& z) {
  using std::log;
  return {log(abs(z)), arg(z)};
}

template <class T>
Complex<T> sqrt(const Complex<T>& z) {
  using std::abs;
  using std::sqrt;
  if (z.re == T(0.0) && z.im == T(0.0)) return {};
  T m = abs(z);
  if (z.re >= T(0.0)) {
    T s = sqrt((m + z.re) * 0.5);
    return {s, z.im / (s * 2.0)};
  }
  T s = sqrt((m - z.re) * 0.5);
  T sgn = z.im < T(0.0) ? T(-1.0) : T(1.0);
  return {abs(z.im) / (s * 2.0), sgn * s};
}

template <class T>
Complex<T> pow(const Complex<T>& z, const Complex<T>& w) {
  return exp(w * log(z));
}

// Principal power of a positive real base.
template <class T>
Complex<T> pow(const T& base, const Complex<T>& w) {
  using std::log;
  T lb = log(base);
  return exp(w * lb);
}

inline ComplexD to_double(const ComplexDD& z) { return {to_double(z.re), to_double(z.im)}; }
inline ComplexDD to_dd(const ComplexD& z) { return {DoubleDouble(z.re), DoubleDouble(z.im)}; }
inline std::complex<double> to_std(const ComplexDD& z) { return {to_double(z.re), to_double(z.im)}; }

}  // namespace hypasym
