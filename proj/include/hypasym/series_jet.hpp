// Truncated Taylor series ("jets") with exact arithmetic on coefficients.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hypasym/complex.hpp"
#include "hypasym/double_double.hpp"

namespace hypasym {

template <class T>
class Jet {
 public:
  Jet() = default;
  explicit Jet(std::size_t n) : c_(n, T(0.0)) {}
  Jet(std::vector<T> coeffs, DoubleDouble center = 0.0) : c_(std::move(coeffs)), center_(center) {}

  static Jet constant(const T& v, std::size_t n) {
    Jet j(n);
    if (n) j.c_[0] = v;
    return j;
  }
  // v + x
  static Jet variable(const T& v, std::size_t n) {
    Jet j = constant(v, n);
    if (n > 1) j.c_[1] = T(1.0);
    return j;
  }

  std::size_t size() const { return c_.size(); }
  T& operator[](std::size_t i) { return c_[i]; }
  const T& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<T>& coeffs() const { return c_; }
  DoubleDouble center() const { return center_; }
  void set_center(DoubleDouble c) { center_ = c; }

  T evaluate(const T& x) const {
    T s(0.0);
    for (std::size_t i = c_.size(); i-- > 0;) s = s * x + c_[i];
    return s;
  }

  Jet operator-() const {
    Jet r(*this);
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend Jet operator+(Jet a, const Jet& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend Jet operator-(Jet a, const Jet& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) a.c_[i] -= b.c_[i];
    return a;
  }
  friend Jet operator+(Jet a, const T& b) {
    a.c_[0] += b;
    return a;
  }
  friend Jet operator*(Jet a, const T& b) {
    for (auto& v : a.c_) v = v * b;
    return a;
  }
  friend Jet operator*(const T& b, Jet a) { return a * b; }
  friend Jet operator/(Jet a, const T& b) {
    for (auto& v : a.c_) v = v / b;
    return a;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    std::size_t n = std::min(a.size(), b.size());
    Jet r(n);
    r.center_ = a.center_;
    for (std::size_t i = 0; i < n; ++i) {
      if (a.c_[i] == T(0.0)) continue;
      for (std::size_t j = 0; i + j < n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }

 private:
  std::vector<T> c_;
  DoubleDouble center_ = 0.0;
};

using SeriesJet = Jet<DoubleDouble>;
using ComplexJet = Jet<ComplexDD>;

template <class T>
Jet<T> inverse(const Jet<T>& a) {
  std::size_t n = a.size();
  Jet<T> b(n);
  if (a[0] == T(0.0)) throw std::domain_error("jet inverse: zero constant term");
  T inv0 = T(1.0) / a[0];
  b[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    T s(0.0);
    for (std::size_t j = 1; j <= k; ++j) s += a[j] * b[k - j];
    b[k] = -s * inv0;
  }
  return b;
}

template <class T>
Jet<T> derivative(const Jet<T>& a) {
  Jet<T> r(a.size());
  for (std::size_t k = 0; k + 1 < a.size(); ++k) r[k] = a[k + 1] * static_cast<double>(k + 1);
  return r;
}

template <class T>
Jet<T> integral(const Jet<T>& a, const T& c0) {
  Jet<T> r(a.size());
  if (!a.size()) return r;
  r[0] = c0;
  for (std::size_t k = 1; k < a.size(); ++k) r[k] = a[k - 1] / static_cast<double>(k);
  return r;
}

template <class T>
Jet<T> log(const Jet<T>& a) {
  using std::log;
  return integral(derivative(a) * inverse(a), T(log(a[0])));
}

template <class T>
Jet<T> exp(const Jet<T>& a) {
  using std::exp;
  std::size_t n = a.size();
  Jet<T> b(n);
  if (!n) return b;
  b[0] = exp(a[0]);
  // b' = a' b
  for (std::size_t k = 1; k < n; ++k) {
    T s(0.0);
    for (std::size_t j = 1; j <= k; ++j) s += a[j] * b[k - j] * static_cast<double>(j);
    b[k] = s / static_cast<double>(k);
  }
  return b;
}

template <class T>
Jet<T> pow(const Jet<T>& a, const T& p) {
  return exp(log(a) * p);
}

// outer(inner(x)); inner must have zero constant term.
template <class T>
Jet<T> compose(const Jet<T>& outer, const Jet<T>& inner) {
  std::size_t n = inner.size();
  Jet<T> r(n);
  Jet<T> pw = Jet<T>::constant(T(1.0), n);
  for (std::size_t k = 0; k < outer.size() && k < n; ++k) {
    for (std::size_t i = k; i < n; ++i) r[i] += outer[k] * pw[i];
    pw = pw * inner;
  }
  return r;
}

// Inverse function series: a(b(x)) = x, with a[0] = 0, a[1] != 0.
template <class T>
Jet<T> revert(const Jet<T>& a) {
  std::size_t n = a.size();
  Jet<T> b(n);
  if (n < 2) return b;
  if (a[1] == T(0.0)) throw std::domain_error("jet reversion: zero linear term");
  b[1] = T(1.0) / a[1];
  for (std::size_t k = 2; k < n; ++k) {
    Jet<T> c = compose(a, b);
    b[k] = -c[k] / a[1];
  }
  return b;
}

// Divides by x^k, dropping the first k coefficients (they must vanish).
template <class T>
Jet<T> shift_down(const Jet<T>& a, std::size_t k) {
  Jet<T> r(a.size() - k);
  for (std::size_t i = k; i < a.size(); ++i) r[i - k] = a[i];
  return r;
}

template <class T>
Jet<T> resized(const Jet<T>& a, std::size_t n) {
  Jet<T> r(n);
  for (std::size_t i = 0; i < n && i < a.size(); ++i) r[i] = a[i];
  r.set_center(a.center());
  return r;
}

// Taylor coefficients of f about center from samples at center + k*step,
// k = -m..m, by exact polynomial interpolation (Newton form in double-double).
// Returns coefficients 0..degree. Truncation error is O(step^(2m+1-j)).
SeriesJet fd_jet(const std::function<DoubleDouble(const DoubleDouble&)>& f, const DoubleDouble& center,
                 const DoubleDouble& step, int degree, int half_width);

}  // namespace hypasym
