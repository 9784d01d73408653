// Double-word ("double-double") floating point: an unevaluated sum hi + lo
// with |lo| <= ulp(hi)/2, giving about 106 significant bits.
#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <string>
#include <string_view>

namespace hypasym {

namespace detail {

// Error-free transforms.
inline double two_sum(double a, double b, double& err) {
  double s = a + b;
  double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
  return s;
}

// Requires |a| >= |b|.
inline double fast_two_sum(double a, double b, double& err) {
  double s = a + b;
  err = b - (s - a);
  return s;
}

inline double two_prod(double a, double b, double& err) {
  double p = a * b;
  err = std::fma(a, b, -p);
  return p;
}

}  // namespace detail

class DoubleDouble {
 public:
  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double x) : hi_(x), lo_(0.0) {}  // NOLINT: implicit by design

  // Normalizes the pair.
  static DoubleDouble from_sum(double a, double b) {
    double e;
    double s = detail::two_sum(a, b, e);
    return raw(s, e);
  }
  // Assumes (hi, lo) is already normalized.
  static constexpr DoubleDouble raw(double hi, double lo) {
    DoubleDouble r;
    r.hi_ = hi;
    r.lo_ = lo;
    return r;
  }
  // Parses a decimal literal exactly to double-double rounding; throws
  // std::invalid_argument on malformed input.
  static DoubleDouble parse(std::string_view text);

  constexpr double hi() const { return hi_; }
  constexpr double lo() const { return lo_; }
  explicit constexpr operator double() const { return hi_ + lo_; }

  DoubleDouble operator-() const { return raw(-hi_, -lo_); }

  DoubleDouble& operator+=(const DoubleDouble& b);
  DoubleDouble& operator-=(const DoubleDouble& b) { return *this += -b; }
  DoubleDouble& operator*=(const DoubleDouble& b);
  DoubleDouble& operator/=(const DoubleDouble& b);

  friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_;
  }
  friend std::partial_ordering operator<=>(const DoubleDouble& a, const DoubleDouble& b) {
    if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
    return a.lo_ <=> b.lo_;
  }

 private:
  double hi_ = 0.0;
  double lo_ = 0.0;
};

using dd = DoubleDouble;

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
  double s2, t2;
  double s1 = detail::two_sum(a.hi(), b.hi(), s2);
  double t1 = detail::two_sum(a.lo(), b.lo(), t2);
  s2 += t1;
  s1 = detail::fast_two_sum(s1, s2, s2);
  s2 += t2;
  s1 = detail::fast_two_sum(s1, s2, s2);
  return DoubleDouble::raw(s1, s2);
}

inline DoubleDouble operator+(const DoubleDouble& a, double b) {
  double s2;
  double s1 = detail::two_sum(a.hi(), b, s2);
  s2 += a.lo();
  s1 = detail::fast_two_sum(s1, s2, s2);
  return DoubleDouble::raw(s1, s2);
}
inline DoubleDouble operator+(double a, const DoubleDouble& b) { return b + a; }
inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }
inline DoubleDouble operator-(const DoubleDouble& a, double b) { return a + (-b); }
inline DoubleDouble operator-(double a, const DoubleDouble& b) { return (-b) + a; }

inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
  double p2;
  double p1 = detail::two_prod(a.hi(), b.hi(), p2);
  p2 += a.hi() * b.lo() + a.lo() * b.hi();
  p1 = detail::fast_two_sum(p1, p2, p2);
  return DoubleDouble::raw(p1, p2);
}

inline DoubleDouble operator*(const DoubleDouble& a, double b) {
  double p2;
  double p1 = detail::two_prod(a.hi(), b, p2);
  p2 += a.lo() * b;
  p1 = detail::fast_two_sum(p1, p2, p2);
  return DoubleDouble::raw(p1, p2);
}
inline DoubleDouble operator*(double a, const DoubleDouble& b) { return b * a; }

inline DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
  // Long division with three partial quotients.
  double q1 = a.hi() / b.hi();
  DoubleDouble r = a - b * q1;
  double q2 = r.hi() / b.hi();
  r -= b * q2;
  double q3 = r.hi() / b.hi();
  double e;
  q1 = detail::fast_two_sum(q1, q2, e);
  return DoubleDouble::raw(q1, e) + q3;
}
inline DoubleDouble operator/(const DoubleDouble& a, double b) { return a / DoubleDouble(b); }
inline DoubleDouble operator/(double a, const DoubleDouble& b) { return DoubleDouble(a) / b; }

inline DoubleDouble& DoubleDouble::operator+=(const DoubleDouble& b) { return *this = *this + b; }
inline DoubleDouble& DoubleDouble::operator*=(const DoubleDouble& b) { return *this = *this * b; }
inline DoubleDouble& DoubleDouble::operator/=(const DoubleDouble& b) { return *this = *this / b; }

inline bool operator==(const DoubleDouble& a, double b) { return a == DoubleDouble(b); }
inline std::partial_ordering operator<=>(const DoubleDouble& a, double b) {
  return a <=> DoubleDouble(b);
}

inline double to_double(const DoubleDouble& x) { return x.hi() + x.lo(); }
inline double to_double(double x) { return x; }

inline DoubleDouble abs(const DoubleDouble& x) { return x.hi() < 0.0 ? -x : x; }
inline bool isfinite(const DoubleDouble& x) { return std::isfinite(x.hi()); }
inline bool isnan(const DoubleDouble& x) { return std::isnan(x.hi()); }
inline DoubleDouble ldexp(const DoubleDouble& x, int e) {
  return DoubleDouble::raw(std::ldexp(x.hi(), e), std::ldexp(x.lo(), e));
}
inline DoubleDouble sqr(const DoubleDouble& x) { return x * x; }

DoubleDouble floor(const DoubleDouble& x);
DoubleDouble round(const DoubleDouble& x);
DoubleDouble sqrt(const DoubleDouble& x);
DoubleDouble exp(const DoubleDouble& x);
DoubleDouble expm1(const DoubleDouble& x);
DoubleDouble log(const DoubleDouble& x);
DoubleDouble log1p(const DoubleDouble& x);
DoubleDouble sin(const DoubleDouble& x);
DoubleDouble cos(const DoubleDouble& x);
void sincos(const DoubleDouble& x, DoubleDouble& s, DoubleDouble& c);
DoubleDouble atan2(const DoubleDouble& y, const DoubleDouble& x);
DoubleDouble atan(const DoubleDouble& x);
DoubleDouble acosh(const DoubleDouble& x);
DoubleDouble pow(const DoubleDouble& x, const DoubleDouble& y);
DoubleDouble pow(const DoubleDouble& x, int n);

// Decimal rendering with the requested number of significant digits (<= 32).
std::string to_string(const DoubleDouble& x, int digits = 32);

namespace dd_const {
inline constexpr DoubleDouble pi = DoubleDouble::raw(3.141592653589793116e+00, 1.224646799147353207e-16);
inline constexpr DoubleDouble two_pi = DoubleDouble::raw(6.283185307179586232e+00, 2.449293598294706414e-16);
inline constexpr DoubleDouble half_pi = DoubleDouble::raw(1.570796326794896558e+00, 6.123233995736766036e-17);
inline constexpr DoubleDouble quarter_pi = DoubleDouble::raw(7.853981633974482790e-01, 3.061616997868383018e-17);
inline constexpr DoubleDouble ln2 = DoubleDouble::raw(6.931471805599452862e-01, 2.319046813846299558e-17);
inline constexpr double eps = 4.93038065763132e-32;  // 2^-104
}  // namespace dd_const

}  // namespace hypasym

template <>
class std::numeric_limits<hypasym::DoubleDouble> {
 public:
  static constexpr bool is_specialized = true;
  static constexpr int digits = 106;
  static constexpr int digits10 = 31;
  static constexpr hypasym::DoubleDouble epsilon() noexcept {
    return hypasym::DoubleDouble(hypasym::dd_const::eps);
  }
  static constexpr hypasym::DoubleDouble infinity() noexcept {
    return hypasym::DoubleDouble(std::numeric_limits<double>::infinity());
  }
  static constexpr hypasym::DoubleDouble quiet_NaN() noexcept {
    return hypasym::DoubleDouble(std::numeric_limits<double>::quiet_NaN());
  }
  static constexpr hypasym::DoubleDouble max() noexcept {
    return hypasym::DoubleDouble(std::numeric_limits<double>::max());
  }
  static constexpr hypasym::DoubleDouble min() noexcept {
    return hypasym::DoubleDouble(std::numeric_limits<double>::min());
  }
};
