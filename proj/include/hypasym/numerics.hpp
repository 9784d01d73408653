// Precision-tagged complex values, exact summation, complex gamma and the
// Stirling expansion of Gamma(sigma + i t).
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "hypasym/complex.hpp"
#include "hypasym/double_double.hpp"

namespace hypasym {

enum class Precision { Standard, Extended };

// A complex number carried in double-double. Standard values are stored
// already rounded to double components.
struct ComplexValue {
  ComplexDD value;
  Precision precision = Precision::Extended;

  ComplexValue() = default;
  ComplexValue(const ComplexDD& v, Precision p = Precision::Extended)  // NOLINT
      : value(p == Precision::Standard ? to_dd(to_double(v)) : v), precision(p) {}

  static ComplexValue standard(std::complex<double> z) {
    return {ComplexDD{z.real(), z.imag()}, Precision::Standard};
  }

  DoubleDouble re() const { return value.re; }
  DoubleDouble im() const { return value.im; }
  std::complex<double> to_std() const { return hypasym::to_std(value); }
  ComplexValue rounded(Precision p) const { return {value, p}; }
};

// Exact accumulation of doubles (Shewchuk's partials). The result is the
// exact sum rounded to double-double.
class ExactAccumulator {
 public:
  void add(double x);
  void add(const DoubleDouble& x) {
    add(x.hi());
    add(x.lo());
  }
  DoubleDouble result() const;

 private:
  std::vector<double> partials_;
};

ComplexValue compensated_sum(std::span<const ComplexValue> terms);

// Principal branch log Gamma(s) for s off the non-positive integers.
ComplexDD complex_log_gamma(const ComplexDD& s);
// Gamma(s); Standard inputs give results rounded to double.
ComplexValue complex_gamma(const ComplexValue& s);

// B_{2k} for k = 1..15, exact to double-double rounding.
DoubleDouble bernoulli_even(int k);

// Gamma(sigma + i t) = L(sigma, t) * (1 + sum_{j>=1} a_j / t^j), |t| -> infinity,
// with L = sqrt(2 pi) |t|^(sigma-1/2) exp(-pi|t|/2 + i(t log|t| - t + pi t (sigma-1/2)/(2|t|))).
// The a_j are complex and depend on sigma and on the sign of t.
struct StirlingExpansion {
  int order = 1;  // number of terms kept, coefficients has order-1 entries
  DoubleDouble sigma;
  bool t_negative = false;
  std::vector<ComplexDD> coefficients;  // a_1 .. a_{order-1}

  static StirlingExpansion make(const DoubleDouble& sigma, int order, bool t_negative = false);
  // 1 + sum a_j / t^j
  ComplexDD correction(const DoubleDouble& t) const;
  // Coefficients of the correction as a series in 1/r when t = scale * r:
  // 1, a_1 / scale, a_2 / scale^2, ...
  std::vector<ComplexDD> rescaled(const DoubleDouble& scale) const;
};

// Leading factor L(sigma, t) of the expansion above, and its logarithm
// (the factor itself underflows for |t| beyond a few hundred).
ComplexDD stirling_log_leading(const DoubleDouble& sigma, const DoubleDouble& t);
ComplexDD stirling_leading(const DoubleDouble& sigma, const DoubleDouble& t);
// L(sigma, t) * (1 + sum_{j<order} a_j / t^j); requires |t| >= 10, |sigma| <= 2.
ComplexValue stirling_gamma(const DoubleDouble& sigma, const DoubleDouble& t, int order);

}  // namespace hypasym
