// Reference values of F(r, alpha, z) that do not use any of the asymptotic
// formulas.
#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "hypasym/complex.hpp"
#include "hypasym/eval_point.hpp"
#include "hypasym/numerics.hpp"

namespace hypasym::oracle {

enum class Method {
  GaussSeries,         // sum_n (a)_n (b)_n / ((c)_n n!) z^n
  TransformedSeries,   // the 1 - z connection formula
  TaylorContinuation,  // Taylor re-expansion of the hypergeometric ODE along [z_s, z]
  QuadratureCrossCheck // integral representation after the quadratic transformation
};

std::string_view to_string(Method m);

struct OracleResult {
  ComplexValue value;
  Method method = Method::GaussSeries;
  double est_accuracy = 0.0;         // relative
  double cancellation_digits = 0.0;  // log10(largest partial magnitude / |value|)
  std::optional<Method> cross_method;
  double cross_difference = 0.0;     // relative difference to the cross-check
};

struct OracleOptions {
  Precision precision = Precision::Extended;
  bool cross_check = true;
  double agreement_tolerance = 1e-8;
};

// F(r, alpha, z); requires r <= 1000 and z <= 1 - 1e-6.
OracleResult eval_f(const EvalPoint& p, const OracleOptions& opts = {});

struct QuadratureResult {
  ComplexValue value;
  double est_error = 0.0;  // relative
  std::size_t panels = 0;
};

// (1-z)^(-1/4-ir(1-alpha)) ((1+sqrt(1-z))/(2 sqrt(1-z)))^(-2ir)
//   * 2F1(1/2+2ir alpha, 1/2-2ir alpha; 1+2ir; -Y)
// with the inner function from its Euler integral by oscillation-resolving
// Gauss-Legendre panels.
QuadratureResult eval_transformed_detailed(const EvalPoint& p);
ComplexValue eval_transformed(const EvalPoint& p, Precision precision = Precision::Extended);

// Building blocks, exposed for testing.
struct SeriesSum {
  ComplexDD value;
  ComplexDD derivative;       // d/dz of the series
  double max_partial = 0.0;   // largest |partial sum| or |term| seen
  std::size_t terms = 0;
  bool converged = false;
};

std::size_t gauss_term_cap(const DoubleDouble& z);
SeriesSum gauss_series(const ComplexDD& a, const ComplexDD& b, const ComplexDD& c, const DoubleDouble& z,
                       std::size_t cap);

struct MethodValue {
  ComplexDD value;
  double est_accuracy = 0.0;
  double cancellation_digits = 0.0;
};

// Each throws Error (Convergence / Conditioning / Regime) when it cannot
// deliver about 1e-12 relative accuracy.
MethodValue by_gauss_series(const EvalPoint& p);
MethodValue by_connection_formula(const EvalPoint& p);
MethodValue by_taylor_continuation(const EvalPoint& p);

}  // namespace hypasym::oracle
