// Saddle-point route through the Euler integral
//   F = Gamma(1+2ir) / (Gamma(3/4+ir(1-alpha)) Gamma(1/4+ir(1+alpha)))
//       * int_0^1 y^(-1/4) (1-y)^(-3/4) (1-zy)^(-1/4) exp(ir f(alpha, y)) dy.
#pragma once

#include <utility>
#include <vector>

#include "hypasym/complex.hpp"
#include "hypasym/double_double.hpp"
#include "hypasym/eval_point.hpp"

namespace hypasym::saddle {

// f(alpha, y) = (1-alpha) log y + (1+alpha) log(1-y) - (1-alpha) log(1-zy)
DoubleDouble phase_f(const DoubleDouble& alpha, const DoubleDouble& y, const DoubleDouble& z);
DoubleDouble phase_f_prime(const DoubleDouble& alpha, const DoubleDouble& y, const DoubleDouble& z);
DoubleDouble phase_f_second(const DoubleDouble& alpha, const DoubleDouble& y, const DoubleDouble& z);
// y^(-1/4) (1-y)^(-3/4) (1-zy)^(-1/4)
DoubleDouble amplitude_g(const DoubleDouble& y, const DoubleDouble& z);

// (y_minus, y_plus), the two roots of df/dy = 0.
std::pair<DoubleDouble, DoubleDouble> saddle_points(const DoubleDouble& alpha, const DoubleDouble& z);

struct SaddleData {
  DoubleDouble y_minus;
  DoubleDouble y_plus;
  DoubleDouble f_at;        // f(alpha, y_minus), closed form
  DoubleDouble f_second;    // f''(alpha, y_minus), closed form, < 0
  DoubleDouble amp_factor;  // amplitude_g(y_minus, z), closed form
};

// Throws Regime when y_minus is within `interior` of 0 or 1.
SaddleData saddle_closed_forms(const DoubleDouble& alpha, const DoubleDouble& z, double interior = 1e-3);

// 2 log 2 - (1+alpha) log(1+alpha) - (1-alpha) log(1-alpha)
DoubleDouble gamma_phase(const DoubleDouble& alpha);

// The gamma ratio in front of the integral: closed leading form times the
// Stirling corrections, expanded in 1/r. Requires r >= 10.
ExpansionResult gamma_prefactor(const EvalPoint& p, int order, Precision precision = Precision::Extended);
// The same ratio from complex_log_gamma.
ComplexDD exact_gamma_ratio(const EvalPoint& p);

// c_1..c_terms of the steepest-descent series of the integral,
//   integral ~ leading * (1 + sum_k c_k / r^k).
std::vector<ComplexDD> integral_series(const DoubleDouble& alpha, const DoubleDouble& z, int terms);

ExpansionResult saddle_evaluate(const EvalPoint& p, int order, const Config& cfg = {});

}  // namespace hypasym::saddle
