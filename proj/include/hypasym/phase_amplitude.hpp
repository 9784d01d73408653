// Closed-form leading behaviour: F(r, alpha, z) ~ exp(2ir l1(alpha, z)) / (1 - (1 - alpha^2) z)^(1/4).
#pragma once

#include <cmath>

#include "hypasym/complex.hpp"
#include "hypasym/errors.hpp"
#include "hypasym/eval_point.hpp"

namespace hypasym {

// sqrt(1 - (1 - alpha^2) z), the radical shared by every closed form below.
template <class Real>
Real radical(const Real& alpha, const Real& z) {
  using std::sqrt;
  Real p = Real(1.0) - (Real(1.0) - alpha * alpha) * z;
  if (p < Real(0.0)) throw Error(ErrorKind::Domain, "1 - (1 - alpha^2) z < 0");
  return sqrt(p);
}

// l1 = log 2 - alpha log(1+alpha) - log(1+S) + alpha log(alpha+S), S = radical.
// Written via log1p of (S-1) = -(1-alpha^2) z / (1+S) so that it stays
// accurate as z -> 0.
template <class Real>
Real l1_phase(const Real& alpha, const Real& z) {
  using std::log1p;
  if (alpha < Real(0.0) || !(alpha < Real(1.0))) throw Error(ErrorKind::Domain, "l1_phase: alpha outside [0, 1)");
  if (z < Real(0.0) || !(z < Real(1.0))) throw Error(ErrorKind::Domain, "l1_phase: z outside [0, 1)");
  Real s = radical(alpha, z);
  Real s_minus_1 = -(Real(1.0) - alpha * alpha) * z / (Real(1.0) + s);
  Real v = -log1p(s_minus_1 * 0.5);
  if (alpha != Real(0.0)) v = v + alpha * log1p(s_minus_1 / (Real(1.0) + alpha));
  return v;
}

// The z -> 1 route's phase, evaluated term by term as five logarithms:
//   -log((1+S)/((1-a)(1+s))) + a log((a+S)/((1-a^2)s)) - log((1+s)/(2s))
//   - (1-a) log s - (1-a) log(1-a),   s = sqrt(1-z).
template <class Real>
Real temme_phase_F(const Real& alpha, const Real& z) {
  using std::log;
  using std::sqrt;
  if (!(alpha > Real(0.0)) || !(alpha < Real(1.0))) {
    throw Error(ErrorKind::Domain, "temme_phase_F: alpha outside (0, 1)");
  }
  if (!(z > Real(0.0)) || !(z < Real(1.0))) throw Error(ErrorKind::Domain, "temme_phase_F: z outside (0, 1)");
  Real one(1.0);
  Real big_s = radical(alpha, z);
  Real s = sqrt(one - z);
  Real t1 = -log((one + big_s) / ((one - alpha) * (one + s)));
  Real t2 = alpha * log((alpha + big_s) / ((one - alpha * alpha) * s));
  Real t3 = -log((one + s) / (s * 2.0));
  Real t4 = -(one - alpha) * log(s);
  Real t5 = -(one - alpha) * log(one - alpha);
  return t1 + t2 + t3 + t4 + t5;
}

// (1 - (1 - alpha^2) z)^(-1/4)
template <class Real>
Real main_amplitude(const Real& alpha, const Real& z) {
  using std::sqrt;
  return Real(1.0) / sqrt(radical(alpha, z));
}

struct MainTerm {
  DoubleDouble phase;      // l1; the value carries exp(2ir * phase)
  DoubleDouble amplitude;  // (1 - (1 - alpha^2) z)^(-1/4)
  ComplexValue value;
};

MainTerm main_term(const EvalPoint& p, Precision precision = Precision::Extended);

// The alpha = 0 main term written through arcosh, for z = 4/x^2, x > 2:
// x^(2ir) exp(-2ir arcosh(x/2)) (x^2/(x^2-4))^(1/4).
ComplexDD arcosh_main_term(const DoubleDouble& r, const DoubleDouble& x);

}  // namespace hypasym
