// Liouville-Green route for z away from 1.
//
// Y(z) = z^(1/2+ir) (1-z)^(1/2-ir alpha) F(r, alpha, z) solves
// Y'' = ((ir)^2 h + g) Y, and Y h^(1/4) = C1 e^(ir xi) sum_j A_j(z) / (ir)^j.
#pragma once

#include <span>
#include <vector>

#include "hypasym/double_double.hpp"
#include "hypasym/eval_point.hpp"

namespace hypasym::lg {

struct OdeData {
  DoubleDouble h_val;     // (1 - (1-alpha^2) z) / (z^2 (1-z)^2)
  DoubleDouble g_val;     // -(1 - 3z/4 + 3z^2/4) / (4 z^2 (1-z)^2)
  DoubleDouble h_prime;   // d h / dz
  DoubleDouble h_second;  // d^2 h / dz^2
};

OdeData ode_data(const DoubleDouble& alpha, const DoubleDouble& z);

// The phase integral, a fixed antiderivative of sqrt(h).
DoubleDouble xi(const DoubleDouble& alpha, const DoubleDouble& z);

// (16 g h^2 + 4 h h'' - 5 h'^2) / (32 h^(5/2)), from the closed-form derivatives.
DoubleDouble lambda_fn(const DoubleDouble& alpha, const DoubleDouble& z);

// Lambda(0+), the limit used for the small-z remainder estimate.
DoubleDouble lambda_at_zero(const DoubleDouble& alpha);

// log(C1) / (ir) = 2 log 2 - 2 alpha log(1+alpha) - (1-alpha) log(1-alpha^2).
DoubleDouble connection_phase(const DoubleDouble& alpha);

// A_1..A_n as Chebyshev series on [0, z_max], with A_j(0) = 0 for j >= 1.
class LgCoefficients {
 public:
  static LgCoefficients build(const DoubleDouble& alpha, int order, const DoubleDouble& z_max, int nodes = 128);

  int order() const { return static_cast<int>(cheb_.size()); }
  int nodes() const { return nodes_; }
  DoubleDouble alpha() const { return alpha_; }
  DoubleDouble z_max() const { return z_max_; }

  // A_j(z) for 0 <= j <= order and 0 <= z <= z_max.
  DoubleDouble value(int j, const DoubleDouble& z) const;
  std::vector<DoubleDouble> sample(int j, std::span<const DoubleDouble> grid) const;
  // Chebyshev coefficients of A_j, j >= 1.
  const std::vector<DoubleDouble>& chebyshev(int j) const { return cheb_.at(static_cast<std::size_t>(j - 1)); }
  // max |last three coefficients| / max |coefficient| of A_j.
  double tail_ratio(int j) const;

 private:
  DoubleDouble alpha_;
  DoubleDouble z_max_;
  int nodes_ = 0;
  std::vector<std::vector<DoubleDouble>> cheb_;
};

inline constexpr int kMaxOrder = 4;

// Shorthand for LgCoefficients::build.
LgCoefficients a_coeffs(const DoubleDouble& alpha, int order, const DoubleDouble& z_max, int nodes = 128);

// A_1(z) = int_0^z Lambda by graded Gauss-Legendre panels (double accuracy);
// valid for every 0 <= z < 1, used where the Chebyshev table does not reach.
double a1_by_quadrature(const DoubleDouble& alpha, const DoubleDouble& z);

// C1 e^(ir xi) h^(-1/4) z^(-1/2-ir) (1-z)^(-1/2+ir alpha).
ComplexDD lg_main_term(const EvalPoint& p);

// main * (1 + sum_{j<n} A_j / (ir)^j). Orders above 1 need z <= 1 - delta;
// order 1 is accepted on the whole interval.
ExpansionResult lg_evaluate(const EvalPoint& p, int order, const Config& cfg = {});

}  // namespace hypasym::lg
