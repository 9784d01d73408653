// Route for z near 1. After the quadratic transformation
//   F = (1-z)^(-1/4-ir(1-alpha)) (1+Y)^(-2ir) G1 int_0^inf e^(-w(x - alpha log q(x))) dx / sqrt(q(x)),
//   G1 = Gamma(1+2ir) / (Gamma(1/2+2ir alpha) Gamma(1/2+2ir(1-alpha))),  w = 2ir,
// and the integral is brought to the form e^(-wA) int e^(-w(t - alpha log t)) f(t) dt/t.
//
// The integration variable called t here is unrelated to the spectral
// parameter alpha r (EvalPoint::t_spec).
#pragma once

#include <vector>

#include "hypasym/complex.hpp"
#include "hypasym/double_double.hpp"
#include "hypasym/eval_point.hpp"
#include "hypasym/series_jet.hpp"

namespace hypasym::temme {

// q(x) = (1 - e^-x)((Y+1) e^x - Y) and its first two derivatives.
DoubleDouble q_fn(const DoubleDouble& x, const DoubleDouble& y);
DoubleDouble q_prime(const DoubleDouble& x, const DoubleDouble& y);
DoubleDouble q_second(const DoubleDouble& x, const DoubleDouble& y);

// Y = (1 - sqrt(1-z)) / (2 sqrt(1-z))
DoubleDouble y_of_z(const DoubleDouble& z);

// x0 = log((1+S) / ((1-alpha)(1+sqrt(1-z)))), the root of q = alpha q'.
DoubleDouble temme_saddle(const DoubleDouble& alpha, const DoubleDouble& z);

struct TemmeContext {
  DoubleDouble r;
  DoubleDouble alpha;
  DoubleDouble z;
  DoubleDouble y;        // Y
  ComplexDD w;           // 2ir
  ComplexDD lambda_p;    // alpha w
  DoubleDouble x0;
  DoubleDouble q0;       // q(x0)
  DoubleDouble a_alpha;  // x0 - alpha log q(x0) - alpha + alpha log alpha
  DoubleDouble dtdx_at_x0;

  // 0 < alpha < 1, 0 < z < 1. r only enters w and lambda_p.
  static TemmeContext make(const DoubleDouble& alpha, const DoubleDouble& z, const DoubleDouble& r = 1.0);
  static TemmeContext make(const EvalPoint& p) { return make(p.alpha, p.z, p.r); }
};

// The right-hand side of A(alpha) written through S and sqrt(1-z).
DoubleDouble a_alpha_closed(const DoubleDouble& alpha, const DoubleDouble& z);
// q(x0) - alpha^2 q''(x0) and its closed form alpha S / sqrt(1-z).
DoubleDouble amplitude_lhs(const TemmeContext& ctx);
DoubleDouble amplitude_rhs(const DoubleDouble& alpha, const DoubleDouble& z);

// x(t) from x - alpha log q(x) = t - alpha log t + A, t > 0.
DoubleDouble variable_transform(const TemmeContext& ctx, const DoubleDouble& t);

// f(t) = t / sqrt(q(x(t))) dx/dt.
DoubleDouble f_of_t(const TemmeContext& ctx, const DoubleDouble& t);

// Taylor coefficients a_0..a_degree of f about t = alpha, by series algebra.
SeriesJet f_jet(const TemmeContext& ctx, int degree);
// The same coefficients from samples of f_of_t at alpha + k h, |k| <= half_width.
SeriesJet f_jet_fd(const TemmeContext& ctx, int degree, const DoubleDouble& step, int half_width);

// ftilde_0..ftilde_{count-1} at alpha from Taylor coefficients about alpha.
// The first three use the closed relations in a_0..a_4; later ones iterate
// ftilde_{k+1}(t) = t ((ftilde_k(t) - ftilde_k(alpha)) / (t - alpha))'.
std::vector<DoubleDouble> ftilde_from_jet(const SeriesJet& jet, const DoubleDouble& alpha, int count);
// Only the iterated form, for every k.
std::vector<DoubleDouble> ftilde_iterated(const SeriesJet& jet, const DoubleDouble& alpha, int count);
std::vector<DoubleDouble> ftilde_ladder(const TemmeContext& ctx, int count);

// Phase of the assembled leading term divided by 2r; equals temme_phase_F.
DoubleDouble assembled_phase(const TemmeContext& ctx);

// Requires alpha r >= 1 and z >= 1 - 2 delta.
ExpansionResult temme_evaluate(const EvalPoint& p, int order, const Config& cfg = {});

}  // namespace hypasym::temme
