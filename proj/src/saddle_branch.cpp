#include "hypasym/saddle_branch.hpp"

#include <string>

#include "hypasym/errors.hpp"
#include "hypasym/numerics.hpp"
#include "hypasym/phase_amplitude.hpp"
#include "hypasym/series_jet.hpp"

namespace hypasym::saddle {

namespace {

using DD = DoubleDouble;

constexpr int kMaxOrder = 8;

void check_y(const DD& y, const DD& z) {
  if (!(y > 0.0) || !(y < 1.0)) throw Error(ErrorKind::Domain, "phase_f: y outside (0, 1)");
  if (!(z * y < 1.0)) throw Error(ErrorKind::Domain, "phase_f: zy >= 1");
}

// log(a0 + b x) as a jet in x.
SeriesJet log_linear(const DD& a0, const DD& b, std::size_t n) {
  SeriesJet j = SeriesJet::constant(a0, n);
  if (n > 1) j[1] = b;
  return log(j);
}

// Jet holding the 1/r series 1, c_1, c_2, ...
ComplexJet series_jet(const std::vector<ComplexDD>& c, std::size_t n) {
  ComplexJet j(n);
  for (std::size_t k = 0; k < n && k < c.size(); ++k) j[k] = c[k];
  return j;
}

ComplexJet gamma_ratio_series(const DD& alpha, std::size_t n) {
  const int order = static_cast<int>(n);
  ComplexJet num = series_jet(StirlingExpansion::make(DD(1.0), order).rescaled(DD(2.0)), n);
  ComplexJet d1 = series_jet(StirlingExpansion::make(DD(0.75), order).rescaled(DD(1.0) - alpha), n);
  ComplexJet d2 = series_jet(StirlingExpansion::make(DD(0.25), order).rescaled(DD(1.0) + alpha), n);
  return num * inverse(d1) * inverse(d2);
}

std::vector<ComplexDD> relative_terms(const ComplexJet& series, const DD& r, int count) {
  std::vector<ComplexDD> out;
  DD scale(1.0);
  for (int k = 1; k <= count; ++k) {
    scale /= r;
    out.push_back(series[static_cast<std::size_t>(k)] * scale);
  }
  return out;
}

}  // namespace

DD phase_f(const DD& alpha, const DD& y, const DD& z) {
  check_y(y, z);
  const DD one(1.0);
  return (one - alpha) * log(y) + (one + alpha) * log(one - y) - (one - alpha) * log(one - z * y);
}

DD phase_f_prime(const DD& alpha, const DD& y, const DD& z) {
  check_y(y, z);
  const DD one(1.0);
  return (one - alpha) / y - (one + alpha) / (one - y) + (one - alpha) * z / (one - z * y);
}

DD phase_f_second(const DD& alpha, const DD& y, const DD& z) {
  check_y(y, z);
  const DD one(1.0);
  return -(one - alpha) / sqr(y) - (one + alpha) / sqr(one - y) + (one - alpha) * sqr(z) / sqr(one - z * y);
}

DD amplitude_g(const DD& y, const DD& z) {
  const DD one(1.0);
  return one / sqrt(sqrt(y * (one - y) * sqr(one - y) * (one - z * y)));
}

std::pair<DD, DD> saddle_points(const DD& alpha, const DD& z) {
  if (!(z > 0.0) || z > 1.0) throw Error(ErrorKind::Domain, "saddle points need 0 < z <= 1");
  if (!(alpha >= 0.0) || !(alpha < 1.0)) throw Error(ErrorKind::Domain, "saddle points need 0 <= alpha < 1");
  const DD one(1.0);
  DD s = radical(alpha, z);
  // (1 - S) / ((1+alpha) z) written without the cancellation in 1 - S.
  DD y_minus = (one - alpha) / (one + s);
  DD y_plus = (one + s) / ((one + alpha) * z);
  return {y_minus, y_plus};
}

SaddleData saddle_closed_forms(const DD& alpha, const DD& z, double interior) {
  auto [y_minus, y_plus] = saddle_points(alpha, z);
  if (!(y_minus > interior) || !(y_minus < 1.0 - interior)) {
    throw Error(ErrorKind::Regime, "saddle y_minus = " + to_string(y_minus, 8) + " is within " +
                                       to_string(DD(interior), 3) + " of an endpoint; use the Temme branch");
  }
  const DD one(1.0);
  DD s = radical(alpha, z);
  SaddleData d;
  d.y_minus = y_minus;
  d.y_plus = y_plus;
  d.f_at = (one - alpha) * log(one - alpha * alpha) - DD(2.0) * log(one + s);
  if (alpha != 0.0) d.f_at += DD(2.0) * alpha * log(alpha + s);
  DD ratio_quarter = sqrt(sqrt((one + alpha) / (one - alpha)));
  d.amp_factor = ratio_quarter * (one + s) / (alpha + s);
  d.f_second = DD(-2.0) * (one + alpha) * sqr(one + s) * s / ((one - alpha) * sqr(alpha + s));
  return d;
}

DD gamma_phase(const DD& alpha) {
  const DD one(1.0);
  DD v = ldexp(dd_const::ln2, 1);
  if (alpha != 0.0) v -= (one + alpha) * log(one + alpha) + (one - alpha) * log(one - alpha);
  return v;
}

ExpansionResult gamma_prefactor(const EvalPoint& p, int order, Precision precision) {
  if (p.r < 10.0) throw Error(ErrorKind::Domain, "gamma_prefactor needs r >= 10");
  if (order < 1 || order > kMaxOrder) throw Error(ErrorKind::Domain, "gamma_prefactor order out of range");
  const DD one(1.0);
  DD modulus = sqrt(p.r / dd_const::pi) * sqrt(sqrt((one + p.alpha) / (one - p.alpha)));
  ComplexDD main = polar(modulus, dd_const::quarter_pi + p.r * gamma_phase(p.alpha));
  ComplexJet series = gamma_ratio_series(p.alpha, static_cast<std::size_t>(order) + 1);
  return assemble_expansion(main, relative_terms(series, p.r, order), order, Branch::Saddle, precision);
}

ComplexDD exact_gamma_ratio(const EvalPoint& p) {
  const DD one(1.0);
  ComplexDD num{one, ldexp(p.r, 1)};
  ComplexDD d1{DD(0.75), p.r * (one - p.alpha)};
  ComplexDD d2{DD(0.25), p.r * (one + p.alpha)};
  return exp(complex_log_gamma(num) - complex_log_gamma(d1) - complex_log_gamma(d2));
}

std::vector<ComplexDD> integral_series(const DD& alpha, const DD& z, int terms) {
  auto [y, y_plus] = saddle_points(alpha, z);
  (void)y_plus;
  const DD one(1.0);
  const std::size_t n = static_cast<std::size_t>(2 * terms + 3);
  SeriesJet ly = log_linear(y, one, n);
  SeriesJet l1 = log_linear(one - y, -one, n);
  SeriesJet lz = log_linear(one - z * y, -z, n);
  SeriesJet f = ly * (one - alpha) + l1 * (one + alpha) - lz * (one - alpha);
  SeriesJet g = exp(ly * DD(-0.25) + l1 * DD(-0.75) + lz * DD(-0.25));
  const DD f2 = f[2];
  // f(y + x) - f(y) = f2 tau^2, tau = x sqrt(P(x)).
  SeriesJet pjet = shift_down(f, 2) / f2;
  SeriesJet root = pow(pjet, DD(0.5));
  SeriesJet tau(n - 1);
  for (std::size_t k = 1; k < n - 1; ++k) tau[k] = root[k - 1];
  SeriesJet x_of_tau = revert(tau);
  SeriesJet big_g = compose(g, x_of_tau) * derivative(x_of_tau);
  // int exp(ir f2 tau^2) tau^2k = sqrt(2 pi / (-i r f'')) (2k-1)!! / (-i f'' r)^k
  const ComplexDD m_i_fpp{DD(0.0), -ldexp(f2, 1)};
  std::vector<ComplexDD> out;
  DD dfact(1.0);
  ComplexDD pw(1.0);
  for (int k = 1; k <= terms; ++k) {
    dfact *= DD(2.0 * k - 1.0);
    pw = pw * m_i_fpp;
    out.push_back(ComplexDD(big_g[static_cast<std::size_t>(2 * k)] * dfact / big_g[0]) / pw);
  }
  return out;
}

ExpansionResult saddle_evaluate(const EvalPoint& p, int order, const Config& cfg) {
  if (order < 1 || order > kMaxOrder) {
    throw Error(ErrorKind::Domain, "saddle order must be in [1, " + std::to_string(kMaxOrder) + "]");
  }
  if (p.z == 0.0) {
    return assemble_expansion(ComplexDD(1.0), std::vector<ComplexDD>(order, ComplexDD()), order, Branch::Saddle,
                              cfg.precision);
  }
  SaddleData d = saddle_closed_forms(p.alpha, p.z, cfg.saddle_interior);
  const DD one(1.0);
  const std::size_t n = static_cast<std::size_t>(order) + 1;
  // sqrt(2 pi / (r |f''|)) * amplitude, phase r f - pi/4
  DD int_modulus = d.amp_factor * sqrt(ldexp(dd_const::pi, 1) / (p.r * abs(d.f_second)));
  std::vector<ComplexDD> ic = integral_series(p.alpha, p.z, order);
  ic.insert(ic.begin(), ComplexDD(1.0));
  ComplexJet series = series_jet(ic, n);
  ComplexDD main;
  if (cfg.gamma_mode == GammaMode::Asymptotic) {
    if (p.r < 10.0) throw Error(ErrorKind::Regime, "saddle branch needs r >= 10");
    DD gamma_modulus = sqrt(p.r / dd_const::pi) * sqrt(sqrt((one + p.alpha) / (one - p.alpha)));
    main = polar(gamma_modulus * int_modulus, p.r * (gamma_phase(p.alpha) + d.f_at));
    series = series * gamma_ratio_series(p.alpha, n);
  } else {
    main = exact_gamma_ratio(p) * polar(int_modulus, p.r * d.f_at - dd_const::quarter_pi);
  }
  return assemble_expansion(main, relative_terms(series, p.r, order), order, Branch::Saddle, cfg.precision);
}

}  // namespace hypasym::saddle
