#include "hypasym/temme_branch.hpp"

#include <string>

#include "hypasym/errors.hpp"
#include "hypasym/numerics.hpp"
#include "hypasym/phase_amplitude.hpp"

namespace hypasym::temme {

namespace {

using DD = DoubleDouble;

constexpr int kMaxOrder = 6;

void check_alpha_z(const DD& alpha, const DD& z, const char* who) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw Error(ErrorKind::Domain, std::string(who) + ": alpha outside (0, 1)");
  if (!(z > 0.0) || !(z < 1.0)) throw Error(ErrorKind::Domain, std::string(who) + ": z outside (0, 1)");
}

ComplexJet to_complex(const std::vector<ComplexDD>& c, std::size_t n) {
  ComplexJet j(n);
  for (std::size_t k = 0; k < n && k < c.size(); ++k) j[k] = c[k];
  return j;
}

// Gamma(1+2ir) / (Gamma(1/2+2ir alpha) Gamma(1/2+2ir(1-alpha))) * Gamma(2i alpha r) / (2ir)^(2i alpha r)
// divided by the closed leading forms, as a series in 1/r.
ComplexJet gamma_series(const DD& alpha, std::size_t n) {
  const int order = static_cast<int>(n);
  const DD one(1.0);
  ComplexJet num = to_complex(StirlingExpansion::make(one, order).rescaled(DD(2.0)), n);
  ComplexJet d1 = to_complex(StirlingExpansion::make(DD(0.5), order).rescaled(ldexp(alpha, 1)), n);
  ComplexJet d2 = to_complex(StirlingExpansion::make(DD(0.5), order).rescaled(ldexp(one - alpha, 1)), n);
  ComplexJet lam = to_complex(StirlingExpansion::make(DD(0.0), order).rescaled(ldexp(alpha, 1)), n);
  return num * inverse(d1) * inverse(d2) * lam;
}

// log of the two exact gamma factors above.
ComplexDD exact_gamma_log(const EvalPoint& p) {
  const DD one(1.0);
  const DD two_r = ldexp(p.r, 1);
  const DD two_t = two_r * p.alpha;
  ComplexDD g1 = complex_log_gamma(ComplexDD{one, two_r}) - complex_log_gamma(ComplexDD{DD(0.5), two_t}) -
                 complex_log_gamma(ComplexDD{DD(0.5), two_r - two_t});
  // log (2ir)^(2it) = 2it (log 2r + i pi/2)
  ComplexDD g2 = complex_log_gamma(ComplexDD{DD(0.0), two_t}) - ComplexDD{DD(0.0), two_t} *
                                                                    ComplexDD{log(two_r), dd_const::half_pi};
  return g1 + g2;
}

}  // namespace

DD q_fn(const DD& x, const DD& y) {
  const DD one(1.0);
  return -expm1(-x) * ((y + one) * exp(x) - y);
}

DD q_prime(const DD& x, const DD& y) { return (y + 1.0) * exp(x) - y * exp(-x); }

DD q_second(const DD& x, const DD& y) { return (y + 1.0) * exp(x) + y * exp(-x); }

DD y_of_z(const DD& z) {
  if (!(z >= 0.0) || !(z < 1.0)) throw Error(ErrorKind::Domain, "Y(z) needs 0 <= z < 1");
  const DD one(1.0);
  DD s = sqrt(one - z);
  return z / ((one + s) * ldexp(s, 1));
}

DD temme_saddle(const DD& alpha, const DD& z) {
  check_alpha_z(alpha, z, "temme_saddle");
  const DD one(1.0);
  return log((one + radical(alpha, z)) / ((one - alpha) * (one + sqrt(one - z))));
}

TemmeContext TemmeContext::make(const DD& alpha, const DD& z, const DD& r) {
  check_alpha_z(alpha, z, "TemmeContext");
  TemmeContext c;
  c.r = r;
  c.alpha = alpha;
  c.z = z;
  c.y = y_of_z(z);
  if (z > 0.9985 && !(c.y > 10.0)) throw Error(ErrorKind::Domain, "Y(z) below 10 for z > 0.9985");
  c.w = ComplexDD{DD(0.0), ldexp(r, 1)};
  c.lambda_p = c.w * alpha;
  c.x0 = temme_saddle(alpha, z);
  c.q0 = q_fn(c.x0, c.y);
  c.a_alpha = c.x0 - alpha * log(c.q0) - alpha + alpha * log(alpha);
  DD ratio = DD(1.0) - alpha * alpha * q_second(c.x0, c.y) / c.q0;
  if (!(ratio > 0.0)) throw Error(ErrorKind::Domain, "dt/dx at x0 is not real");
  c.dtdx_at_x0 = sqrt(ratio);
  return c;
}

DD a_alpha_closed(const DD& alpha, const DD& z) {
  check_alpha_z(alpha, z, "a_alpha_closed");
  const DD one(1.0);
  DD big_s = radical(alpha, z);
  DD s = sqrt(one - z);
  return log((one + big_s) / ((one - alpha) * (one + s))) -
         alpha * log((alpha + big_s) / ((one - alpha * alpha) * s)) - alpha;
}

DD amplitude_lhs(const TemmeContext& ctx) {
  return ctx.q0 - ctx.alpha * ctx.alpha * q_second(ctx.x0, ctx.y);
}

DD amplitude_rhs(const DD& alpha, const DD& z) {
  check_alpha_z(alpha, z, "amplitude_rhs");
  return alpha * radical(alpha, z) / sqrt(DD(1.0) - z);
}

DD variable_transform(const TemmeContext& ctx, const DD& t) {
  if (!(t > 0.0)) throw Error(ErrorKind::Domain, "variable_transform needs t > 0");
  const DD& a = ctx.alpha;
  if (t == a) return ctx.x0;
  // Signed square roots of both sides measured from their minima make the
  // equation monotone through the saddle.
  const DD base_x = ctx.x0 - a * log(ctx.q0);
  const DD base_t = a - a * log(a);
  auto signed_root = [](const DD& v, bool negative) {
    DD s = v > 0.0 ? sqrt(v) : DD(0.0);
    return negative ? -s : s;
  };
  const DD target = signed_root(t - a * log(t) - base_t, t < a);
  auto u = [&](const DD& x) { return signed_root(x - a * log(q_fn(x, ctx.y)) - base_x, x < ctx.x0); };

  DD lo(0.0);
  DD hi = ctx.x0 * 10.0 + 10.0;
  if (!(u(hi) >= target)) throw Error(ErrorKind::Bracketing, "variable_transform: t beyond the bracket");
  for (int it = 0; it < 400; ++it) {
    DD mid = ldexp(lo + hi, -1);
    if (mid == lo || mid == hi) break;
    if (u(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= hi * 1e-32) break;
  }
  return ldexp(lo + hi, -1);
}

DD f_of_t(const TemmeContext& ctx, const DD& t) {
  if (!(t > 0.0)) throw Error(ErrorKind::Domain, "f_of_t needs t > 0");
  const DD& a = ctx.alpha;
  if (t == a) return a / (sqrt(ctx.q0) * ctx.dtdx_at_x0);
  DD x = variable_transform(ctx, t);
  DD q = q_fn(x, ctx.y);
  DD dxdt = q * (t - a) / (t * (q - a * q_prime(x, ctx.y)));
  return t / sqrt(q) * dxdt;
}

SeriesJet f_jet(const TemmeContext& ctx, int degree) {
  if (degree < 0) throw Error(ErrorKind::Domain, "f_jet degree must be >= 0");
  const DD one(1.0);
  const DD& a = ctx.alpha;
  const std::size_t m = static_cast<std::size_t>(degree) + 3;
  // log q(x0 + s) as a jet in s.
  SeriesJet e = SeriesJet::constant(-ctx.x0, m);
  e[1] = -one;
  e = exp(e);  // e^(-x0-s)
  SeriesJet one_minus_e = -e;
  one_minus_e[0] = -expm1(-ctx.x0);
  SeriesJet tail = e * (-ctx.y);
  tail[0] += ctx.y + one;
  SeriesJet lq = log(one_minus_e) + log(tail);
  lq[0] += ctx.x0;
  lq[1] += one;
  // x - alpha log q(x) around x0 and t - alpha log t around alpha.
  SeriesJet psi = lq * (-a);
  psi[0] += ctx.x0;
  psi[1] += one;
  SeriesJet phi = log(SeriesJet::variable(a, m)) * (-a);
  phi[0] += a;
  phi[1] += one;
  SeriesJet root_p = pow(shift_down(psi, 2), DD(0.5));
  SeriesJet root_q = pow(shift_down(phi, 2), DD(0.5));
  SeriesJet u(m - 1), v(m - 1);
  for (std::size_t k = 1; k < m - 1; ++k) {
    u[k] = root_p[k - 1];
    v[k] = root_q[k - 1];
  }
  SeriesJet s_of_tau = compose(revert(u), v);
  SeriesJet lq_tau = compose(lq, s_of_tau);
  SeriesJet f = SeriesJet::variable(a, m - 1) * derivative(s_of_tau) * exp(lq_tau * DD(-0.5));
  SeriesJet out = resized(f, static_cast<std::size_t>(degree) + 1);
  out.set_center(a);
  return out;
}

SeriesJet f_jet_fd(const TemmeContext& ctx, int degree, const DD& step, int half_width) {
  return fd_jet([&ctx](const DD& t) { return f_of_t(ctx, t); }, ctx.alpha, step, degree, half_width);
}

std::vector<DD> ftilde_iterated(const SeriesJet& jet, const DD& alpha, int count) {
  std::vector<DD> b(jet.coeffs());
  std::vector<DD> out;
  for (int k = 0; k < count; ++k) {
    if (b.empty()) throw Error(ErrorKind::InsufficientData, "Taylor jet too short for the requested ftilde");
    out.push_back(b[0]);
    if (k + 1 == count) break;
    // t ((g(t) - g(alpha)) / (t - alpha))' in powers of t - alpha.
    std::vector<DD> next;
    for (std::size_t j = 0; j + 2 < b.size(); ++j) {
      next.push_back(alpha * DD(static_cast<double>(j + 1)) * b[j + 2] + DD(static_cast<double>(j)) * b[j + 1]);
    }
    b = std::move(next);
  }
  return out;
}

std::vector<DD> ftilde_from_jet(const SeriesJet& jet, const DD& alpha, int count) {
  std::vector<DD> out = ftilde_iterated(jet, alpha, count);
  if (count > 1) out[1] = alpha * jet[2];
  if (count > 2) out[2] = alpha * (DD(3.0) * alpha * jet[4] + DD(2.0) * jet[3]);
  return out;
}

std::vector<DD> ftilde_ladder(const TemmeContext& ctx, int count) {
  if (count < 1) throw Error(ErrorKind::Domain, "ftilde_ladder needs count >= 1");
  return ftilde_from_jet(f_jet(ctx, 2 * (count - 1)), ctx.alpha, count);
}

DD assembled_phase(const TemmeContext& ctx) {
  const DD one(1.0);
  const DD& a = ctx.alpha;
  // prefactor, first gamma ratio, e^(-wA), Gamma(2it)/(2ir)^(2it); each over 2r
  DD v = -(one - a) * log(one - ctx.z) * 0.5 - log(one + ctx.y);
  v += -a * log(a) - (one - a) * log(one - a);
  v -= ctx.a_alpha;
  v += a * log(a) - a;
  return v;
}

ExpansionResult temme_evaluate(const EvalPoint& p, int order, const Config& cfg) {
  if (order < 1 || order > kMaxOrder) {
    throw Error(ErrorKind::Domain, "Temme order must be in [1, " + std::to_string(kMaxOrder) + "]");
  }
  if (to_double(p.z) < 1.0 - 2.0 * cfg.delta) {
    throw Error(ErrorKind::Regime, "Temme branch needs z >= 1 - 2 delta = " + to_string(DD(1.0 - 2.0 * cfg.delta), 6));
  }
  if (!(p.alpha > 0.0) || p.alpha * p.r < 1.0) {
    throw Error(ErrorKind::Regime, "Temme branch needs alpha r >= 1");
  }
  TemmeContext ctx = TemmeContext::make(p);
  const DD one(1.0);
  const std::size_t n = static_cast<std::size_t>(order) + 1;
  std::vector<DD> ft = ftilde_ladder(ctx, order + 1);
  // sum_k ftilde_k / (2ir)^k relative to ftilde_0, in powers of 1/r.
  ComplexJet ladder(n);
  ComplexDD inv_2i{DD(0.0), DD(-0.5)};
  ComplexDD pw(1.0);
  for (std::size_t k = 0; k < n; ++k) {
    ladder[k] = pw * (ft[k] / ft[0]);
    pw = pw * inv_2i;
  }
  // (1-z)^(-1/4) * alpha / sqrt(q(x0) - alpha^2 q''(x0)) * f_ratio, where the
  // two gamma moduli sqrt(r/pi) and sqrt(pi/(r alpha)) give 1/sqrt(alpha).
  DD modulus = one / sqrt(sqrt(one - p.z)) * p.alpha / sqrt(amplitude_lhs(ctx)) / sqrt(p.alpha);
  ComplexDD main;
  ComplexJet series = ladder;
  if (cfg.gamma_mode == GammaMode::Asymptotic) {
    main = polar(modulus, ldexp(p.r, 1) * assembled_phase(ctx));
    series = series * gamma_series(p.alpha, n);
  } else {
    // Same composition with the gamma factors taken exactly.
    DD pre_phase = -p.r * (one - p.alpha) * log(one - p.z) - ldexp(p.r, 1) * (log(one + ctx.y) + ctx.a_alpha);
    DD pre_mod = one / sqrt(sqrt(one - p.z)) * p.alpha / sqrt(amplitude_lhs(ctx));
    main = exp(exact_gamma_log(p) + ComplexDD{log(pre_mod), pre_phase});
  }
  std::vector<ComplexDD> rel;
  DD scale(1.0);
  for (int k = 1; k <= order; ++k) {
    scale /= p.r;
    rel.push_back(series[static_cast<std::size_t>(k)] * scale);
  }
  return assemble_expansion(main, rel, order, Branch::Temme, cfg.precision);
}

}  // namespace hypasym::temme
