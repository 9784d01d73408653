#include "hypasym/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "hypasym/errors.hpp"

namespace hypasym::oracle {

namespace {

constexpr double kEps = dd_const::eps;
// A method is accepted as primary only if it claims this accuracy.
constexpr double kAcceptAccuracy = 1e-12;

struct Params {
  ComplexDD a, b, c;
};

Params params(const EvalPoint& p) {
  DoubleDouble ir = p.r * (1.0 - p.alpha);
  return {ComplexDD{DoubleDouble(0.25), ir}, ComplexDD{DoubleDouble(0.75), ir},
          ComplexDD{DoubleDouble(1.0), ldexp(p.r, 1)}};
}

double mag(const ComplexDD& z) { return std::hypot(z.re.hi(), z.im.hi()); }

double digits_lost(double max_partial, const ComplexDD& value) {
  double m = mag(value);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, std::log10(max_partial / m));
}

// 16-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  static constexpr int n = 16;
  std::array<double, n> x{};
  std::array<double, n> w{};
  GaussLegendre() {
    for (int i = 0; i < n; ++i) {
      double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = t;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (t * p1 - p0) / (t * t - 1.0);
        double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-16) break;
      }
      x[i] = t;
      w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};

const GaussLegendre& gl16() {
  static const GaussLegendre rule;
  return rule;
}

// Neumaier-compensated complex accumulator in double.
struct CompensatedD {
  double sr = 0, cr = 0, si = 0, ci = 0;
  static void add1(double& s, double& c, double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  void add(std::complex<double> z) {
    add1(sr, cr, z.real());
    add1(si, ci, z.imag());
  }
  std::complex<double> value() const { return {sr + cr, si + ci}; }
};

// Integrand of the transformed representation,
// exp((2i r alpha - 1/2) log q(x) - 2i r x), with
// log q(x) = log(1 - e^-x) + x + log(1 + Y (1 - e^-x)).
struct TransformedIntegrand {
  double r, alpha, y;

  // log q given x and log x (used near x = 0 where log x is exact).
  double log_q(double x, double log_x) const {
    double em = std::expm1(-x);
    double head = (x < 1e-3) ? log_x + std::log(-em / x) : std::log(-em);
    return head + x + std::log1p(-y * em);
  }
  std::complex<double> value(double x, double log_x, double extra_log) const {
    double lq = log_q(x, log_x);
    double modulus = std::exp(-0.5 * lq + extra_log);
    double phase = 2.0 * r * (alpha * lq - x);
    return std::polar(modulus, phase);
  }
  // d/dx of the phase.
  double phase_rate(double x) const {
    double e = std::exp(-x);
    double dlq = 1.0 / std::expm1(x) + 1.0 + y * e / (1.0 + y * (1.0 - e));
    return 2.0 * r * (alpha * dlq - 1.0);
  }
};

std::complex<double> integrate_transformed(const TransformedIntegrand& f, double x0, int level,
                                           std::size_t& panels) {
  const GaussLegendre& gl = gl16();
  const double refine = std::ldexp(1.0, -level);
  const double r = f.r;
  CompensatedD acc;
  panels = 0;
  // Near zero: x = e^{-v}, integrand picks up the Jacobian x.
  const double x_split = x0 > 0.0 ? std::min(0.25 / r, x0 / 4.0) : 0.25 / r;
  const double v_lo = -std::log(x_split);
  const double v_hi = v_lo + 80.0;
  {
    double rate = 2.0 * r * (f.alpha + x_split) * 1.1 + 1.0;
    double width = std::min(1.0, M_PI / (2.0 * rate)) * refine;
    for (double v = v_lo; v < v_hi; v += width) {
      double b = std::min(v + width, v_hi);
      double mid = 0.5 * (v + b);
      double half = 0.5 * (b - v);
      for (int i = 0; i < gl.n; ++i) {
        double vv = mid + half * gl.x[i];
        double x = std::exp(-vv);
        acc.add(gl.w[i] * half * f.value(x, -vv, -vv));
      }
      ++panels;
    }
  }
  // Oscillatory part: panels short enough for a quarter period of the phase.
  const double x_end = std::max(x0, 0.0) + 80.0;
  double x = x_split;
  while (x < x_end) {
    double rate = std::abs(f.phase_rate(x));
    double width = std::min({M_PI / (4.0 * r), M_PI / (2.0 * rate + 1e-300), 0.5 * x}) * refine;
    // Keep x0 as a panel boundary.
    if (x < x0 && x + width > x0) width = x0 - x;
    double b = std::min(x + width, x_end);
    double mid = 0.5 * (x + b);
    double half = 0.5 * (b - x);
    for (int i = 0; i < gl.n; ++i) {
      double xx = mid + half * gl.x[i];
      acc.add(gl.w[i] * half * f.value(xx, std::log(xx), 0.0));
    }
    ++panels;
    x = b;
  }
  return acc.value();
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::GaussSeries: return "gauss-series";
    case Method::TransformedSeries: return "transformed-series";
    case Method::TaylorContinuation: return "taylor-continuation";
    case Method::QuadratureCrossCheck: return "quadrature";
  }
  return "unknown";
}

std::size_t gauss_term_cap(const DoubleDouble& z) {
  double zz = to_double(z);
  return static_cast<std::size_t>(10.0 * std::ceil(1.0 / (1.0 - zz))) + 10000;
}

SeriesSum gauss_series(const ComplexDD& a, const ComplexDD& b, const ComplexDD& c, const DoubleDouble& z,
                       std::size_t cap) {
  SeriesSum out;
  ComplexDD term(1.0);
  ComplexDD sum(1.0);
  ComplexDD dsum{};
  out.max_partial = 1.0;
  if (z == 0.0) {
    out.value = sum;
    out.derivative = a * b / c;
    out.converged = true;
    return out;
  }
  for (std::size_t n = 0; n < cap; ++n) {
    DoubleDouble nn = static_cast<double>(n);
    ComplexDD ratio = (a + nn) * (b + nn) / ((c + nn) * (nn + 1.0));
    term = term * ratio * z;
    sum += term;
    dsum += term * (nn + 1.0);
    double tm = mag(term);
    out.max_partial = std::max({out.max_partial, tm, mag(sum)});
    out.terms = n + 1;
    // Tail bound once the term ratio has settled below one.
    double rho = mag(ratio) * to_double(z);
    if (rho < 1.0) {
      double tail = tm * rho / (1.0 - rho) * (n + 2.0);
      if (tail < 1e-34 * mag(sum)) {
        out.converged = true;
        break;
      }
    }
  }
  out.value = sum;
  out.derivative = dsum / z;
  return out;
}

MethodValue by_gauss_series(const EvalPoint& p) {
  Params pr = params(p);
  std::size_t cap = gauss_term_cap(p.z);
  SeriesSum s = gauss_series(pr.a, pr.b, pr.c, p.z, cap);
  if (!s.converged) {
    throw Error(ErrorKind::Convergence, "Gauss series did not converge within " + std::to_string(cap) + " terms");
  }
  MethodValue mv;
  mv.value = s.value;
  mv.cancellation_digits = digits_lost(s.max_partial, s.value);
  mv.est_accuracy = 4.0 * kEps * static_cast<double>(s.terms) * std::pow(10.0, mv.cancellation_digits);
  if (mv.cancellation_digits > 31.0 - 9.0) {
    throw Error(ErrorKind::Conditioning, "Gauss series cancellation leaves fewer than 9 digits");
  }
  return mv;
}

MethodValue by_connection_formula(const EvalPoint& p) {
  if (p.alpha == 0.0) throw Error(ErrorKind::Regime, "connection formula degenerates at alpha = 0");
  Params pr = params(p);
  const ComplexDD& a = pr.a;
  const ComplexDD& b = pr.b;
  const ComplexDD& c = pr.c;
  DoubleDouble w = 1.0 - p.z;
  ComplexDD cab = c - a - b;  // = 2 i r alpha
  std::size_t cap = gauss_term_cap(DoubleDouble(0.5)) + 10000;
  SeriesSum s1 = gauss_series(a, b, ComplexDD(1.0) - cab, w, cap);
  SeriesSum s2 = gauss_series(c - a, c - b, cab + ComplexDD(1.0), w, cap);
  if (!s1.converged || !s2.converged) throw Error(ErrorKind::Convergence, "connection-formula series did not converge");
  ComplexDD lg_c = complex_log_gamma(c);
  ComplexDD g1 = exp(lg_c + complex_log_gamma(cab) - complex_log_gamma(c - a) - complex_log_gamma(c - b));
  ComplexDD g2 = exp(lg_c + complex_log_gamma(-cab) - complex_log_gamma(a) - complex_log_gamma(b));
  ComplexDD pw = exp(cab * log(w));
  ComplexDD t1 = g1 * s1.value;
  ComplexDD t2 = g2 * pw * s2.value;
  MethodValue mv;
  mv.value = t1 + t2;
  double m1 = mag(g1) * s1.max_partial;
  double m2 = mag(g2 * pw) * s2.max_partial;
  mv.cancellation_digits = digits_lost(std::max(m1, m2), mv.value);
  // log-gamma values of size ~ r log r carry absolute error ~ 1e-32 * r log r.
  double lg_err = 1e-31 * to_double(p.r) * (1.0 + std::log(to_double(p.r)));
  mv.est_accuracy = 4.0 * kEps * static_cast<double>(s1.terms + s2.terms) * std::pow(10.0, mv.cancellation_digits) +
                    lg_err * std::pow(10.0, mv.cancellation_digits);
  if (mv.cancellation_digits > 31.0 - 9.0) {
    throw Error(ErrorKind::Conditioning, "connection formula cancellation leaves fewer than 9 digits");
  }
  return mv;
}

MethodValue by_taylor_continuation(const EvalPoint& p) {
  Params pr = params(p);
  const ComplexDD& a = pr.a;
  const ComplexDD& b = pr.b;
  const ComplexDD& c = pr.c;
  const ComplexDD apb1 = a + b + ComplexDD(1.0);
  const double r = to_double(p.r);
  const double kappa = 1.0 - to_double(p.alpha * p.alpha);

  // Start from the Gauss series where it is well conditioned.
  double zs_d = std::min({to_double(p.z), 0.5, 8.0 / (r * (1.0 - to_double(p.alpha)) * (1.0 - to_double(p.alpha)) + 1.0)});
  DoubleDouble z0 = zs_d == to_double(p.z) ? p.z : DoubleDouble(zs_d);
  SeriesSum s = gauss_series(a, b, c, z0, gauss_term_cap(z0));
  if (!s.converged) throw Error(ErrorKind::Convergence, "continuation start series did not converge");
  ComplexDD f = s.value;
  ComplexDD df = s.derivative;
  double worst = digits_lost(s.max_partial, f);
  double err = 4.0 * kEps * static_cast<double>(s.terms) * std::pow(10.0, worst);

  std::size_t steps = 0;
  std::vector<ComplexDD> d;
  d.reserve(512);
  while (z0 < p.z) {
    double zd = to_double(z0);
    double zz = zd * (1.0 - zd);
    double omega = (r * std::sqrt(std::max(0.0, 1.0 - kappa * zd)) + 2.0) / zz;
    double hd = std::min(0.5 * std::min(zd, 1.0 - zd), 5.0 / omega);
    DoubleDouble h = hd;
    if (z0 + h >= p.z) h = p.z - z0;
    const DoubleDouble q = z0 * (1.0 - z0);
    const ComplexDD lin = c - apb1 * z0;
    const DoubleDouble one_m2z = 1.0 - ldexp(z0, 1);
    d.clear();
    d.push_back(f);
    d.push_back(df * h);
    ComplexDD sum = d[0] + d[1];
    ComplexDD dsum = d[1];
    double max_part = std::max(mag(d[0]), mag(d[1]));
    const DoubleDouble h2 = h * h;
    bool converged = false;
    for (std::size_t k = 0; k < 600; ++k) {
      DoubleDouble kk = static_cast<double>(k);
      ComplexDD p1 = lin * (kk + 1.0) + ComplexDD(one_m2z * kk * (kk + 1.0));
      ComplexDD num = p1 * d[k + 1] * h - (a + kk) * (b + kk) * d[k] * h2;
      ComplexDD next = -num / (q * (kk + 1.0) * (kk + 2.0));
      d.push_back(next);
      sum += next;
      dsum += next * (kk + 2.0);
      double mn = mag(next);
      max_part = std::max({max_part, mn * (k + 2.0), mag(sum)});
      if (k > 4 && (mn + mag(d[k + 1])) * (k + 3.0) < 1e-34 * std::max(mag(sum), mag(dsum))) {
        converged = true;
        break;
      }
    }
    if (!converged) throw Error(ErrorKind::Convergence, "continuation step series did not converge");
    f = sum;
    df = dsum / h;
    z0 += h;
    double lost = digits_lost(max_part, f);
    worst = std::max(worst, lost);
    err += 4.0 * kEps * std::pow(10.0, lost) * static_cast<double>(d.size());
    if (++steps > 200000) throw Error(ErrorKind::Convergence, "continuation exceeded its step cap");
  }
  MethodValue mv;
  mv.value = f;
  mv.cancellation_digits = worst;
  mv.est_accuracy = err;
  return mv;
}

QuadratureResult eval_transformed_detailed(const EvalPoint& p) {
  if (p.z == 0.0) return {ComplexValue(ComplexDD(1.0)), 0.0, 0};
  const DoubleDouble s = sqrt(1.0 - p.z);
  const DoubleDouble big_y = p.z / ((1.0 + s) * ldexp(s, 1));  // (1 - s)/(2s)
  TransformedIntegrand f{to_double(p.r), to_double(p.alpha), to_double(big_y)};
  double x0 = 0.0;
  if (p.alpha > 0.0) {
    DoubleDouble big_s = sqrt(1.0 - (1.0 - p.alpha * p.alpha) * p.z);
    x0 = to_double(log((1.0 + big_s) / ((1.0 - p.alpha) * (1.0 + s))));
  }
  std::size_t panels = 0;
  std::complex<double> prev = integrate_transformed(f, x0, 0, panels);
  std::complex<double> cur = prev;
  double est = 0.0;
  constexpr int kMaxLevel = 3;
  std::size_t total = panels;
  for (int level = 1; level <= kMaxLevel; ++level) {
    cur = integrate_transformed(f, x0, level, panels);
    total += panels;
    est = std::abs(cur - prev) / std::abs(cur);
    if (est < 1e-12) break;
    prev = cur;
  }
  if (!(est <= 1e-9)) {
    throw Error(ErrorKind::Quadrature, "transformed integral error estimate " + std::to_string(est) + " above 1e-9");
  }
  const DoubleDouble ir = p.r * (1.0 - p.alpha);
  const DoubleDouble two_r = ldexp(p.r, 1);
  const DoubleDouble two_ra = two_r * p.alpha;
  ComplexDD log_pref = ComplexDD{DoubleDouble(-0.25), -ir} * log(1.0 - p.z);
  log_pref += ComplexDD{DoubleDouble(0.0), -two_r} * log(1.0 + big_y);
  log_pref += complex_log_gamma(ComplexDD{DoubleDouble(1.0), two_r});
  log_pref -= complex_log_gamma(ComplexDD{DoubleDouble(0.5), two_ra});
  log_pref -= complex_log_gamma(ComplexDD{DoubleDouble(0.5), two_r - two_ra});
  ComplexDD value = exp(log_pref) * to_dd(ComplexD{cur.real(), cur.imag()});
  return {ComplexValue(value), est, total};
}

ComplexValue eval_transformed(const EvalPoint& p, Precision precision) {
  return eval_transformed_detailed(p).value.rounded(precision);
}

OracleResult eval_f(const EvalPoint& p, const OracleOptions& opts) {
  if (p.r > 1000.0) throw Error(ErrorKind::Domain, "oracle limited to r <= 1000");
  static const DoubleDouble z_limit = DoubleDouble(1.0) - DoubleDouble::parse("1e-6");
  if (p.z > z_limit) throw Error(ErrorKind::Domain, "oracle limited to z <= 1 - 1e-6");
  OracleResult res;
  if (p.z == 0.0) {
    res.value = ComplexValue(ComplexDD(1.0), opts.precision);
    res.method = Method::GaussSeries;
    return res;
  }

  auto attempt = [&](Method m) -> std::optional<MethodValue> {
    try {
      switch (m) {
        case Method::GaussSeries: return by_gauss_series(p);
        case Method::TransformedSeries: return by_connection_formula(p);
        case Method::TaylorContinuation: return by_taylor_continuation(p);
        case Method::QuadratureCrossCheck: break;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Convergence && e.kind() != ErrorKind::Conditioning &&
          e.kind() != ErrorKind::Regime) {
        throw;
      }
    }
    return std::nullopt;
  };

  // Candidate order: the direct series first on the lower half, otherwise
  // whichever of the connection formula / continuation is better conditioned.
  std::vector<std::pair<Method, MethodValue>> found;
  auto consider = [&](Method m) {
    if (auto v = attempt(m)) found.emplace_back(m, *v);
  };
  if (p.z <= 0.5) {
    consider(Method::GaussSeries);
    if (found.empty() || found.front().second.est_accuracy > kAcceptAccuracy) {
      found.clear();
      consider(Method::TaylorContinuation);
    }
  } else {
    consider(Method::TransformedSeries);
    consider(Method::TaylorContinuation);
    std::sort(found.begin(), found.end(),
              [](const auto& x, const auto& y) { return x.second.est_accuracy < y.second.est_accuracy; });
    if (found.size() < 2 || found[1].second.est_accuracy > 1e-10) {
      std::size_t before = found.size();
      consider(Method::GaussSeries);
      if (found.size() > before && found.back().second.est_accuracy > 1e-10) found.pop_back();
    }
  }
  if (found.empty() || found.front().second.est_accuracy > kAcceptAccuracy) {
    throw Error(ErrorKind::Conditioning, "no oracle method reached the required accuracy");
  }
  const auto& [method, mv] = found.front();
  res.value = ComplexValue(mv.value, opts.precision);
  res.method = method;
  res.est_accuracy = mv.est_accuracy;
  res.cancellation_digits = mv.cancellation_digits;

  if (p.z > 0.5 && opts.cross_check) {
    ComplexDD other;
    if (found.size() >= 2) {
      res.cross_method = found[1].first;
      other = found[1].second.value;
    } else {
      res.cross_method = Method::QuadratureCrossCheck;
      other = eval_transformed_detailed(p).value.value;
    }
    res.cross_difference = to_double(abs(other - mv.value) / abs(mv.value));
    if (res.cross_difference > opts.agreement_tolerance) {
      throw Error(ErrorKind::Disagreement, std::string(to_string(method)) + " and " +
                                               std::string(to_string(*res.cross_method)) + " differ by " +
                                               std::to_string(res.cross_difference));
    }
  }
  return res;
}

}  // namespace hypasym::oracle
