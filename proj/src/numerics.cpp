#include "hypasym/numerics.hpp"

#include <array>
#include <cmath>
#include <string>

#include "hypasym/errors.hpp"
#include "hypasym/series_jet.hpp"

namespace hypasym {

namespace {

// Correctly rounded sum of non-overlapping partials (increasing magnitude).
double round_partials(const std::vector<double>& p) {
  if (p.empty()) return 0.0;
  std::size_t i = p.size() - 1;
  double hi = p[i];
  double lo = 0.0;
  while (i > 0) {
    double x = hi;
    double y = p[--i];
    hi = x + y;
    double yr = hi - x;
    lo = y - yr;
    if (lo != 0.0) break;
  }
  if (i > 0 && ((lo < 0.0 && p[i - 1] < 0.0) || (lo > 0.0 && p[i - 1] > 0.0))) {
    double y = lo * 2.0;
    double x = hi + y;
    double yr = x - hi;
    if (y == yr) hi = x;
  }
  return hi;
}

const DoubleDouble& half_log_two_pi() {
  static const DoubleDouble v = DoubleDouble::parse("0.91893853320467274178032973640561764");
  return v;
}

const DoubleDouble& log_pi() {
  static const DoubleDouble v = DoubleDouble::parse("1.14472988584940017414342735135305871");
  return v;
}

// log sin(pi s) on a branch that is continuous away from the real axis.
ComplexDD log_sin_pi(const ComplexDD& s) {
  const DoubleDouble& pi = dd_const::pi;
  if (abs(s.im) < 1.0) {
    DoubleDouble sx, cx;
    sincos(pi * s.re, sx, cx);
    DoubleDouble e = exp(pi * s.im);
    DoubleDouble ei = 1.0 / e;
    ComplexDD v{sx * (e + ei) * 0.5, cx * (e - ei) * 0.5};
    return log(v);
  }
  // Factor out the dominant exponential.
  const ComplexDD log_2i{log(DoubleDouble(2.0)), dd_const::half_pi};
  if (s.im > 0.0) {
    // sin(pi s) = e^{-i pi s} (e^{2 pi i s} - 1) / (2i)
    ComplexDD small = exp(ComplexDD{-2.0 * pi * s.im, 2.0 * pi * s.re});
    ComplexDD m1 = ComplexDD{DoubleDouble(-1.0), DoubleDouble(0.0)} + small;
    return ComplexDD{pi * s.im, -pi * s.re} + log(m1) - log_2i;
  }
  // sin(pi s) = e^{i pi s} (1 - e^{-2 pi i s}) / (2i)
  ComplexDD small = exp(ComplexDD{2.0 * pi * s.im, -2.0 * pi * s.re});
  ComplexDD m1 = ComplexDD{DoubleDouble(1.0), DoubleDouble(0.0)} - small;
  return ComplexDD{-pi * s.im, pi * s.re} + log(m1) - log_2i;
}

ComplexDD log_gamma_stirling(const ComplexDD& z) {
  ComplexDD res = (z - ComplexDD(0.5)) * log(z) - z + ComplexDD(half_log_two_pi());
  ComplexDD zinv = ComplexDD(1.0) / z;
  ComplexDD zinv2 = zinv * zinv;
  ComplexDD p = zinv;
  for (int k = 1; k <= 15; ++k) {
    ComplexDD term = p * (bernoulli_even(k) / static_cast<double>(2 * k * (2 * k - 1)));
    res += term;
    if (std::abs(term.re.hi()) + std::abs(term.im.hi()) < 1e-34) break;
    p *= zinv2;
  }
  return res;
}

}  // namespace

void ExactAccumulator::add(double x) {
  std::size_t i = 0;
  for (double y : partials_) {
    if (std::abs(x) < std::abs(y)) std::swap(x, y);
    double hi = x + y;
    double lo = y - (hi - x);
    if (lo != 0.0) partials_[i++] = lo;
    x = hi;
  }
  partials_.resize(i);
  partials_.push_back(x);
}

DoubleDouble ExactAccumulator::result() const {
  double hi = round_partials(partials_);
  ExactAccumulator rest = *this;
  rest.add(-hi);
  double lo = round_partials(rest.partials_);
  return DoubleDouble::from_sum(hi, lo);
}

ComplexValue compensated_sum(std::span<const ComplexValue> terms) {
  ExactAccumulator re;
  ExactAccumulator im;
  for (const auto& t : terms) {
    re.add(t.value.re);
    im.add(t.value.im);
  }
  return ComplexValue(ComplexDD{re.result(), im.result()}, Precision::Extended);
}

DoubleDouble bernoulli_even(int k) {
  static const std::array<std::pair<const char*, const char*>, 15> table{{
      {"1", "6"},
      {"-1", "30"},
      {"1", "42"},
      {"-1", "30"},
      {"5", "66"},
      {"-691", "2730"},
      {"7", "6"},
      {"-3617", "510"},
      {"43867", "798"},
      {"-174611", "330"},
      {"854513", "138"},
      {"-236364091", "2730"},
      {"8553103", "6"},
      {"-23749461029", "870"},
      {"8615841276005", "14322"},
  }};
  static const std::array<DoubleDouble, 15> values = [] {
    std::array<DoubleDouble, 15> v{};
    for (std::size_t i = 0; i < table.size(); ++i) {
      v[i] = DoubleDouble::parse(table[i].first) / DoubleDouble::parse(table[i].second);
    }
    return v;
  }();
  if (k < 1 || k > 15) throw Error(ErrorKind::Domain, "bernoulli_even index out of range");
  return values[static_cast<std::size_t>(k - 1)];
}

ComplexDD complex_log_gamma(const ComplexDD& s) {
  if (s.re < 0.5) {
    ComplexDD one_minus = ComplexDD(1.0) - s;
    return ComplexDD(log_pi()) - log_sin_pi(s) - complex_log_gamma(one_minus);
  }
  // Shift upward until the asymptotic series reaches full precision.
  constexpr double kRadius = 30.0;
  double x = to_double(s.re);
  double y = to_double(s.im);
  int shift = 0;
  if (x * x + y * y < kRadius * kRadius) {
    shift = static_cast<int>(std::ceil(std::sqrt(kRadius * kRadius - y * y) - x));
    if (shift < 0) shift = 0;
  }
  ComplexDD z = s;
  ComplexDD log_prod{};
  for (int k = 0; k < shift; ++k) {
    log_prod += log(z);
    z += ComplexDD(1.0);
  }
  return log_gamma_stirling(z) - log_prod;
}

ComplexValue complex_gamma(const ComplexValue& s) {
  const ComplexDD& v = s.value;
  if (v.im == 0.0 && v.re <= 0.0) {
    DoubleDouble n = round(v.re);
    double tol = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(to_double(v.re)));
    if (std::abs(to_double(v.re - n)) <= tol) {
      throw Error(ErrorKind::Pole, "complex_gamma at non-positive integer " + to_string(n, 17));
    }
  }
  return ComplexValue(exp(complex_log_gamma(v)), s.precision);
}

StirlingExpansion StirlingExpansion::make(const DoubleDouble& sigma, int order, bool t_negative) {
  if (order < 1) throw Error(ErrorKind::Domain, "Stirling expansion order must be >= 1");
  StirlingExpansion e;
  e.order = order;
  e.sigma = sigma;
  e.t_negative = t_negative;
  const std::size_t n = static_cast<std::size_t>(order);
  // Series in u = 1/|t| of log(Gamma/L), then exponentiate.
  const ComplexDD i_sigma{DoubleDouble(0.0), sigma};
  ComplexJet one_minus = ComplexJet::constant(ComplexDD(1.0), n);
  if (n > 1) one_minus[1] = -i_sigma;
  ComplexJet ell = log(one_minus);
  ComplexJet ex = ell * ComplexDD(sigma - 0.5);
  // -i sum_{m>=2} (i sigma)^m u^{m-1} / m
  ComplexDD pw = i_sigma;
  for (std::size_t m = 2; m <= n; ++m) {
    pw = pw * i_sigma;
    ex[m - 1] -= kI * pw / DoubleDouble(static_cast<double>(m));
  }
  // Bernoulli terms (-i u)^{2k-1} (1 - i sigma u)^{1-2k} B_2k / (2k(2k-1))
  for (int k = 1; 2 * k - 1 < order && k <= 15; ++k) {
    const int p = 2 * k - 1;
    ComplexJet powjet = exp(ell * ComplexDD(static_cast<double>(-p)));
    ComplexDD mi_pow{DoubleDouble(1.0), DoubleDouble(0.0)};
    for (int q = 0; q < p; ++q) mi_pow = mi_pow * ComplexDD{DoubleDouble(0.0), DoubleDouble(-1.0)};
    DoubleDouble coef = bernoulli_even(k) / static_cast<double>(2 * k * (2 * k - 1));
    for (std::size_t i = static_cast<std::size_t>(p); i < n; ++i) {
      ex[i] += mi_pow * powjet[i - static_cast<std::size_t>(p)] * coef;
    }
  }
  ComplexJet corr = exp(ex);
  e.coefficients.resize(n - 1);
  for (std::size_t j = 1; j < n; ++j) {
    ComplexDD a = corr[j];
    if (t_negative) {
      a = conj(a);
      if (j % 2 == 1) a = -a;
    }
    e.coefficients[j - 1] = a;
  }
  return e;
}

ComplexDD StirlingExpansion::correction(const DoubleDouble& t) const {
  ComplexDD s(1.0);
  DoubleDouble tinv = 1.0 / t;
  DoubleDouble p = 1.0;
  for (const auto& a : coefficients) {
    p *= tinv;
    s += a * p;
  }
  return s;
}

std::vector<ComplexDD> StirlingExpansion::rescaled(const DoubleDouble& scale) const {
  std::vector<ComplexDD> out{ComplexDD(1.0)};
  DoubleDouble p = 1.0;
  for (const auto& a : coefficients) {
    p /= scale;
    out.push_back(a * p);
  }
  return out;
}

ComplexDD stirling_log_leading(const DoubleDouble& sigma, const DoubleDouble& t) {
  DoubleDouble at = abs(t);
  DoubleDouble lt = log(at);
  DoubleDouble sgn = t < 0.0 ? DoubleDouble(-1.0) : DoubleDouble(1.0);
  DoubleDouble re = half_log_two_pi() + (sigma - 0.5) * lt - dd_const::pi * at * 0.5;
  DoubleDouble im = t * lt - t + dd_const::half_pi * (sigma - 0.5) * sgn;
  return {re, im};
}

ComplexDD stirling_leading(const DoubleDouble& sigma, const DoubleDouble& t) {
  return exp(stirling_log_leading(sigma, t));
}

ComplexValue stirling_gamma(const DoubleDouble& sigma, const DoubleDouble& t, int order) {
  if (abs(t) < 10.0) throw Error(ErrorKind::Domain, "Stirling expansion needs |t| >= 10");
  if (abs(sigma) > 2.0) throw Error(ErrorKind::Domain, "Stirling expansion needs |sigma| <= 2");
  if (order < 1) throw Error(ErrorKind::Domain, "Stirling expansion order must be >= 1");
  StirlingExpansion e = StirlingExpansion::make(sigma, order, t < 0.0);
  return ComplexValue(stirling_leading(sigma, t) * e.correction(t), Precision::Extended);
}

}  // namespace hypasym
