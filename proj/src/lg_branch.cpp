#include "hypasym/lg_branch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hypasym/errors.hpp"
#include "hypasym/phase_amplitude.hpp"

namespace hypasym::lg {

namespace {

using DD = DoubleDouble;

constexpr double kEdge = 1e-6;
constexpr double kTailLimit = 1e-18;

void check_open_interval(const DD& alpha, const DD& z, const char* who) {
  if (!(alpha >= 0.0) || !(alpha < 1.0)) throw Error(ErrorKind::Domain, std::string(who) + ": alpha outside [0, 1)");
  if (!(z > 0.0) || !(z < 1.0)) throw Error(ErrorKind::Domain, std::string(who) + ": z outside (0, 1)");
}

// Chebyshev machinery on N first-kind nodes. Coefficients a_k with
// f(x) = sum_k a_k T_k(x), x in [-1, 1].
class Chebyshev {
 public:
  explicit Chebyshev(int n) : n_(n), cos_(static_cast<std::size_t>(4 * n)) {
    for (int m = 0; m < 4 * n; ++m) cos_[static_cast<std::size_t>(m)] = cos(dd_const::pi * DD(m) / DD(2.0 * n));
  }
  int size() const { return n_; }
  DD node(int k) const { return table(2 * k + 1); }

  std::vector<DD> coefficients(const std::vector<DD>& values) const {
    std::vector<DD> a(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) {
      DD s(0.0);
      for (int k = 0; k < n_; ++k) s += values[static_cast<std::size_t>(k)] * table(j * (2 * k + 1));
      a[static_cast<std::size_t>(j)] = s * DD(2.0) / DD(n_);
    }
    a[0] = ldexp(a[0], -1);
    return a;
  }
  std::vector<DD> values(const std::vector<DD>& a) const {
    std::vector<DD> v(static_cast<std::size_t>(n_));
    for (int k = 0; k < n_; ++k) {
      DD s(0.0);
      for (int j = 0; j < n_; ++j) s += a[static_cast<std::size_t>(j)] * table(j * (2 * k + 1));
      v[static_cast<std::size_t>(k)] = s;
    }
    return v;
  }

 private:
  DD table(int m) const { return cos_[static_cast<std::size_t>(m % (4 * n_))]; }
  int n_;
  std::vector<DD> cos_;
};

std::vector<DD> cheb_derivative(const std::vector<DD>& a) {
  const std::size_t n = a.size();
  std::vector<DD> d(n, DD(0.0));
  if (n < 2) return d;
  for (std::size_t k = n - 1; k-- > 0;) {
    DD next = (k + 2 < n) ? d[k + 2] : DD(0.0);
    d[k] = next + DD(2.0 * static_cast<double>(k + 1)) * a[k + 1];
  }
  d[0] = ldexp(d[0], -1);
  return d;
}

// Antiderivative vanishing at x = -1, truncated to the same length.
std::vector<DD> cheb_integral(const std::vector<DD>& a) {
  const std::size_t n = a.size();
  std::vector<DD> b(n, DD(0.0));
  for (std::size_t k = 1; k < n; ++k) {
    DD prev = (k == 1) ? ldexp(a[0], 1) : a[k - 1];
    DD next = (k + 1 < n) ? a[k + 1] : DD(0.0);
    b[k] = (prev - next) / DD(2.0 * static_cast<double>(k));
  }
  DD at_minus_one(0.0);
  for (std::size_t k = 1; k < n; ++k) at_minus_one += (k % 2 ? -b[k] : b[k]);
  b[0] = -at_minus_one;
  return b;
}

DD clenshaw(const std::vector<DD>& a, const DD& x) {
  DD b1(0.0), b2(0.0);
  DD two_x = ldexp(x, 1);
  for (std::size_t k = a.size(); k-- > 1;) {
    DD b0 = two_x * b1 - b2 + a[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + a[0];
}

}  // namespace

OdeData ode_data(const DD& alpha, const DD& z) {
  check_open_interval(alpha, z, "ode_data");
  const DD one(1.0);
  const DD kappa = one - alpha * alpha;
  const DD p = one - kappa * z;
  const DD zc = one - z;
  const DD u = one / sqr(z * zc);
  const DD l = DD(2.0) / zc - DD(2.0) / z;
  const DD l_prime = DD(2.0) / sqr(z) + DD(2.0) / sqr(zc);
  OdeData d;
  d.h_val = p * u;
  d.g_val = -(one - DD(0.75) * z + DD(0.75) * z * z) * u / DD(4.0);
  d.h_prime = u * (p * l - kappa);
  d.h_second = u * (p * (l * l + l_prime) - DD(2.0) * kappa * l);
  return d;
}

DD xi(const DD& alpha, const DD& z) {
  check_open_interval(alpha, z, "xi");
  const DD one(1.0);
  DD s = radical(alpha, z);
  DD v = DD(-2.0) * log(one + s) + log(z) - alpha * log(one - z) + (one - alpha) * log(one - alpha * alpha);
  if (alpha != 0.0) v += ldexp(alpha, 1) * log(alpha + s);
  return v;
}

DD lambda_fn(const DD& alpha, const DD& z) {
  check_open_interval(alpha, z, "lambda_fn");
  if (z > 1.0 - kEdge) throw Error(ErrorKind::Domain, "lambda_fn: z too close to the pole at 1");
  OdeData d = ode_data(alpha, z);
  if (!(d.h_val > 0.0)) throw Error(ErrorKind::Domain, "lambda_fn: at or beyond the turning point");
  DD num = DD(16.0) * d.g_val * sqr(d.h_val) + DD(4.0) * d.h_val * d.h_second - DD(5.0) * sqr(d.h_prime);
  DD root = sqrt(d.h_val);
  return num / (DD(32.0) * sqr(d.h_val) * root);
}

DD lambda_at_zero(const DD& alpha) { return alpha * alpha / DD(8.0) - DD(1.0) / DD(32.0); }

DD connection_phase(const DD& alpha) {
  const DD one(1.0);
  DD v = ldexp(dd_const::ln2, 1) - (one - alpha) * log(one - alpha * alpha);
  if (alpha != 0.0) v -= ldexp(alpha, 1) * log(one + alpha);
  return v;
}

LgCoefficients LgCoefficients::build(const DD& alpha, int order, const DD& z_max, int nodes) {
  if (order < 0 || order > kMaxOrder) {
    throw Error(ErrorKind::Domain, "LG coefficient order must be in [0, " + std::to_string(kMaxOrder) + "]");
  }
  if (!(z_max > 0.0) || !(z_max <= 1.0 - kEdge)) throw Error(ErrorKind::Domain, "LG table needs 0 < z_max < 1");
  if (nodes < 16) throw Error(ErrorKind::Domain, "LG table needs at least 16 nodes");
  LgCoefficients out;
  out.alpha_ = alpha;
  out.z_max_ = z_max;
  out.nodes_ = nodes;
  if (order == 0) return out;

  Chebyshev cheb(nodes);
  const std::size_t n = static_cast<std::size_t>(nodes);
  const DD half_width = ldexp(z_max, -1);
  std::vector<DD> lam(n), damp(n);
  for (int k = 0; k < nodes; ++k) {
    DD z = half_width * (cheb.node(k) + 1.0);
    DD s = radical(alpha, z);
    lam[static_cast<std::size_t>(k)] = lambda_fn(alpha, z);
    // 1 / (2 sqrt(h))
    damp[static_cast<std::size_t>(k)] = z * (DD(1.0) - z) / ldexp(s, 1);
  }

  std::vector<DD> prev_coeffs(n, DD(0.0));
  prev_coeffs[0] = 1.0;
  std::vector<DD> prev_values(n, DD(1.0));
  for (int j = 0; j < order; ++j) {
    std::vector<DD> deriv_values(n, DD(0.0));
    if (j > 0) {
      std::vector<DD> d = cheb_derivative(prev_coeffs);
      for (auto& v : d) v = v / half_width;
      deriv_values = cheb.values(d);
    }
    std::vector<DD> integrand(n);
    for (std::size_t k = 0; k < n; ++k) integrand[k] = lam[k] * prev_values[k];
    std::vector<DD> integ = cheb_integral(cheb.coefficients(integrand));
    for (auto& v : integ) v = v * half_width;
    std::vector<DD> integ_values = cheb.values(integ);
    std::vector<DD> next(n);
    for (std::size_t k = 0; k < n; ++k) next[k] = integ_values[k] - deriv_values[k] * damp[k];
    prev_coeffs = cheb.coefficients(next);
    prev_values = std::move(next);
    out.cheb_.push_back(prev_coeffs);
    if (out.tail_ratio(j + 1) > kTailLimit) {
      throw Error(ErrorKind::GridTooCoarse, "A_" + std::to_string(j + 1) + " not resolved by " +
                                                std::to_string(nodes) + " Chebyshev nodes");
    }
  }
  return out;
}

DD LgCoefficients::value(int j, const DD& z) const {
  if (j == 0) return DD(1.0);
  if (j < 0 || j > order()) throw Error(ErrorKind::Domain, "A_j requested beyond the table order");
  if (!(z >= 0.0) || !(z <= z_max_)) throw Error(ErrorKind::Domain, "A_j requested outside [0, z_max]");
  DD x = z / ldexp(z_max_, -1) - 1.0;
  return clenshaw(chebyshev(j), x);
}

std::vector<DD> LgCoefficients::sample(int j, std::span<const DD> grid) const {
  std::vector<DD> out;
  out.reserve(grid.size());
  for (const DD& z : grid) out.push_back(value(j, z));
  return out;
}

double LgCoefficients::tail_ratio(int j) const {
  const auto& a = chebyshev(j);
  double big = 0.0;
  for (const DD& c : a) big = std::max(big, std::abs(to_double(c)));
  if (big == 0.0) return 0.0;
  double tail = 0.0;
  for (std::size_t k = a.size() - 3; k < a.size(); ++k) tail = std::max(tail, std::abs(to_double(a[k])));
  return tail / big;
}

LgCoefficients a_coeffs(const DD& alpha, int order, const DD& z_max, int nodes) {
  return LgCoefficients::build(alpha, order, z_max, nodes);
}

double a1_by_quadrature(const DD& alpha, const DD& z) {
  static const double gx[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
                               0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
  static const double gw[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
                               0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
  check_open_interval(alpha, z, "a1_by_quadrature");
  const double zz = to_double(z);
  double sum = 0.0;
  double lo = 0.0;
  // Panels [1 - 2^-k, 1 - 2^-(k+1)], halved, up to z.
  for (int k = 0; lo < zz; ++k) {
    double edge = 1.0 - std::ldexp(1.0, -(k + 1));
    double hi_edge = std::min(edge, zz);
    for (int part = 0; part < 2; ++part) {
      double a = lo + (hi_edge - lo) * 0.5 * part;
      double b = lo + (hi_edge - lo) * 0.5 * (part + 1);
      double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int i = 0; i < 8; ++i) {
        for (double sgn : {-1.0, 1.0}) {
          double x = mid + sgn * half * gx[i];
          double v = x < 1e-12 ? to_double(lambda_at_zero(alpha)) : to_double(lambda_fn(alpha, DD(x)));
          sum += gw[i] * half * v;
        }
      }
    }
    lo = hi_edge;
  }
  return sum;
}

ComplexDD lg_main_term(const EvalPoint& p) {
  const DD one(1.0);
  OdeData d = ode_data(p.alpha, p.z);
  DD phase = p.r * (connection_phase(p.alpha) + xi(p.alpha, p.z) - log(p.z) + p.alpha * log(one - p.z));
  DD amp = one / (sqrt(sqrt(d.h_val)) * sqrt(p.z * (one - p.z)));
  return polar(amp, phase);
}

ExpansionResult lg_evaluate(const EvalPoint& p, int order, const Config& cfg) {
  if (order < 1 || order > kMaxOrder) {
    throw Error(ErrorKind::Domain, "LG order must be in [1, " + std::to_string(kMaxOrder) + "]");
  }
  const DD z_max(1.0 - cfg.delta);
  if (order > 1 && p.z > z_max) {
    throw Error(ErrorKind::Regime, "LG corrections need z <= 1 - delta = " + to_string(z_max, 6));
  }
  if (p.z == 0.0) return assemble_expansion(ComplexDD(1.0), std::vector<ComplexDD>(order, ComplexDD()), order,
                                            Branch::LG, cfg.precision);
  ComplexDD main = lg_main_term(p);
  std::vector<ComplexDD> rel;
  if (p.z <= z_max) {
    LgCoefficients table = LgCoefficients::build(p.alpha, order, z_max, cfg.lg_nodes);
    // A_j / (ir)^j
    ComplexDD inv_ir = ComplexDD(DD(0.0), -(DD(1.0) / p.r));
    ComplexDD pw(1.0);
    for (int j = 1; j <= order; ++j) {
      pw = pw * inv_ir;
      rel.push_back(pw * table.value(j, p.z));
    }
  } else {
    rel.push_back(ComplexDD(DD(0.0), -DD(a1_by_quadrature(p.alpha, p.z)) / p.r));
  }
  return assemble_expansion(main, rel, order, Branch::LG, cfg.precision);
}

}  // namespace hypasym::lg
