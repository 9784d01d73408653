#include "hypasym/evaluator.hpp"

#include <cmath>

#include "hypasym/errors.hpp"
#include "hypasym/lg_branch.hpp"
#include "hypasym/phase_amplitude.hpp"
#include "hypasym/saddle_branch.hpp"
#include "hypasym/temme_branch.hpp"

namespace hypasym {

Branch select_branch(const EvalPoint& p, const Config& cfg) {
  if (p.z < cfg.z_tiny) return Branch::MainTermOnly;
  if (p.z <= 1.0 - cfg.delta) return Branch::Saddle;
  return Branch::Temme;
}

ExpansionResult main_term_only(const EvalPoint& p, const Config& cfg) {
  MainTerm m = main_term(p, Precision::Extended);
  ExpansionResult res;
  res.branch = Branch::MainTermOnly;
  res.order_used = 1;
  res.main_term = ComplexValue(m.value.value, cfg.precision);
  res.value = res.main_term;
  // The first correction is A_1(z) / (ir) with A_1(z) ~ Lambda(0) z.
  DoubleDouble lam0 = lg::lambda_at_zero(p.alpha);
  res.est_remainder = 2.0 * to_double(m.amplitude * abs(lam0) * p.z / p.r);
  return res;
}

namespace {

ExpansionResult run_branch(const EvalPoint& p, int order, Branch b, const Config& cfg) {
  switch (b) {
    case Branch::LG: return lg::lg_evaluate(p, order, cfg);
    case Branch::Saddle: return saddle::saddle_evaluate(p, order, cfg);
    case Branch::Temme: return temme::temme_evaluate(p, order, cfg);
    case Branch::MainTermOnly: return main_term_only(p, cfg);
  }
  throw Error(ErrorKind::Domain, "unknown branch");
}

}  // namespace

ExpansionResult evaluate(const EvalPoint& p, int order, std::optional<Branch> branch, const Config& cfg) {
  if (order < 1) throw Error(ErrorKind::Domain, "order must be >= 1");
  if (branch) return run_branch(p, order, *branch, cfg);
  Branch b = select_branch(p, cfg);
  if (b == Branch::Temme && !(p.alpha * p.r >= 1.0)) {
    return saddle::saddle_evaluate(p, order, cfg);
  }
  return run_branch(p, order, b, cfg);
}

double relative_error(const ComplexDD& value, const ComplexDD& reference) {
  return to_double(abs(value - reference) / abs(reference));
}

BranchReport compare(const EvalPoint& p, std::span<const int> orders, const Config& cfg,
                     const oracle::OracleOptions& oracle_opts) {
  BranchReport rep;
  rep.point = p;
  try {
    rep.oracle = oracle::eval_f(p, oracle_opts);
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("oracle: ") + e.what());
  }
  if (orders.empty()) throw Error(ErrorKind::Domain, "compare needs at least one order");
  const ComplexDD ref = rep.oracle.value.value;
  for (Branch b : {Branch::LG, Branch::Saddle, Branch::Temme, Branch::MainTermOnly}) {
    for (int n : orders) {
      if (b == Branch::MainTermOnly && n != orders.front()) continue;
      try {
        ExpansionResult r = run_branch(p, n, b, cfg);
        rep.per_branch.push_back({b, r.order_used, r.value, relative_error(r.value.value, ref), r.est_remainder});
      } catch (const Error&) {
        // not valid at this point
      }
    }
  }
  return rep;
}

double decay_fit(std::span<const double> scale, std::span<const double> errors) {
  if (scale.size() != errors.size()) throw Error(ErrorKind::Domain, "decay_fit: size mismatch");
  if (scale.size() < 3) throw Error(ErrorKind::InsufficientData, "decay_fit needs at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(scale.size());
  for (std::size_t i = 0; i < scale.size(); ++i) {
    if (!(scale[i] > 0.0) || !(errors[i] > 0.0)) {
      throw Error(ErrorKind::InsufficientData, "decay_fit needs positive scales and errors");
    }
    double x = std::log(scale[i]);
    double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double den = n * sxx - sx * sx;
  if (!(den > 0.0)) throw Error(ErrorKind::InsufficientData, "decay_fit needs distinct scales");
  return (n * sxy - sx * sy) / den;
}

double decay_fit(std::span<const EvalPoint> points, int order, std::optional<Branch> branch, const Config& cfg) {
  if (points.size() < 3) throw Error(ErrorKind::InsufficientData, "decay_fit needs at least 3 points");
  std::vector<double> scale, errors;
  Config extended = cfg;
  extended.precision = Precision::Extended;
  for (const EvalPoint& p : points) {
    ComplexDD ref = oracle::eval_f(p).value.value;
    ExpansionResult r = evaluate(p, order, branch, extended);
    scale.push_back(to_double(p.alpha > 0.0 ? p.t_spec() : p.r));
    errors.push_back(relative_error(r.value.value, ref));
  }
  return decay_fit(scale, errors);
}

}  // namespace hypasym
