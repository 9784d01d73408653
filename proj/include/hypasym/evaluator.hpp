// Branch selection, cross-branch reports against the oracle, decay fits.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypasym/eval_point.hpp"
#include "hypasym/oracle.hpp"

namespace hypasym {

// MainTermOnly below z_tiny, Saddle up to 1 - delta, Temme above.
Branch select_branch(const EvalPoint& p, const Config& cfg = {});

// The closed main term with the small-z remainder estimate 2 |main| |Lambda(0)| z / r.
ExpansionResult main_term_only(const EvalPoint& p, const Config& cfg = {});

// With an explicit branch the branch module is called directly and its errors
// propagate. Without one, select_branch decides; if the Temme branch is chosen
// but alpha r < 1, the saddle branch is tried instead.
ExpansionResult evaluate(const EvalPoint& p, int order, std::optional<Branch> branch = std::nullopt,
                         const Config& cfg = {});

struct BranchEntry {
  Branch branch = Branch::MainTermOnly;
  int order = 1;
  ComplexValue value;
  double rel_error = 0.0;
  double est_remainder = 0.0;
};

struct BranchReport {
  EvalPoint point;
  oracle::OracleResult oracle;
  // Every (branch, order) that evaluates at the point, ordered by branch
  // (lg, saddle, temme, main) and then by order.
  std::vector<BranchEntry> per_branch;
};

double relative_error(const ComplexDD& value, const ComplexDD& reference);

// Oracle failures are rethrown with the message prefixed by "oracle: ".
BranchReport compare(const EvalPoint& p, std::span<const int> orders, const Config& cfg = {},
                     const oracle::OracleOptions& oracle_opts = {});

// Least-squares slope of log(error) against log(scale).
double decay_fit(std::span<const double> scale, std::span<const double> errors);

// Relative errors of evaluate(p, order, branch) against the oracle at each
// point, fitted against log(alpha r) (log r when alpha = 0).
double decay_fit(std::span<const EvalPoint> points, int order, std::optional<Branch> branch = std::nullopt,
                 const Config& cfg = {});

}  // namespace hypasym
