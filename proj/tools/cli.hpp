// Command-line front end: eval, table, sweep, coeffs.
#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "hypasym/eval_point.hpp"

namespace hypasym::cli {

// Exit codes: 0 success, 2 usage / domain / regime errors, 1 anything else.
// stdout carries data only; diagnostics go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct TableSpec {
  int id;
  const char* r;
  const char* alpha;
  const char* z;
};

// The five reference cases, r = 100 throughout.
const std::vector<TableSpec>& table_specs();

struct TableRow {
  TableSpec spec;
  std::complex<double> f_value;  // oracle
  std::complex<double> r_value;  // closed main term
  double rel_error;              // |F - R| / |F| from the unrounded values
};

TableRow compute_table_row(const TableSpec& spec, Precision oracle_precision, Precision asym_precision);

}  // namespace hypasym::cli
