// Evaluation point, configuration and the result type shared by all
// asymptotic branches.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hypasym/double_double.hpp"
#include "hypasym/numerics.hpp"

namespace hypasym {

// Parameters of F(r, alpha, z) = 2F1(1/4 + ir(1-alpha), 3/4 + ir(1-alpha); 1 + 2ir; z).
struct EvalPoint {
  DoubleDouble r;
  DoubleDouble alpha;
  DoubleDouble z;

  // Validates r > 0, 0 <= alpha < 1, 0 <= z < 1.
  static EvalPoint make(const DoubleDouble& r, const DoubleDouble& alpha, const DoubleDouble& z);
  static EvalPoint parse(std::string_view r, std::string_view alpha, std::string_view z);

  DoubleDouble t_spec() const { return alpha * r; }
};

enum class Branch { LG, Saddle, Temme, MainTermOnly };

std::string_view to_string(Branch b);
Branch parse_branch(std::string_view name);

// How the gamma-function ratios of the saddle and Temme routes are evaluated.
enum class GammaMode {
  Asymptotic,  // closed leading form times Stirling corrections (the expansion proper)
  Exact,       // complex_gamma, diagnostics only
};

struct Config {
  double delta = 0.1;           // Temme region is z > 1 - delta
  double z_tiny = 1e-3;         // below this only the main term is used
  double saddle_interior = 1e-3;
  int lg_nodes = 128;           // Chebyshev nodes for the A_j tables
  GammaMode gamma_mode = GammaMode::Asymptotic;
  Precision precision = Precision::Standard;
};

struct ExpansionResult {
  ComplexValue value;
  ComplexValue main_term;
  int order_used = 1;
  // main_term * correction_terms[k-1] is the k-th correction, so that
  // value = main_term * (1 + sum correction_terms).
  std::vector<ComplexValue> correction_terms;
  // 2 * |first omitted term|, an estimate and not a bound.
  double est_remainder = 0.0;
  Branch branch = Branch::MainTermOnly;
};

// Assembles an ExpansionResult from main term and relative corrections
// c_1..c_n (c_n is the first omitted one, used for the estimate).
ExpansionResult assemble_expansion(const ComplexDD& main, const std::vector<ComplexDD>& relative_terms,
                                   int order, Branch branch, Precision precision);

}  // namespace hypasym
