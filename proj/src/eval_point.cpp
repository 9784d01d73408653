#include "hypasym/eval_point.hpp"

#include <stdexcept>

#include "hypasym/errors.hpp"

namespace hypasym {

EvalPoint EvalPoint::make(const DoubleDouble& r, const DoubleDouble& alpha, const DoubleDouble& z) {
  if (!(r > 0.0) || !isfinite(r)) throw Error(ErrorKind::Domain, "r must be positive");
  if (!(alpha >= 0.0) || !(alpha < 1.0)) throw Error(ErrorKind::Domain, "alpha must satisfy 0 <= alpha < 1");
  if (!(z >= 0.0) || !(z < 1.0)) throw Error(ErrorKind::Domain, "z must satisfy 0 <= z < 1");
  return EvalPoint{r, alpha, z};
}

EvalPoint EvalPoint::parse(std::string_view r, std::string_view alpha, std::string_view z) {
  auto num = [](std::string_view name, std::string_view text) {
    try {
      return DoubleDouble::parse(text);
    } catch (const std::invalid_argument&) {
      throw Error(ErrorKind::Domain, "cannot parse " + std::string(name) + " = '" + std::string(text) + "'");
    }
  };
  return make(num("r", r), num("alpha", alpha), num("z", z));
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::LG: return "lg";
    case Branch::Saddle: return "saddle";
    case Branch::Temme: return "temme";
    case Branch::MainTermOnly: return "main";
  }
  return "unknown";
}

Branch parse_branch(std::string_view name) {
  if (name == "lg") return Branch::LG;
  if (name == "saddle") return Branch::Saddle;
  if (name == "temme") return Branch::Temme;
  if (name == "main") return Branch::MainTermOnly;
  throw Error(ErrorKind::Domain, "unknown branch '" + std::string(name) + "'");
}

ExpansionResult assemble_expansion(const ComplexDD& main, const std::vector<ComplexDD>& relative_terms,
                                   int order, Branch branch, Precision precision) {
  ExpansionResult res;
  res.branch = branch;
  res.order_used = order;
  res.main_term = ComplexValue(main, precision);
  ComplexDD factor(1.0);
  for (int k = 1; k < order; ++k) {
    const ComplexDD& c = relative_terms.at(static_cast<std::size_t>(k - 1));
    res.correction_terms.emplace_back(c, precision);
    factor += c;
  }
  res.value = ComplexValue(main * factor, precision);
  if (static_cast<int>(relative_terms.size()) >= order) {
    res.est_remainder = 2.0 * to_double(abs(main) * abs(relative_terms[static_cast<std::size_t>(order - 1)]));
  } else {
    res.est_remainder = std::numeric_limits<double>::quiet_NaN();
  }
  return res;
}

}  // namespace hypasym
