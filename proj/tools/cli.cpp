#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <json.hpp>

#include "format.hpp"
#include "hypasym/errors.hpp"
#include "hypasym/evaluator.hpp"
#include "hypasym/lg_branch.hpp"
#include "hypasym/oracle.hpp"
#include "hypasym/phase_amplitude.hpp"
#include "hypasym/temme_branch.hpp"

namespace hypasym::cli {

namespace {

struct Precisions {
  Precision oracle = Precision::Extended;
  Precision asym = Precision::Standard;
};

Precisions precisions_from_env() {
  Precisions p;
  const char* env = std::getenv("HYPASYM_PRECISION");
  if (env == nullptr || *env == '\0') return p;
  std::string v(env);
  if (v == "standard") {
    p.oracle = p.asym = Precision::Standard;
  } else if (v == "extended") {
    p.oracle = p.asym = Precision::Extended;
  } else {
    throw Error(ErrorKind::Domain, "HYPASYM_PRECISION must be standard or extended, got '" + v + "'");
  }
  return p;
}

std::string precision_name(Precision p) { return p == Precision::Extended ? "extended" : "standard"; }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::complex<double> as_std(const ComplexValue& v) { return to_std(v.value); }

GammaMode parse_gamma_mode(const std::string& s) {
  if (s == "exact") return GammaMode::Exact;
  return GammaMode::Asymptotic;
}

struct PointOptions {
  std::string r = "100";
  std::string alpha = "0.1";
  std::string z;
};

struct EvalOptions {
  PointOptions point;
  int order = 1;
  std::string method = "asym";
  std::string gamma = "asymptotic";
  double delta = 0.1;
  bool details = false;
};

struct TableOptions {
  std::string id = "all";
  std::string format = "md";
};

struct SweepOptions {
  std::string r_list;
  std::string alpha_list;
  std::string z_list;
  int order = 1;
  std::string method = "asym";
  std::string out_path;
  std::string plot_path;
  unsigned threads = 0;
  double delta = 0.1;
};

struct CoeffOptions {
  std::string branch;
  int order = 0;
  PointOptions point;
  int samples = 11;
  std::string jet = "series";
  std::string step = "1e-3";
  double delta = 0.1;
};

// Value of one method at p; oracle and main ignore order.
struct MethodResult {
  ComplexValue value;
  std::string branch;
  int order_used = 1;
  double est_remainder = 0.0;
};

MethodResult run_method(const std::string& method, const EvalPoint& p, int order, const Config& cfg,
                        Precision oracle_precision) {
  MethodResult m;
  if (method == "oracle") {
    oracle::OracleOptions opts;
    opts.precision = oracle_precision;
    oracle::OracleResult o = oracle::eval_f(p, opts);
    m.value = o.value;
    m.branch = "oracle";
    m.est_remainder = o.est_accuracy;
    return m;
  }
  ExpansionResult r;
  if (method == "main") {
    r = main_term_only(p, cfg);
  } else if (method == "asym") {
    r = evaluate(p, order, std::nullopt, cfg);
  } else {
    r = evaluate(p, order, parse_branch(method), cfg);
  }
  m.value = r.value;
  m.branch = std::string(to_string(r.branch));
  m.order_used = r.order_used;
  m.est_remainder = r.est_remainder;
  return m;
}

int cmd_eval(const EvalOptions& o, std::ostream& out) {
  Precisions prec = precisions_from_env();
  EvalPoint p = EvalPoint::parse(o.point.r, o.point.alpha, o.point.z);
  Config cfg;
  cfg.delta = o.delta;
  cfg.precision = prec.asym;
  cfg.gamma_mode = parse_gamma_mode(o.gamma);
  MethodResult m = run_method(o.method, p, o.order, cfg, prec.oracle);
  out << format_complex(as_std(m.value)) << "\n";
  if (o.details) {
    out << "branch " << m.branch << "\n";
    if (o.method != "oracle") out << "order " << m.order_used << "\n";
    out << (o.method == "oracle" ? "est_accuracy " : "est_remainder ") << format_sci(m.est_remainder) << "\n";
  }
  return 0;
}

void write_table_md(const std::vector<TableRow>& rows, const Precisions& prec, std::ostream& out) {
  out << "<!-- hypasym " << kVersion << " oracle=" << precision_name(prec.oracle)
      << " asym=" << precision_name(prec.asym) << " -->\n";
  for (const TableRow& row : rows) {
    out << "\n### Table " << row.spec.id << ": r = " << row.spec.r << ", alpha = " << row.spec.alpha
        << ", z = " << row.spec.z << "\n\n";
    out << "| Function | Approximation | Relative error |\n";
    out << "|---|---|---|\n";
    out << "| F(r, alpha, z) | " << format_complex(row.f_value) << " | |\n";
    out << "| R(r, alpha, z) | " << format_complex(row.r_value) << " | " << format_error(row.rel_error) << " |\n";
  }
}

void write_table_csv(const std::vector<TableRow>& rows, const Precisions& prec, std::ostream& out) {
  out << "# hypasym " << kVersion << " oracle=" << precision_name(prec.oracle) << " asym=" << precision_name(prec.asym)
      << "\n";
  out << "id,r,alpha,z,re_F,im_F,re_R,im_R,rel_error\n";
  for (const TableRow& row : rows) {
    out << row.spec.id << "," << row.spec.r << "," << row.spec.alpha << "," << row.spec.z << ","
        << format_sci(row.f_value.real()) << "," << format_sci(row.f_value.imag()) << ","
        << format_sci(row.r_value.real()) << "," << format_sci(row.r_value.imag()) << ","
        << format_error(row.rel_error) << "\n";
  }
}

void write_table_json(const std::vector<TableRow>& rows, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["tables"] = nlohmann::ordered_json::array();
  for (const TableRow& row : rows) {
    nlohmann::ordered_json t;
    t["id"] = row.spec.id;
    t["r"] = row.spec.r;
    t["alpha"] = row.spec.alpha;
    t["z"] = row.spec.z;
    t["F"] = format_complex_compact(row.f_value);
    t["R"] = format_complex_compact(row.r_value);
    t["rel_error"] = format_error(row.rel_error);
    doc["tables"].push_back(t);
  }
  out << doc.dump(2) << "\n";
}

int cmd_table(const TableOptions& o, std::ostream& out) {
  Precisions prec = precisions_from_env();
  std::vector<TableSpec> chosen;
  if (o.id == "all") {
    chosen = table_specs();
  } else {
    for (const TableSpec& s : table_specs()) {
      if (std::to_string(s.id) == o.id) chosen.push_back(s);
    }
    if (chosen.empty()) throw Error(ErrorKind::Domain, "table id must be 1..5 or all, got '" + o.id + "'");
  }
  std::vector<TableRow> rows;
  for (const TableSpec& s : chosen) rows.push_back(compute_table_row(s, prec.oracle, prec.asym));
  if (o.format == "csv") {
    write_table_csv(rows, prec, out);
  } else if (o.format == "json") {
    write_table_json(rows, out);
  } else {
    write_table_md(rows, prec, out);
  }
  return 0;
}

struct SweepRow {
  std::string r, alpha, z;
  EvalPoint point;
  std::string branch;
  std::complex<double> f_value, r_value;
  double rel_error = 0.0;
  double est_remainder = 0.0;
  std::string error;
};

void compute_sweep_row(SweepRow& row, const SweepOptions& o, const Config& cfg, Precision oracle_precision) {
  try {
    row.point = EvalPoint::parse(row.r, row.alpha, row.z);
    oracle::OracleOptions opts;
    opts.precision = oracle_precision;
    ComplexValue f = oracle::eval_f(row.point, opts).value;
    MethodResult m = run_method(o.method, row.point, o.order, cfg, oracle_precision);
    row.branch = m.branch;
    row.f_value = as_std(f);
    row.r_value = as_std(m.value);
    row.rel_error = relative_error(m.value.value, f.value);
    row.est_remainder = m.est_remainder;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c == '\n' ? ' ' : c;
  }
  return q + "\"";
}

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  Precisions prec = precisions_from_env();
  if (o.method == "oracle") throw Error(ErrorKind::Domain, "sweep compares a method against the oracle; pick another");
  std::vector<std::string> rs = split_list(o.r_list), as = split_list(o.alpha_list), zs = split_list(o.z_list);
  const double cells = static_cast<double>(rs.size()) * static_cast<double>(as.size()) * static_cast<double>(zs.size());
  if (cells > 1e6) throw Error(ErrorKind::Domain, "sweep grid has more than 1e6 cells");
  Config cfg;
  cfg.delta = o.delta;
  cfg.precision = prec.asym;

  std::vector<SweepRow> rows;
  for (const auto& r : rs) {
    for (const auto& a : as) {
      for (const auto& z : zs) rows.push_back(SweepRow{r, a, z, {}, {}, {}, {}, 0.0, 0.0, {}});
    }
  }
  unsigned n_threads = o.threads != 0 ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(std::max<std::size_t>(rows.size(), 1)));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) compute_sweep_row(rows[i], o, cfg, prec.oracle);
      });
    }
  }

  std::ofstream file;
  std::ostream* csv = &out;
  if (!o.out_path.empty()) {
    file.open(o.out_path);
    if (!file) throw std::runtime_error("cannot open " + o.out_path);
    csv = &file;
  }
  *csv << "# hypasym " << kVersion << " sweep method=" << o.method << " order=" << o.order << "\n";
  *csv << "r,alpha,z,branch,re_F,im_F,re_R,im_R,rel_error,est_remainder,error\n";
  int failures = 0;
  for (const SweepRow& row : rows) {
    *csv << row.r << "," << row.alpha << "," << row.z << ",";
    if (row.error.empty()) {
      *csv << row.branch << "," << format_sci(row.f_value.real()) << "," << format_sci(row.f_value.imag()) << ","
           << format_sci(row.r_value.real()) << "," << format_sci(row.r_value.imag()) << ","
           << format_sci(row.rel_error) << "," << format_sci(row.est_remainder) << ",\n";
    } else {
      ++failures;
      *csv << ",,,,,,," << csv_quote(row.error) << "\n";
    }
  }

  // r ladders: one decay exponent per (alpha, z) with at least three good rows.
  std::map<std::pair<std::string, std::string>, std::pair<std::vector<double>, std::vector<double>>> ladders;
  std::vector<std::pair<std::string, std::string>> ladder_order;
  for (const SweepRow& row : rows) {
    if (!row.error.empty() || !(row.rel_error > 0.0)) continue;
    auto key = std::make_pair(row.alpha, row.z);
    if (!ladders.count(key)) ladder_order.push_back(key);
    double scale = to_double(row.point.alpha > 0.0 ? row.point.t_spec() : row.point.r);
    ladders[key].first.push_back(scale);
    ladders[key].second.push_back(row.rel_error);
  }
  bool header_written = false;
  for (const auto& key : ladder_order) {
    const auto& [scale, errors] = ladders[key];
    if (scale.size() < 3) continue;
    try {
      double slope = decay_fit(scale, errors);
      if (!header_written) {
        *csv << "# decay fit of log(rel_error) against log(alpha r)\n# alpha,z,points,exponent\n";
        header_written = true;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4f", slope);
      *csv << "# " << key.first << "," << key.second << "," << scale.size() << "," << buf << "\n";
    } catch (const Error&) {
      // repeated r values leave nothing to fit
    }
  }

  if (!o.plot_path.empty()) {
    std::ofstream plot(o.plot_path);
    if (!plot) throw std::runtime_error("cannot open " + o.plot_path);
    plot << "# r alpha z rel_error est_remainder\n";
    for (const SweepRow& row : rows) {
      if (!row.error.empty()) continue;
      plot << row.r << " " << row.alpha << " " << row.z << " " << format_sci(row.rel_error) << " "
           << format_sci(row.est_remainder) << "\n";
    }
  }
  if (failures > 0) {
    err << "sweep: " << failures << " of " << rows.size() << " rows failed\n";
    return 1;
  }
  return 0;
}

std::string short_num(const DoubleDouble& x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", to_double(x));
  return buf;
}

std::string sci15(const DoubleDouble& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15e", to_double(x));
  return buf;
}

int cmd_coeffs(const CoeffOptions& o, std::ostream& out) {
  if (o.order < 0) throw Error(ErrorKind::Domain, "coeffs order must be >= 0");
  if (o.branch == "lg") {
    if (o.samples < 2) throw Error(ErrorKind::Domain, "coeffs needs at least 2 samples");
    const DoubleDouble alpha = DoubleDouble::parse(o.point.alpha);
    const DoubleDouble z_max = DoubleDouble(1.0) - DoubleDouble(o.delta);
    std::vector<DoubleDouble> grid;
    for (int k = 0; k < o.samples; ++k) grid.push_back(z_max * DoubleDouble(k) / DoubleDouble(o.samples - 1));
    out << "# hypasym " << kVersion << " coeffs lg A_" << o.order << " alpha=" << o.point.alpha << "\n";
    std::vector<DoubleDouble> values;
    if (o.order == 0) {
      values.assign(grid.size(), DoubleDouble(1.0));
      out << "# A_0 = 1 identically; precision double-double\n";
    } else {
      lg::LgCoefficients c = lg::LgCoefficients::build(alpha, o.order, z_max);
      values = c.sample(o.order, grid);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.1e", c.tail_ratio(o.order));
      out << "# grid: " << c.nodes() << " Chebyshev nodes on [0, " << short_num(z_max)
          << "]; tail ratio " << buf << "; precision double-double\n";
    }
    out << "z,A\n";
    for (std::size_t i = 0; i < grid.size(); ++i) out << short_num(grid[i]) << "," << sci15(values[i]) << "\n";
    return 0;
  }
  if (o.branch == "temme") {
    std::string z = o.point.z.empty() ? "0.9999" : o.point.z;
    EvalPoint p = EvalPoint::parse(o.point.r, o.point.alpha, z);
    temme::TemmeContext ctx = temme::TemmeContext::make(p);
    std::vector<DoubleDouble> ft;
    out << "# hypasym " << kVersion << " coeffs temme ftilde_0..ftilde_" << o.order << " r=" << o.point.r
        << " alpha=" << o.point.alpha << " z=" << z << "\n";
    if (o.jet == "fd") {
      const int degree = 2 * o.order;
      const int half_width = o.order + 2;
      DoubleDouble step = DoubleDouble::parse(o.step);
      ft = temme::ftilde_from_jet(temme::f_jet_fd(ctx, degree, step, half_width), ctx.alpha, o.order + 1);
      out << "# jet: finite differences, step " << o.step << ", " << 2 * half_width + 1
          << " samples; precision double-double\n";
    } else if (o.jet == "series") {
      ft = temme::ftilde_ladder(ctx, o.order + 1);
      out << "# jet: truncated power series of degree " << 2 * o.order << "; precision double-double\n";
    } else {
      throw Error(ErrorKind::Domain, "jet must be series or fd");
    }
    out << "k,ftilde\n";
    for (std::size_t k = 0; k < ft.size(); ++k) out << k << "," << sci15(ft[k]) << "\n";
    return 0;
  }
  throw Error(ErrorKind::Domain, "coeffs branch must be lg or temme");
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Domain:
    case ErrorKind::Regime:
    case ErrorKind::Pole:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

const std::vector<TableSpec>& table_specs() {
  static const std::vector<TableSpec> specs = {
      {1, "100", "0.1", "0.99"},  {2, "100", "0.1", "0.9999"},  {3, "100", "0.1", "0.00001"},
      {4, "100", "0.02", "0.99"}, {5, "100", "0.02", "0.9999"},
  };
  return specs;
}

TableRow compute_table_row(const TableSpec& spec, Precision oracle_precision, Precision asym_precision) {
  EvalPoint p = EvalPoint::parse(spec.r, spec.alpha, spec.z);
  oracle::OracleOptions opts;
  opts.precision = oracle_precision;
  ComplexValue f = oracle::eval_f(p, opts).value;
  ComplexValue r = main_term(p, asym_precision).value;
  return TableRow{spec, as_std(f), as_std(r), relative_error(r.value, f.value)};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Asymptotic evaluation of 2F1(1/4+ir(1-alpha), 3/4+ir(1-alpha); 1+2ir; z)", "hypasym"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("hypasym ") + kVersion);

  const std::vector<std::string> methods = {"oracle", "asym", "lg", "saddle", "temme", "main"};

  EvalOptions eval_o;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate F at one point");
  eval->add_option("--r", eval_o.point.r, "r > 0")->required();
  eval->add_option("--alpha", eval_o.point.alpha, "0 <= alpha < 1")->required();
  eval->add_option("--z", eval_o.point.z, "0 <= z < 1")->required();
  eval->add_option("--order", eval_o.order, "number of expansion terms kept")->capture_default_str();
  eval->add_option("--method", eval_o.method)->check(CLI::IsMember(methods))->capture_default_str();
  eval->add_option("--gamma", eval_o.gamma, "gamma ratios: asymptotic or exact")
      ->check(CLI::IsMember({"asymptotic", "exact"}))
      ->capture_default_str();
  eval->add_option("--delta", eval_o.delta, "Temme region is z > 1 - delta")->capture_default_str();
  eval->add_flag("--details", eval_o.details, "also print branch, order and remainder estimate");

  TableOptions table_o;
  CLI::App* table = app.add_subcommand("table", "Reproduce the reference tables");
  table->add_option("--id", table_o.id, "1..5 or all")->capture_default_str();
  table->add_option("--format", table_o.format)->check(CLI::IsMember({"md", "csv", "json"}))->capture_default_str();

  SweepOptions sweep_o;
  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate a grid against the oracle and write CSV");
  sweep->add_option("--r", sweep_o.r_list, "comma-separated r values")->required();
  sweep->add_option("--alpha", sweep_o.alpha_list, "comma-separated alpha values")->required();
  sweep->add_option("--z", sweep_o.z_list, "comma-separated z values")->required();
  sweep->add_option("--order", sweep_o.order)->capture_default_str();
  sweep->add_option("--method", sweep_o.method)->check(CLI::IsMember(methods))->capture_default_str();
  sweep->add_option("--out", sweep_o.out_path, "CSV file (default stdout)");
  sweep->add_option("--plot", sweep_o.plot_path, "gnuplot data file");
  sweep->add_option("--threads", sweep_o.threads, "worker threads (0 = hardware)");
  sweep->add_option("--delta", sweep_o.delta)->capture_default_str();

  CoeffOptions coeff_o;
  CLI::App* coeffs = app.add_subcommand("coeffs", "Export expansion coefficients");
  coeffs->add_option("--branch", coeff_o.branch)->check(CLI::IsMember({"lg", "temme"}))->required();
  coeffs->add_option("--order", coeff_o.order, "A_j index (lg) or last ftilde index (temme)")->capture_default_str();
  coeffs->add_option("--r", coeff_o.point.r)->capture_default_str();
  coeffs->add_option("--alpha", coeff_o.point.alpha)->capture_default_str();
  coeffs->add_option("--z", coeff_o.point.z, "temme point (default 0.9999)");
  coeffs->add_option("--samples", coeff_o.samples, "lg grid size")->capture_default_str();
  coeffs->add_option("--jet", coeff_o.jet, "temme Taylor jet: series or fd")
      ->check(CLI::IsMember({"series", "fd"}))
      ->capture_default_str();
  coeffs->add_option("--step", coeff_o.step, "fd step")->capture_default_str();
  coeffs->add_option("--delta", coeff_o.delta)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) return cmd_eval(eval_o, out);
    if (table->parsed()) return cmd_table(table_o, out);
    if (sweep->parsed()) return cmd_sweep(sweep_o, out, err);
    if (coeffs->parsed()) return cmd_coeffs(coeff_o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace hypasym::cli
