// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hypasym/evaluator.hpp"
#include "hypasym/lg_branch.hpp"
#include "hypasym/oracle.hpp"
#include "hypasym/phase_amplitude.hpp"
#include "hypasym/saddle_branch.hpp"
#include "hypasym/temme_branch.hpp"

using namespace hypasym;
using DD = DoubleDouble;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double rel(const ComplexDD& a, const ComplexDD& b) { return to_double(abs(a - b) / abs(b)); }
double rel(const DD& a, const DD& b) { return to_double(abs(a - b) / abs(b)); }
double rel(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---- 1: tables ---------------------------------------------------------------

struct Printed {
  std::complex<double> f;
  std::complex<double> r;
  double rel_error;
};

// The five tables as printed, r = 100.
const Printed kPrinted[] = {
    {{2.611880247, 0.5174226366}, {2.611802650, 0.5170096337}, 0.000157843},
    {{-2.595771772, -1.792471289}, {-2.587392554, -1.804512206}, 0.004650302},
    {{1.000002393, 0.004050009913}, {1.000002393, 0.004050054037}, 7.576766037e-9},
    {{-2.258587650, -2.168919043}, {-2.269908138, -2.1575933584}, 0.005113882},
    {{-3.328488374, 5.815264147}, {-3.380721684, 5.770084005}, 0.010307062},
};

constexpr double kNineDigits = 5e-9;
constexpr double kTableBudget = 60.0;

bool same_three_digits(double a, double b) { return fmt("%.2e", a) == fmt("%.2e", b); }

Outcome criterion_tables() {
  std::ostringstream out, err;
  int code = cli::run_cli({"table", "--id", "all", "--format", "csv"}, out, err);
  if (code != 0) return {false, "table command exited with " + std::to_string(code) + ": " + err.str()};
  std::istringstream in(out.str());
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#' || line.rfind("id,", 0) == 0) continue;
    std::vector<double> cols;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cols.push_back(std::stod(cell));
    rows.push_back(cols);
  }
  if (rows.size() != 5) return {false, "expected 5 rows, got " + std::to_string(rows.size())};
  Outcome o;
  for (std::size_t i = 0; i < 5; ++i) {
    const auto& c = rows[i];
    std::complex<double> f{c[4], c[5]}, r{c[6], c[7]};
    const Printed& p = kPrinted[i];
    double ef = rel(f, p.f), er = rel(r, p.r);
    bool ok_f = ef <= kNineDigits, ok_r = er <= kNineDigits, ok_e = same_three_digits(c[8], p.rel_error);
    if (!(ok_f && ok_r && ok_e)) {
      o.pass = false;
      o.detail += " T" + std::to_string(i + 1) + "[";
      if (!ok_f) o.detail += "F " + fmt("%.1e", ef) + " ";
      if (!ok_r) o.detail += "R " + fmt("%.1e", er) + " ";
      if (!ok_e) o.detail += "err " + fmt("%.2e", c[8]) + " vs " + fmt("%.2e", p.rel_error);
      o.detail += "]";
    }
  }
  if (o.pass) o.detail = "5 tables, F and R within 5e-9, errors to 3 digits";
  else o.detail = "mismatches:" + o.detail;
  return o;
}

// ---- 2: phase identities -----------------------------------------------------

constexpr double kGridPhaseTol = 1e-26;
constexpr double kCollapseTol = 1e-25;
constexpr double kPhaseBudget = 5.0;

std::vector<std::pair<DD, DD>> twenty_points(double z_lo, double z_hi) {
  std::vector<std::pair<DD, DD>> pts;
  for (int k = 0; k < 20; ++k) {
    DD a = DD(0.01) + DD(0.6) * DD(k % 5) / 4.0;
    DD z = DD(z_lo) + DD(z_hi - z_lo) * DD(k / 5) / 3.0;
    pts.emplace_back(a, z);
  }
  return pts;
}

Outcome criterion_phase() {
  double grid = 0.0;
  for (int i = 1; i <= 100; ++i) {
    for (int j = 1; j <= 100; ++j) {
      DD a = DD(0.01) + DD(0.98) * DD(i) / 101.0;
      DD z = DD(0.01) + DD(0.98) * DD(j) / 101.0;
      grid = std::max(grid, to_double(abs(temme_phase_F(a, z) - l1_phase(a, z))));
    }
  }
  double saddle_worst = 0.0, lg_worst = 0.0;
  for (auto [a, z] : twenty_points(0.1, 0.9)) {
    saddle::SaddleData d = saddle::saddle_closed_forms(a, z);
    saddle_worst = std::max(saddle_worst, to_double(abs(d.f_at + saddle::gamma_phase(a) - l1_phase(a, z) * 2.0)));
    DD lg_phase = lg::connection_phase(a) + lg::xi(a, z) - log(z) + a * log(DD(1.0) - z);
    lg_worst = std::max(lg_worst, to_double(abs(lg_phase - l1_phase(a, z) * 2.0)));
  }
  Outcome o;
  o.pass = grid <= kGridPhaseTol && saddle_worst <= kCollapseTol && lg_worst <= kCollapseTol;
  o.detail = "F vs l1 " + fmt("%.1e", grid) + ", saddle " + fmt("%.1e", saddle_worst) + ", lg " + fmt("%.1e", lg_worst);
  return o;
}

// ---- 3: amplitude identities -------------------------------------------------

constexpr double kTemmeAmpTol = 1e-20;
constexpr double kSaddleAmpTol = 1e-12;
constexpr double kAmpBudget = 2.0;

double ulps_apart(double a, double b) {
  if (a == b) return 0.0;
  return std::fabs(a - b) / (std::nextafter(std::fabs(b), INFINITY) - std::fabs(b));
}

Outcome criterion_amplitude() {
  double temme_worst = 0.0;
  for (double a : {0.02, 0.05, 0.1, 0.3, 0.5}) {
    for (const char* z : {"0.8", "0.9", "0.99", "0.9999"}) {
      temme::TemmeContext ctx = temme::TemmeContext::make(DD(a), DD::parse(z));
      temme_worst = std::max(temme_worst, rel(temme::amplitude_lhs(ctx), temme::amplitude_rhs(DD(a), ctx.z)));
    }
  }
  double saddle_worst = 0.0, lg_ulps = 0.0;
  const DD r(100.0), one(1.0);
  for (auto [a, z] : twenty_points(0.1, 0.9)) {
    saddle::SaddleData d = saddle::saddle_closed_forms(a, z);
    DD gamma_mod = sqrt(r / dd_const::pi) * sqrt(sqrt((one + a) / (one - a)));
    DD amp = gamma_mod * d.amp_factor * sqrt(dd_const::pi * 2.0 / (r * abs(d.f_second)));
    saddle_worst = std::max(saddle_worst, rel(amp, main_amplitude(a, z)));
    lg::OdeData od = lg::ode_data(a, z);
    DD lg_amp = one / sqrt(sqrt(od.h_val)) / sqrt(z) / sqrt(one - z);
    lg_ulps = std::max(lg_ulps, ulps_apart(to_double(lg_amp), to_double(main_amplitude(a, z))));
  }
  Outcome o;
  o.pass = temme_worst <= kTemmeAmpTol && saddle_worst <= kSaddleAmpTol && lg_ulps <= 1.0;
  o.detail = "temme " + fmt("%.1e", temme_worst) + ", saddle " + fmt("%.1e", saddle_worst) + ", lg " +
             fmt("%.0f", lg_ulps) + " ulp";
  return o;
}

// ---- 4: defining-equation residuals ------------------------------------------

constexpr double kSaddleResidualTol = 1e-10;
constexpr double kTemmeResidualTol = 1e-12;
constexpr double kXiTol = 1e-8;
constexpr double kResidualBudget = 5.0;

DD central_diff(const std::function<DD(const DD&)>& f, const DD& x, const DD& h) {
  return (f(x - h * 2.0) - f(x - h) * 8.0 + f(x + h) * 8.0 - f(x + h * 2.0)) / (h * 12.0);
}

// f with logs of absolute values, so the difference stencil may straddle y = 1 or 1/z.
DD f_real(const DD& a, const DD& y, const DD& z) {
  const DD one(1.0);
  return (one - a) * log(abs(y)) + (one + a) * log(abs(one - y)) - (one - a) * log(abs(one - z * y));
}

Outcome criterion_residuals() {
  double saddle_worst = 0.0;
  for (double a : {0.0, 0.02, 0.05, 0.1, 0.3, 0.6}) {
    for (double z : {0.05, 0.2, 0.4, 0.6, 0.8, 0.9, 0.95}) {
      auto [lo, hi] = saddle::saddle_points(DD(a), DD(z));
      for (const DD& y : {lo, hi}) {
        DD d = central_diff([&](const DD& t) { return f_real(DD(a), t, DD(z)); }, y, y * 1e-5);
        saddle_worst = std::max(saddle_worst, std::fabs(to_double(d)));
      }
    }
  }
  double temme_worst = 0.0;
  for (double a : {0.02, 0.05, 0.1, 0.3, 0.5}) {
    for (const char* z : {"0.8", "0.9", "0.99", "0.999", "0.9999"}) {
      DD zz = DD::parse(z);
      DD x0 = temme::temme_saddle(DD(a), zz);
      DD y = temme::y_of_z(zz);
      DD q = temme::q_fn(x0, y);
      temme_worst = std::max(temme_worst, rel(DD(a) * temme::q_prime(x0, y), q));
    }
  }
  double xi_worst = 0.0;
  for (double a : {0.0, 0.05, 0.1}) {
    for (int k = 1; k <= 50; ++k) {
      DD z = DD(0.02) + DD(0.96) * DD(k) / 51.0;
      DD d = central_diff([&](const DD& x) { return lg::xi(DD(a), x); }, z, DD(1e-6));
      xi_worst = std::max(xi_worst, rel(d, sqrt(lg::ode_data(DD(a), z).h_val)));
    }
  }
  Outcome o;
  o.pass = saddle_worst <= kSaddleResidualTol && temme_worst <= kTemmeResidualTol && xi_worst <= kXiTol;
  o.detail = "|f'| " + fmt("%.1e", saddle_worst) + ", q " + fmt("%.1e", temme_worst) + ", xi' " + fmt("%.1e", xi_worst);
  return o;
}

// ---- 5: remainder decay ------------------------------------------------------

constexpr double kFirstExponent = -1.5;
constexpr double kExponentGap = 0.7;
constexpr double kDecayBudget = 120.0;

Outcome criterion_decay() {
  std::vector<EvalPoint> pts;
  for (double r : {100.0, 200.0, 400.0, 800.0}) pts.push_back(EvalPoint::make(DD(r), DD::parse("0.1"), DD(0.5)));
  // one and two correction terms beyond the main term
  double e1 = decay_fit(pts, 2);
  double e2 = decay_fit(pts, 3);
  Outcome o;
  o.pass = e1 <= kFirstExponent && e2 <= e1 - kExponentGap;
  o.detail = "exponents " + fmt("%.3f", e1) + " and " + fmt("%.3f", e2);
  return o;
}

// ---- 6: overlap --------------------------------------------------------------

constexpr double kOverlapFactor = 10.0;
constexpr double kOverlapBudget = 10.0;

Outcome criterion_overlap() {
  Outcome o;
  double worst = 0.0;
  for (const char* z : {"0.90", "0.93", "0.96"}) {
    EvalPoint p = EvalPoint::make(DD(100.0), DD::parse("0.1"), DD::parse(z));
    ExpansionResult s = evaluate(p, 1, Branch::Saddle);
    ExpansionResult t = evaluate(p, 1, Branch::Temme);
    double gap = to_double(abs(s.value.value - t.value.value));
    double ratio = gap / std::max(s.est_remainder, t.est_remainder);
    worst = std::max(worst, ratio);
    if (ratio > kOverlapFactor) o.pass = false;
  }
  o.detail = "worst gap / remainder " + fmt("%.1e", worst);
  return o;
}

// ---- 7: oracle independence --------------------------------------------------

constexpr double kOracleTol = 1e-8;
constexpr double kOracleBudget = 60.0;

Outcome criterion_oracle() {
  const double rs[] = {20.0, 100.0, 250.0, 500.0, 1000.0};
  const char* alphas[] = {"0", "0.02", "0.1", "0.25", "0.5", "0.8"};
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    DD z = DD(0.5) + DD(0.4999) * DD(k + 1) / 50.0;
    EvalPoint p = EvalPoint::make(DD(rs[k % 5]), DD::parse(alphas[k % 6]), z);
    worst = std::max(worst, rel(oracle::eval_transformed(p).value, oracle::eval_f(p).value.value));
  }
  return {worst <= kOracleTol, "50 points, worst " + fmt("%.1e", worst)};
}

// ---- 8: alpha = 0 reduction --------------------------------------------------

constexpr double kArcoshTol = 1e-12;
constexpr double kArcoshBudget = 1.0;

Outcome criterion_arcosh() {
  double worst = 0.0;
  for (double r : {10.0, 100.0, 1000.0}) {
    for (int k = 1; k <= 200; ++k) {
      DD x = DD(2.0) + DD(98.0) * DD(k) / 200.0;
      DD z = DD(4.0) / (x * x);
      ComplexDD composed = main_term(EvalPoint::make(DD(r), DD(0.0), z)).value.value;
      worst = std::max(worst, rel(composed, arcosh_main_term(DD(r), x)));
    }
  }
  return {worst <= kArcoshTol, "600 points, worst " + fmt("%.1e", worst)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  Outcome (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "table reproduction", kTableBudget, criterion_tables},
      {2, "phase identities", kPhaseBudget, criterion_phase},
      {3, "amplitude identities", kAmpBudget, criterion_amplitude},
      {4, "defining-equation residuals", kResidualBudget, criterion_residuals},
      {5, "remainder decay", kDecayBudget, criterion_decay},
      {6, "saddle/Temme overlap", kOverlapBudget, criterion_overlap},
      {7, "oracle independence", kOracleBudget, criterion_oracle},
      {8, "alpha = 0 reduction", kArcoshBudget, criterion_arcosh},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      o.pass = false;
      o.detail += ", over budget";
    }
    if (!o.pass) ++failures;
    std::printf("%s %d %s: %s (%.2f s of %.0f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.budget_seconds);
  }
  return failures == 0 ? 0 : 1;
}
