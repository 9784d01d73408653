#include <doctest.h>

#include "hypasym/errors.hpp"
#include "hypasym/lg_branch.hpp"
#include "hypasym/numerics.hpp"
#include "hypasym/oracle.hpp"
#include "hypasym/phase_amplitude.hpp"
#include "hypasym/saddle_branch.hpp"
#include "support.hpp"

using namespace hypasym;
using testing::rel;

namespace {

using DD = DoubleDouble;

// Real part of f on both sides of y = 1 (logs of absolute values).
DD f_real(const DD& a, const DD& y, const DD& z) {
  const DD one(1.0);
  return (one - a) * log(abs(y)) + (one + a) * log(abs(one - y)) - (one - a) * log(abs(one - z * y));
}

DD f_prime_rational(const DD& a, const DD& y, const DD& z) {
  const DD one(1.0);
  return (one - a) / y - (one + a) / (one - y) + (one - a) * z / (one - z * y);
}

// Root of f' in (lo, hi) by bisection.
DD bisect_root(const DD& a, const DD& z, DD lo, DD hi) {
  DD flo = f_prime_rational(a, lo, z);
  for (int k = 0; k < 200; ++k) {
    DD mid = (lo + hi) * 0.5;
    DD fm = f_prime_rational(a, mid, z);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) * 0.5;
}

EvalPoint point(double r, const char* alpha, const char* z) {
  return EvalPoint::make(DD(r), DD::parse(alpha), DD::parse(z));
}

}  // namespace

TEST_CASE("saddle points") {
  SUBCASE("coalescence at alpha = 0, z = 1") {
    auto [lo, hi] = saddle::saddle_points(DD(0.0), DD(1.0));
    CHECK(to_double(lo) == 1.0);
    CHECK(to_double(hi) == 1.0);
  }
  SUBCASE("(0.1, 0.99) against bisection") {
    const DD a(0.1), z(0.99);
    auto [lo, hi] = saddle::saddle_points(a, z);
    CHECK(to_double(lo) == doctest::Approx(0.7887).epsilon(1e-4));
    CHECK(to_double(hi) == doctest::Approx(1.0479).epsilon(1e-4));
    // y_plus sits beyond the branch point 1/z here
    CHECK(hi > DD(1.0) / z);
    CHECK(testing::absdiff(lo, bisect_root(a, z, DD(1e-3), DD(0.999))) < 1e-25);
    CHECK(testing::absdiff(hi, bisect_root(a, z, DD(1.0) / z + DD(1e-9), DD(10.0))) < 1e-25);
  }
  SUBCASE("finite-difference residual on a grid") {
    for (double a : {0.0, 0.05, 0.1, 0.4}) {
      for (double z : {0.1, 0.3, 0.6, 0.8, 0.95}) {
        auto [lo, hi] = saddle::saddle_points(DD(a), DD(z));
        for (const DD& y : {lo, hi}) {
          DD h = y * 1e-5;
          DD d = testing::central_diff([&](const DD& t) { return f_real(DD(a), t, DD(z)); }, y, h);
          CHECK(std::fabs(to_double(d)) <= 1e-10);
        }
        CHECK(lo > 0.0);
        CHECK(lo < 1.0);
        CHECK(hi > 1.0);
      }
    }
  }
  SUBCASE("domain") {
    CHECK_THROWS_AS(saddle::saddle_points(DD(0.1), DD(0.0)), Error);
  }
}

TEST_CASE("phase_f") {
  CHECK(testing::absdiff(saddle::phase_f(DD(0.0), DD(0.5), DD(0.0)), log(DD(2.0)) * -2.0) < 1e-31);
  CHECK_THROWS_AS(saddle::phase_f(DD(0.1), DD(1.0), DD(0.5)), Error);
  CHECK_THROWS_AS(saddle::phase_f(DD(0.1), DD(0.0), DD(0.5)), Error);
}

TEST_CASE("closed forms at y_minus") {
  for (double a : {0.0, 0.02, 0.1, 0.5}) {
    for (double z : {0.2, 0.5, 0.8, 0.9}) {
      const DD alpha(a), zz(z);
      saddle::SaddleData d = saddle::saddle_closed_forms(alpha, zz);
      CHECK(testing::absdiff(d.f_at, saddle::phase_f(alpha, d.y_minus, zz)) < 1e-25);
      CHECK(rel(d.amp_factor, saddle::amplitude_g(d.y_minus, zz)) < 1e-24);
      CHECK(d.f_second < 0.0);
      DD fd2 = testing::second_diff([&](const DD& y) { return saddle::phase_f(alpha, y, zz); }, d.y_minus,
                                    d.y_minus * 1e-4);
      CHECK(rel(d.f_second, fd2) < 1e-7);
    }
  }
}

TEST_CASE("closed forms at alpha = 0") {
  const DD z(0.5), one(1.0);
  DD s = sqrt(one - z);
  saddle::SaddleData d = saddle::saddle_closed_forms(DD(0.0), z);
  CHECK(rel(d.y_minus, (one - s) / z) < 1e-30);
  CHECK(rel(d.y_plus, (one + s) / z) < 1e-30);
  CHECK(testing::absdiff(d.f_at, DD(-2.0) * log(one + s)) < 1e-30);
  CHECK(rel(d.f_second, DD(-2.0) * sqr(one + s) / s) < 1e-30);
  CHECK(rel(d.amp_factor, (one + s) / s) < 1e-30);
}

TEST_CASE("interiority") {
  CHECK_THROWS_AS(saddle::saddle_closed_forms(DD(0.0), DD(1.0) - DD(1e-7)), Error);
  try {
    saddle::saddle_closed_forms(DD(0.001), DD(0.9999999));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Regime);
  }
}

TEST_CASE("gamma prefactor") {
  SUBCASE("against the exact gamma ratio") {
    EvalPoint p = point(100, "0.1", "0.5");
    ComplexDD exact = saddle::exact_gamma_ratio(p);
    CHECK(rel(saddle::gamma_prefactor(p, 1).value.value, exact) <= 1e-2);
    CHECK(rel(saddle::gamma_prefactor(p, 3).value.value, exact) <= 1e-5);
  }
  SUBCASE("exact ratio against complex_gamma") {
    EvalPoint p = point(100, "0.1", "0.5");
    const DD r = p.r, a = p.alpha, one(1.0);
    ComplexDD num = complex_gamma(ComplexValue(ComplexDD{one, r * 2.0})).value;
    ComplexDD d1 = complex_gamma(ComplexValue(ComplexDD{DD(0.75), r * (one - a)})).value;
    ComplexDD d2 = complex_gamma(ComplexValue(ComplexDD{DD(0.25), r * (one + a)})).value;
    CHECK(rel(saddle::exact_gamma_ratio(p), num / (d1 * d2)) < 1e-25);
  }
  SUBCASE("alpha = 0 leading phase and modulus") {
    for (double r : {50.0, 100.0, 400.0}) {
      EvalPoint p = EvalPoint::make(DD(r), DD(0.0), DD(0.5));
      ComplexDD exact = saddle::exact_gamma_ratio(p);
      ComplexDD lead = saddle::gamma_prefactor(p, 1).value.value;
      double dphase = std::fabs(to_double(arg(exact / lead)));
      // first omitted phase term is 1/(16 r)
      CHECK(dphase == doctest::Approx(1.0 / (16.0 * r)).epsilon(1e-2));
      double modulus = to_double(sqrt(DD(r) / dd_const::pi));
      CHECK(std::fabs(to_double(abs(exact)) / modulus - 1.0) <= 1.0 / r);
    }
  }
  SUBCASE("domain") {
    CHECK_THROWS_AS(saddle::gamma_prefactor(point(5, "0.1", "0.5"), 1), Error);
  }
}

TEST_CASE("saddle_evaluate") {
  SUBCASE("leading order at z = 0.99 is the main term") {
    EvalPoint p = point(100, "0.1", "0.99");
    ComplexDD v = saddle::saddle_evaluate(p, 1).value.value;
    CHECK(testing::rel_to(v, {2.611802635072261, 0.5170097151049984}) < 1e-15);
  }
  SUBCASE("phase collapse f(y_minus) + gamma phase = 2 l1") {
    for (int k = 0; k < 20; ++k) {
      DD a = DD(0.01) + DD(0.6) * DD(k % 5) / 4.0;
      DD z = DD(0.1) + DD(0.8) * DD(k / 5) / 3.0;
      saddle::SaddleData d = saddle::saddle_closed_forms(a, z);
      CHECK(testing::absdiff(d.f_at + saddle::gamma_phase(a), l1_phase(a, z) * 2.0) < 1e-25);
      // amplitude: gamma modulus * amp * sqrt(2 pi / (r |f''|)) is r independent
      const DD r(100.0), one(1.0);
      DD gamma_mod = sqrt(r / dd_const::pi) * sqrt(sqrt((one + a) / (one - a)));
      DD amp = gamma_mod * d.amp_factor * sqrt(dd_const::pi * 2.0 / (r * abs(d.f_second)));
      CHECK(rel(amp, main_amplitude(a, z)) < 1e-12);
    }
  }
  SUBCASE("agrees with the LG branch at equal order") {
    for (double z : {0.3, 0.5, 0.7, 0.85}) {
      EvalPoint p = EvalPoint::make(DD(100.0), DD::parse("0.1"), DD(z));
      for (int n = 1; n <= 4; ++n) {
        ComplexDD s = saddle::saddle_evaluate(p, n).value.value;
        ComplexDD l = lg::lg_evaluate(p, n).value.value;
        CHECK(rel(s, l) <= 1e-3);
      }
    }
  }
  SUBCASE("orders converge to the oracle") {
    EvalPoint p = point(100, "0.1", "0.5");
    ComplexDD ref = oracle::eval_f(p).value.value;
    Config cfg;
    cfg.precision = Precision::Extended;
    double prev = 1.0;
    for (int n = 1; n <= 6; ++n) {
      double err = rel(saddle::saddle_evaluate(p, n, cfg).value.value, ref);
      CHECK(err < prev / 20.0);
      prev = err;
    }
  }
  SUBCASE("steepest-descent series against the quadrature of the Euler integral") {
    // The first correction c_1 / r must match the quadrature value of the
    // integral divided by its leading saddle term, up to O(r^-2).
    EvalPoint p = point(400, "0.1", "0.5");
    ComplexDD ref = oracle::eval_f(p).value.value;
    Config cfg;
    cfg.precision = Precision::Extended;
    cfg.gamma_mode = GammaMode::Exact;
    double e1 = rel(saddle::saddle_evaluate(p, 1, cfg).value.value, ref);
    double e2 = rel(saddle::saddle_evaluate(p, 2, cfg).value.value, ref);
    CHECK(e2 < e1 / 100.0);
  }
}
