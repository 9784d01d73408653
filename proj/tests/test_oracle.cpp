#include <doctest.h>

#include "hypasym/errors.hpp"
#include "hypasym/oracle.hpp"
#include "support.hpp"

using namespace hypasym;
using testing::rel;

namespace {

struct Frozen {
  double r;
  const char* alpha;
  const char* z;
  const char* re;
  const char* im;
};

// mpmath.hyp2f1 at 40 digits
const Frozen kFrozen[] = {
    {100, "0.1", "0.3", "0.49360326587622921417849", "0.9741816757517169285245276"},
    {100, "0.1", "0.5", "1.186032434657877216852499", "0.02276458836702937147963288"},
    {100, "0.1", "0.7", "-0.9514092279806296331934787", "0.9484814311113028004958771"},
    {100, "0.1", "0.9", "1.7390739922009246007087", "-0.06704309705027410688038333"},
    {100, "0.1", "0.99", "2.611880246921584869626283", "0.5174226366097225156659344"},
    {100, "0.1", "0.9999", "-2.595771771735247945884452", "-1.792471289279542744941618"},
    {400, "0.1", "0.5", "1.182840511435971741661556", "0.08990644316010049213308346"},
    {800, "0.1", "0.5", "1.172640627004885114659884", "0.1791898099692738823814618"},
    {1000, "0.05", "0.9", "-0.4546964638179909569102914", "-1.708959250909934779749672"},
    {200, "0", "0.5", "1.039523964371145857231619", "0.5775832277995989704846907"},
    {100, "0.02", "0.99", "-2.258587649971726568792691", "-2.168919043285838840439313"},
    {100, "0.02", "0.9999", "-3.328488373840633817115626", "5.815264147375995856314816"},
    {100, "0.5", "0.5", "0.78254313351990681892402", "0.8077989882952278032545615"},
    {100, "0.1", "0.999999", "-2.528319404546413073779422", "-1.899238602348526157130776"},
    {1000, "0.1", "0.9999", "3.095510203749071392415127", "-0.607192153511422729010981"},
    {10, "0.3", "0.8", "-1.261157618712923773796394", "0.5723704253689395798202092"},
    {1000, "0", "0.999", "-0.8468779012622308383067718", "-5.559189474577693124740496"},
};

ComplexDD frozen_value(const Frozen& f) { return {DoubleDouble::parse(f.re), DoubleDouble::parse(f.im)}; }

EvalPoint point(double r, const char* alpha, const char* z) {
  return EvalPoint::make(DoubleDouble(r), DoubleDouble::parse(alpha), DoubleDouble::parse(z));
}

}  // namespace

TEST_CASE("eval_f against frozen mpmath values") {
  for (const Frozen& f : kFrozen) {
    CAPTURE(f.r);
    CAPTURE(f.alpha);
    CAPTURE(f.z);
    oracle::OracleResult res = oracle::eval_f(point(f.r, f.alpha, f.z));
    CHECK(rel(res.value.value, frozen_value(f)) < 1e-20);
    CHECK(res.est_accuracy <= 1e-9);
  }
}

TEST_CASE("eval_f reference points to ten digits") {
  // values at r = 100 quoted to ten significant digits
  CHECK(rel(oracle::eval_f(point(100, "0.1", "0.99")).value.value, {2.611880247, 0.5174226366}) < 3e-10);
  CHECK(rel(oracle::eval_f(point(100, "0.02", "0.9999")).value.value, {-3.328488374, 5.815264147}) < 3e-10);
  // At z = 1e-5 the imaginary part is 4.050054037e-4 (mpmath), one decimal
  // place below the frequently quoted 0.004050009913.
  ComplexDD small = oracle::eval_f(point(100, "0.1", "0.00001")).value.value;
  CHECK(rel(small, ComplexDD{DoubleDouble::parse("1.000002392985825482238954"),
                             DoubleDouble::parse("0.0004050054037053687161385170")}) < 1e-20);
}

TEST_CASE("eval_f at z = 0 is exactly one") {
  for (double r : {1.0, 100.0, 1000.0}) {
    ComplexDD v = oracle::eval_f(point(r, "0.3", "0")).value.value;
    CHECK(to_double(v.re) == 1.0);
    CHECK(to_double(v.im) == 0.0);
  }
}

TEST_CASE("eval_f domain limits") {
  CHECK_THROWS_AS(oracle::eval_f(point(1001, "0.1", "0.5")), Error);
  CHECK_THROWS_AS(oracle::eval_f(point(100, "0.1", "0.9999991")), Error);
  CHECK_NOTHROW(oracle::eval_f(point(100, "0.1", "0.999999")));
  CHECK_THROWS_AS(EvalPoint::make(DoubleDouble(100.0), DoubleDouble(0.1), DoubleDouble(1.0)), Error);
  CHECK_THROWS_AS(EvalPoint::make(DoubleDouble(-1.0), DoubleDouble(0.1), DoubleDouble(0.5)), Error);
  CHECK_THROWS_AS(EvalPoint::make(DoubleDouble(100.0), DoubleDouble(1.0), DoubleDouble(0.5)), Error);
}

TEST_CASE("eval_transformed") {
  SUBCASE("agrees with the series route at z = 0.99") {
    EvalPoint p = point(100, "0.1", "0.99");
    CHECK(rel(oracle::eval_transformed(p).value, oracle::eval_f(p).value.value) < 1e-9);
  }
  SUBCASE("reference point z = 0.9999") {
    ComplexDD v = oracle::eval_transformed(point(100, "0.1", "0.9999")).value;
    CHECK(testing::rel_to(v, {-2.595771772, -1.792471289}) < 3e-10);
  }
  SUBCASE("tends to one as z -> 0") {
    ComplexDD v = oracle::eval_transformed(point(100, "0.1", "1e-10")).value;
    CHECK(rel(v, ComplexDD(1.0)) < 1e-6);
  }
  SUBCASE("quadrature error estimate is reported") {
    oracle::QuadratureResult q = oracle::eval_transformed_detailed(point(100, "0.1", "0.9"));
    CHECK(q.est_error <= 1e-9);
    CHECK(q.panels > 0);
  }
}

TEST_CASE("method agreement for z > 0.5") {
  for (const char* z : {"0.55", "0.8", "0.95", "0.9999"}) {
    for (const char* a : {"0", "0.05", "0.3"}) {
      EvalPoint p = point(150, a, z);
      oracle::OracleResult res = oracle::eval_f(p);
      CHECK(rel(oracle::eval_transformed(p).value, res.value.value) <= 1e-8);
      REQUIRE(res.cross_method.has_value());
      CHECK(res.cross_difference <= 1e-8);
    }
  }
}

TEST_CASE("continuity probe") {
  const double h = 1e-8;
  for (const char* z : {"0.2", "0.6", "0.93"}) {
    EvalPoint p = point(300, "0.1", z);
    EvalPoint q = EvalPoint::make(p.r, p.alpha, p.z + DoubleDouble(h));
    ComplexDD a = oracle::eval_f(p).value.value;
    ComplexDD b = oracle::eval_f(q).value.value;
    double jump = to_double(abs(a - b));
    // |dF/dz| is about r |F| / (1 - z) here
    CHECK(jump <= 10.0 * h * 300.0 * to_double(abs(a)) / (1.0 - to_double(p.z)));
  }
}

TEST_CASE("individual methods report cancellation") {
  // The direct series at large r loses far more than 22 digits near z = 0.5.
  CHECK_THROWS_AS(oracle::by_gauss_series(point(1000, "0", "0.5")), Error);
  oracle::MethodValue ok = oracle::by_gauss_series(point(100, "0.1", "0.3"));
  CHECK(ok.cancellation_digits >= 0.0);
  CHECK(ok.cancellation_digits < 22.0);
}
