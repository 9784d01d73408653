#include "hypasym/phase_amplitude.hpp"

namespace hypasym {

MainTerm main_term(const EvalPoint& p, Precision precision) {
  MainTerm m;
  m.phase = l1_phase(p.alpha, p.z);
  m.amplitude = main_amplitude(p.alpha, p.z);
  m.value = ComplexValue(polar(m.amplitude, ldexp(p.r * m.phase, 1)), precision);
  return m;
}

ComplexDD arcosh_main_term(const DoubleDouble& r, const DoubleDouble& x) {
  if (!(x > 2.0)) throw Error(ErrorKind::Domain, "arcosh form needs x > 2");
  DoubleDouble phase = ldexp(r, 1) * (log(x) - acosh(x * 0.5));
  DoubleDouble x2 = x * x;
  DoubleDouble amp = sqrt(sqrt(x2 / (x2 - 4.0)));
  return polar(amp, phase);
}

}  // namespace hypasym
