// Small helpers shared by the unit tests. Nothing here calls the code under test.
#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "hypasym/complex.hpp"
#include "hypasym/double_double.hpp"

namespace testing {

using hypasym::ComplexDD;
using hypasym::DoubleDouble;

inline double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

inline double rel_to(const ComplexDD& a, std::complex<double> b) {
  return std::abs(hypasym::to_std(a) - b) / std::abs(b);
}

inline double rel(const ComplexDD& a, const ComplexDD& b) {
  return hypasym::to_double(hypasym::abs(a - b) / hypasym::abs(b));
}

inline double rel(const DoubleDouble& a, const DoubleDouble& b) {
  return hypasym::to_double(hypasym::abs(a - b) / hypasym::abs(b));
}

inline double absdiff(const DoubleDouble& a, const DoubleDouble& b) { return hypasym::to_double(hypasym::abs(a - b)); }

// Five-point central difference in double-double.
inline DoubleDouble central_diff(const std::function<DoubleDouble(const DoubleDouble&)>& f, const DoubleDouble& x,
                                 const DoubleDouble& h) {
  DoubleDouble num = f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h);
  return num / (12.0 * h);
}

inline DoubleDouble second_diff(const std::function<DoubleDouble(const DoubleDouble&)>& f, const DoubleDouble& x,
                                const DoubleDouble& h) {
  DoubleDouble num = -f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h);
  return num / (12.0 * h * h);
}

// Composite Simpson rule in double-double.
inline DoubleDouble simpson(const std::function<DoubleDouble(const DoubleDouble&)>& f, const DoubleDouble& a,
                            const DoubleDouble& b, int panels) {
  DoubleDouble h = (b - a) / DoubleDouble(2.0 * panels);
  DoubleDouble s = f(a) + f(b);
  for (int k = 1; k < 2 * panels; ++k) s += f(a + h * DoubleDouble(k)) * DoubleDouble(k % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Least-squares slope of log(y) against log(x).
inline double log_slope(const double* x, const double* y, int n) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testing
