#include "format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace hypasym::cli {

namespace {

std::string printf_string(const char* fmt, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

// "7.576766037e-09" -> "7.576766037e-9"
std::string strip_exponent_padding(const std::string& s) {
  auto e = s.find('e');
  if (e == std::string::npos) return s;
  std::string mant = s.substr(0, e);
  int exp = std::atoi(s.c_str() + e + 1);
  return mant + "e" + std::to_string(exp);
}

std::string sig10(double x) { return strip_exponent_padding(printf_string("%#.10g", x)); }

}  // namespace

std::string format_complex(std::complex<double> v) {
  return sig10(v.real()) + (v.imag() < 0.0 ? " - " : " + ") + sig10(std::fabs(v.imag())) + "i";
}

std::string format_complex_compact(std::complex<double> v) {
  return sig10(v.real()) + (v.imag() < 0.0 ? "-" : "+") + sig10(std::fabs(v.imag())) + "i";
}

std::string format_error(double e) {
  if (e == 0.0 || e >= 1e-4) return printf_string("%.9f", e);
  return strip_exponent_padding(printf_string("%.9e", e));
}

std::string format_sci(double x) { return printf_string("%.9e", x); }

}  // namespace hypasym::cli
