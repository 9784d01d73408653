// Number formatting shared by the CLI commands.
#pragma once

#include <complex>
#include <string>

namespace hypasym::cli {

inline constexpr const char* kVersion = "0.1.0";

// 10 significant digits, "<re> + <im>i" / "<re> - <im>i".
std::string format_complex(std::complex<double> v);
// Same digits without spaces, e.g. "-2.595771772-1.792471289i".
std::string format_complex_compact(std::complex<double> v);
// Fixed with 9 decimals from 1e-4 up, otherwise 10 significant digits in
// e-notation with an unpadded exponent ("7.576766037e-9").
std::string format_error(double e);
// Lowercase e-notation with 10 significant digits, for CSV and plot data.
std::string format_sci(double x);

}  // namespace hypasym::cli
