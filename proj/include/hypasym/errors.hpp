#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypasym {

enum class ErrorKind {
  Domain,        // argument outside the mathematical domain
  Regime,        // valid point, but the requested branch does not apply there
  Pole,          // gamma pole
  Convergence,   // series or iteration did not converge within its cap
  Conditioning,  // cancellation left too few significant digits
  Disagreement,  // independent oracle methods differ beyond tolerance
  Quadrature,    // quadrature error estimate above tolerance
  Bracketing,    // root bracket could not be established
  GridTooCoarse, // coefficient table failed its resolution check
  InsufficientData,
};

std::string_view to_string(ErrorKind kind);

// Message format is "<kind>: <detail>" so callers can print it as a single
// machine-parsable line.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Regime: return "regime";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Conditioning: return "conditioning";
    case ErrorKind::Disagreement: return "disagreement";
    case ErrorKind::Quadrature: return "quadrature";
    case ErrorKind::Bracketing: return "bracketing";
    case ErrorKind::GridTooCoarse: return "grid-too-coarse";
    case ErrorKind::InsufficientData: return "insufficient-data";
  }
  return "unknown";
}

}  // namespace hypasym
