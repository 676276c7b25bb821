#pragma once

#include <stdexcept>
#include <string>

namespace hardykit {

// Additive tolerance used when certifying inequalities in double arithmetic.
inline constexpr double kEpsNum = 1e-9;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No admissible curve/path exists for a query (e.g. budget below distance).
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hardykit
