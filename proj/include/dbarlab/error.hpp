#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dbarlab {

/// Thrown when an input violates the regime an operation is defined on.
/// The message names the violated inequality.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical procedure cannot deliver its contract
/// (quadrature not resolved, Newton stalled, certificate mismatch).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string format_value(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace detail

/// Rejects with "requires <constraint> (got <name> = <value>)".
inline void require(bool ok, std::string_view constraint, std::string_view name, double value) {
  if (!ok) {
    throw InvalidParameter("requires " + std::string(constraint) + " (got " + std::string(name) +
                           " = " + detail::format_value(value) + ")");
  }
}

inline void require(bool ok, std::string_view constraint) {
  if (!ok) throw InvalidParameter("requires " + std::string(constraint));
}

}  // namespace dbarlab
