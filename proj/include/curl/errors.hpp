#pragma once

#include <stdexcept>
#include <string>

namespace curl {

/// Mismatched array shapes between operands.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A scalar or structural parameter outside its admissible range.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An input value outside the mathematical domain of the operation
/// (e.g. a reference policy with a zero where positive mass lands).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Instance too large for an exhaustive-search oracle.
struct SizeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Config-file rejection, carrying the offending line (0 = whole file).
struct ConfigError : std::runtime_error {
    int line;
    ConfigError(int line_no, const std::string& message)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + message
                                         : message),
          line(line_no) {}
};

} // namespace curl
