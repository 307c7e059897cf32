#pragma once

#include <stdexcept>
#include <string>

namespace graphtori {

/// Lattice generators that do not span a positively oriented cell.
struct InvalidLatticeError : std::runtime_error {
    explicit InvalidLatticeError(const std::string& what) : std::runtime_error(what) {}
};

/// Caller-supplied parameter outside its accepted range.
struct ParameterError : std::invalid_argument {
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// A level set was requested at a height where the sampled gradient
/// drops below the regularity threshold.
struct IrregularLevelError : std::runtime_error {
    explicit IrregularLevelError(const std::string& what) : std::runtime_error(what) {}
};

/// Two discrete routes to the same quantity disagree beyond tolerance,
/// usually a sign the grid is too coarse for the field.
struct DiscretizationError : std::runtime_error {
    explicit DiscretizationError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative numeric procedure failed to reach its certificate.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or out-of-range configuration input.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace graphtori
