#pragma once

#include <stdexcept>
#include <string>

namespace codiag {

/// Bad run configuration (unknown keys, malformed specs, out-of-range knobs).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Solver or quadrature non-convergence, missing brackets, nonterminating walks.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested quantity is below what the sample/path budget can resolve.
struct StatFloorError : std::runtime_error {
    explicit StatFloorError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace codiag
