// errors.hpp — exception taxonomy shared across the library. Each type maps
// to one CLI exit code (see tools/).

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mcpt {

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operator failed the self-adjointness gate at construction.
struct HermiticityError : std::runtime_error {
    HermiticityError(std::size_t row, std::size_t col, double deviation, double tol)
        : std::runtime_error("hermiticity violation at entry (" + std::to_string(row) + "," +
                             std::to_string(col) + "): |M_ij - conj(M_ji)| = " +
                             std::to_string(deviation) + " exceeds tol " + std::to_string(tol)),
          row(row),
          col(col),
          deviation(deviation),
          tol(tol) {}
    std::size_t row, col;
    double deviation, tol;
};

// The selected level has kernel multiplicity > 1; the construction assumes a
// non-degenerate eigenstate.
struct DegenerateLevel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cohomology component of a recurrence right-hand side failed to vanish.
struct ObstructionFailure : std::runtime_error {
    ObstructionFailure(int order, double measured, double tol)
        : std::runtime_error("obstruction at order " + std::to_string(order) +
                             ": measured " + std::to_string(measured) + " exceeds tol " +
                             std::to_string(tol)),
          order(order),
          measured(measured),
          tol(tol) {}
    int order;
    double measured, tol;
};

// Eigenvalue continuation lost the tracked state (overlap below threshold).
struct TrackingFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mcpt
