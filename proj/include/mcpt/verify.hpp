// verify.hpp — randomized invariant sweeps over the graded-algebra layer:
// bracket symmetry and Jacobi, differential nilpotency and the Leibniz rule,
// the homotopy anticommutator identity, Maurer-Cartan residuals, gauge
// stability, and projector idempotency. Residuals are reported relative to
// the input scale; a row passes when it stays under its tolerance.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcpt/hermitian.hpp"

namespace mcpt {

struct InvariantRow {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct InvariantReport {
    std::vector<InvariantRow> rows;
    bool pass = true;
};

// Runs the full suite against the given operator with `trials` random draws
// per invariant, built from mt19937_64(seed).
InvariantReport run_invariant_suite(const HermitianOperator& h, std::uint64_t seed, int trials);

}  // namespace mcpt
