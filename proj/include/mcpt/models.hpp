// models.hpp — constructors for concrete (H0, V) pairs: finite-difference
// 1D Schrödinger operators, the truncated oscillator basis with a quartic
// perturbation, dense pairs from problem files, and seeded random pairs.
// Units: hbar = m = omega = 1.

#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "mcpt/hermitian.hpp"

namespace mcpt::models {

struct OperatorPair {
    HermitianOperator h0;
    HermitianOperator v;
};

// Second-order central-difference kinetic term with Dirichlet boundaries on
// [a, b] with n interior points, plus diag(v0); the perturbation is
// diag(v1). Sample arrays are taken at the interior grid points.
OperatorPair fd1d(std::size_t n, double a, double b, std::span<const double> v0,
                  std::span<const double> v1);

// H0 = diag(k + 1/2); V = x^4 in the truncated oscillator basis, built by
// squaring the tridiagonal x-matrix twice. Truncation artifacts live in the
// last few basis rows: use basis >= 10*k for order-k corrections of the
// ground state.
OperatorPair oscillator_quartic(std::size_t basis);

// Problem JSON document (see io.hpp for the schema).
OperatorPair dense_from_file(const std::string& path);

// Reproducible random pair: H0 with a well-separated spectrum (minimum gap
// 0.5) conjugated by a random unitary, V random Hermitian with unit
// spectral norm. Draws from mt19937_64(seed).
OperatorPair random_dense(std::size_t n, std::uint64_t seed);

}  // namespace mcpt::models
