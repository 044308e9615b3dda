// support.hpp — shared helpers for the unit and acceptance suites.

#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "mcpt/models.hpp"
#include "mcpt/perturbation.hpp"
#include "mcpt/random.hpp"

namespace testsup {

using namespace mcpt;

// The exactly solvable pair H0 = diag(0, 2), V = offdiag(1, 1); the tracked
// lower eigenvalue is 1 - sqrt(1 + lambda^2).
inline models::OperatorPair two_level_pair() {
    CMat h0(2, 2), v(2, 2);
    h0(1, 1) = 2.0;
    v(0, 1) = 1.0;
    v(1, 0) = 1.0;
    return {HermitianOperator(std::move(h0)), HermitianOperator(std::move(v))};
}

inline PerturbationProblem two_level_problem() {
    auto pair = two_level_pair();
    return PerturbationProblem::build(pair.h0, pair.v, EigenSelector::by_index(0));
}

// Random problem with spaced spectrum (min gap 0.5, unit-norm V), with the
// tracked level drawn from the same stream.
inline PerturbationProblem random_problem(std::size_t n, std::uint64_t seed) {
    auto pair = models::random_dense(n, seed);
    const int index = int(seed % n);
    return PerturbationProblem::build(pair.h0, pair.v, EigenSelector::by_index(index));
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
}

}  // namespace testsup
