// perturbation.hpp — the perturbation engine: assemble the non-perturbed
// data (twisted differential, homotopy), check obstructions, run the
// order-k recurrence
//
//   Psi^(k) = -h0 Q1 Psi^(k-1) - 1/2 h0 sum_{m=1}^{k-1} [Psi^(m), Psi^(k-m)]
//
// and expose the closed forms for k = 1, 2, 3 as an independent code path.
// Normalization is "intermediate": (psi0, psi^(k)) = 0 for k >= 1, which
// the resolvent output satisfies automatically.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mcpt/hilbert.hpp"

namespace mcpt {

struct PerturbationProblem {
    HermitianOperator h0;
    HermitianOperator v;
    EigenDatum eigendatum;
    Homotopy homotopy;
    DifferentialSpec q1;  // c V, untwisted

    static PerturbationProblem build(HermitianOperator h0, HermitianOperator v,
                                     const EigenSelector& sel,
                                     std::optional<double> kernel_tol = std::nullopt);

    // Psi^(0) = (theta psi0; c E0).
    SuperElement base_element() const;
};

struct PerturbationSeries {
    static constexpr const char* normalization = "intermediate";

    struct Order {
        cxd energy;
        CVec vector;
    };

    EigenDatum base;
    std::vector<Order> orders;  // k = 1..K

    // Diagnostics recorded per order: cohomology component of the
    // right-hand side before the homotopy was applied, and its norm.
    std::vector<double> obstruction_norms;
    std::vector<double> rhs_norms;
};

// One order of the recurrence. history holds Psi^(1)..Psi^(k-1) as full
// superspace elements; the base element is passed separately. Throws
// ObstructionFailure when the measured obstruction exceeds
// 1e-8 * ||rhs||.
SuperElement recurrence_step(const PerturbationProblem& p,
                             const std::vector<SuperElement>& history,
                             const SuperElement& base);

// Orders 1..K of the full pipeline.
PerturbationSeries corrections(const PerturbationProblem& p, int order);

// The printed closed forms for k in {1, 2, 3}; an independent path against
// recurrence_step.
std::pair<cxd, CVec> closed_form_order(const PerturbationProblem& p, int k);

// Norm of the cohomology component of a right-hand side.
double obstruction_norm(const PerturbationProblem& p, const SuperElement& rhs);

// Truncated sums E^(0) + sum lambda^k E^(k), psi^(0) + sum lambda^k psi^(k).
std::pair<cxd, CVec> evaluate_series(const PerturbationSeries& s, cxd lambda, int order);

// (theta psi(lambda); c E(lambda)) for the truncated series; handy for
// Maurer-Cartan residual scans.
SuperElement series_element(const PerturbationSeries& s, cxd lambda, int order);

}  // namespace mcpt
