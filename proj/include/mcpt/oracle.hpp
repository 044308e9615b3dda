// oracle.hpp — independent ground truth for the engine output. Two routes:
// polynomial extraction from exact diagonalization over a small symmetric
// lambda grid, and the textbook sum-over-states formulas (k <= 3).

#pragma once

#include <utility>
#include <vector>

#include "mcpt/perturbation.hpp"

namespace mcpt {

// Coefficients extracted from diagonalizing H0 + lambda V over the grid
// {0, ±j lambda0, j = 1..J}. The state is tracked by overlap with psi0
// (confirmation threshold 0.9, else TrackingFailure); eigenvectors are
// rescaled to intermediate normalization before fitting, so the vector
// coefficients are directly comparable with the engine's.
//
// J defaults to the requested order, giving the plain 2K+1-point grid with
// a degree-2K interpolating fit. A larger J oversamples the grid and raises
// the fit degree to max(2K, J), which suppresses both the roundoff
// amplification ~eps/lambda^k and the truncation bias of the low-order
// coefficients.
struct DiagonalizationSeries {
    std::vector<double> energy;  // E^(k), k = 1..K
    std::vector<CVec> vector;    // psi^(k), k = 1..K
    double lambda0 = 0.0;
};

DiagonalizationSeries series_by_diagonalization(const HermitianOperator& h0,
                                                const HermitianOperator& v, const EigenDatum& ed,
                                                int order, double lambda0 = 1e-2,
                                                int points_per_side = 0,
                                                bool parallel_grid = false);

// Sum-over-states Rayleigh-Schrödinger corrections for k <= 3; energy
// denominators E0 - E_m, independent of the resolvent-matrix path.
std::vector<std::pair<cxd, CVec>> rs_textbook(const HermitianOperator& h0,
                                              const HermitianOperator& v, const EigenDatum& ed,
                                              int order);

// Angle between complex rays; 0 when either side is numerically null.
double vector_angle(const CVec& a, const CVec& b);

struct OracleReport {
    struct Row {
        int k = 0;
        double oracle_energy = 0.0;
        cxd engine_energy{0.0};
        double abs_err = 0.0;
        double rel_err = 0.0;
        double angle_err = 0.0;
        bool pass = false;
    };
    std::vector<Row> rows;
    double tol_abs = 0.0, tol_rel = 0.0;
    bool pass = false;
};

// Per-order energy errors; an order passes when the absolute error is
// within max(tol_abs, tol_rel * |oracle value|).
OracleReport compare(const PerturbationSeries& engine, const DiagonalizationSeries& oracle,
                     double tol_abs = 1e-8, double tol_rel = 1e-6);

}  // namespace mcpt
