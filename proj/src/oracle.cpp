#include "mcpt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mcpt/errors.hpp"

namespace mcpt {

namespace {

constexpr double kOverlapThreshold = 0.9;

struct TrackedPoint {
    double energy = 0.0;
    CVec vector;  // intermediate normalization: (psi0, vector) = 1
};

TrackedPoint track_state(const CMat& h, const CVec& psi0, double lambda) {
    const Eigh eig = eigh(h);
    const std::size_t n = psi0.size();

    std::size_t best = 0;
    double best_overlap = -1.0;
    for (std::size_t m = 0; m < n; ++m) {
        const double ov = std::abs(dotc(psi0, eig.vectors.column(m)));
        if (ov > best_overlap) {
            best_overlap = ov;
            best = m;
        }
    }
    if (best_overlap < kOverlapThreshold)
        throw TrackingFailure("state tracking lost at lambda = " + std::to_string(lambda) +
                              ": best overlap " + std::to_string(best_overlap) + " < " +
                              std::to_string(kOverlapThreshold));

    TrackedPoint out;
    out.energy = eig.values[best];
    CVec v = eig.vectors.column(best);
    const cxd proj = dotc(psi0, v);
    out.vector = vscale(1.0 / proj, v);
    return out;
}

}  // namespace

DiagonalizationSeries series_by_diagonalization(const HermitianOperator& h0,
                                                const HermitianOperator& v, const EigenDatum& ed,
                                                int order, double lambda0, int points_per_side,
                                                bool parallel_grid) {
    if (order < 1) throw std::invalid_argument("series_by_diagonalization: need order >= 1");
    if (!(lambda0 > 0.0))
        throw std::invalid_argument("series_by_diagonalization: need lambda0 > 0");
    if (h0.dim() != v.dim() || ed.vector.size() != h0.dim())
        throw DimensionError("series_by_diagonalization: dimension mismatch");

    const std::size_t n = h0.dim();
    const int side = std::max(points_per_side, order);
    const int degree = std::max(2 * order, side);
    const int points = 2 * side + 1;
    std::vector<double> lambdas(static_cast<std::size_t>(points));
    for (int j = -side; j <= side; ++j) lambdas[std::size_t(j + side)] = double(j) * lambda0;

    std::vector<TrackedPoint> tracked(static_cast<std::size_t>(points));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (parallel_grid)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(points); ++i) {
        try {
            CMat h = h0.matrix();
            const double lam = lambdas[std::size_t(i)];
            for (std::size_t e = 0; e < n * n; ++e) h.data()[e] += lam * v.matrix().data()[e];
            tracked[std::size_t(i)] = track_state(h, ed.vector, lam);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    // Least-squares polynomial fit over the grid; nodes scaled to [-1, 1]
    // to keep the Vandermonde system well conditioned.
    const double scale = double(side) * lambda0;
    const std::size_t np = static_cast<std::size_t>(points);
    const std::size_t nc = static_cast<std::size_t>(degree + 1);
    CMat vand(np, nc);
    for (int i = 0; i < points; ++i) {
        const double t = lambdas[std::size_t(i)] / scale;
        double pw = 1.0;
        for (std::size_t c = 0; c < nc; ++c) {
            vand(std::size_t(i), c) = pw;
            pw *= t;
        }
    }
    CMat rhs(np, n + 1);
    for (int i = 0; i < points; ++i) {
        rhs(std::size_t(i), 0) = tracked[std::size_t(i)].energy;
        for (std::size_t c = 0; c < n; ++c)
            rhs(std::size_t(i), c + 1) = tracked[std::size_t(i)].vector[c];
    }
    const CMat coeff = lstsq(vand, rhs);

    DiagonalizationSeries out;
    out.lambda0 = lambda0;
    double unscale = 1.0;
    for (int k = 1; k <= order; ++k) {
        unscale /= scale;
        out.energy.push_back(coeff(std::size_t(k), 0).real() * unscale);
        CVec psi_k(n);
        for (std::size_t c = 0; c < n; ++c) psi_k[c] = coeff(std::size_t(k), c + 1) * unscale;
        out.vector.push_back(std::move(psi_k));
    }
    return out;
}

std::vector<std::pair<cxd, CVec>> rs_textbook(const HermitianOperator& h0,
                                              const HermitianOperator& v, const EigenDatum& ed,
                                              int order) {
    if (order < 1 || order > 3)
        throw std::invalid_argument("rs_textbook: order must be 1, 2, or 3");
    if (ed.kernel_dim != 1) throw DegenerateLevel("rs_textbook: degenerate level");
    const std::size_t n = h0.dim();

    const Eigh eig = eigh(h0.matrix());
    const CVec& psi0 = ed.vector;

    // Non-kernel index set with denominators delta_m = E0 - E_m.
    std::vector<std::size_t> idx;
    std::vector<double> delta;
    for (std::size_t m = 0; m < n; ++m) {
        const double d = ed.energy - eig.values[m];
        if (std::abs(d) <= ed.kernel_tol) continue;
        idx.push_back(m);
        delta.push_back(d);
    }

    const CVec vpsi0 = v.apply(psi0);
    const cxd v00 = dotc(psi0, vpsi0);

    // t_m = <m|V|0>; W_ml = <m|V|l> over the non-kernel set.
    const std::size_t nn = idx.size();
    std::vector<cxd> t(nn);
    std::vector<CVec> cols(nn);
    for (std::size_t a = 0; a < nn; ++a) {
        cols[a] = eig.vectors.column(idx[a]);
        t[a] = dotc(cols[a], vpsi0);
    }
    std::vector<std::vector<cxd>> w(nn, std::vector<cxd>(nn));
    for (std::size_t a = 0; a < nn; ++a) {
        const CVec vc = v.apply(cols[a]);
        for (std::size_t bdx = 0; bdx < nn; ++bdx) w[bdx][a] = dotc(cols[bdx], vc);
    }

    std::vector<std::pair<cxd, CVec>> out;

    // k = 1: E = <0|V|0>, psi = sum_m |m> t_m / delta_m.
    CVec psi1(n);
    for (std::size_t a = 0; a < nn; ++a) axpy(t[a] / delta[a], cols[a], psi1);
    out.emplace_back(v00, psi1);
    if (order == 1) return out;

    // k = 2.
    cxd e2 = 0.0;
    for (std::size_t a = 0; a < nn; ++a) e2 += std::norm(t[a]) / delta[a];
    CVec psi2(n);
    std::vector<cxd> s(nn);  // s_a = sum_l W_al t_l / delta_l
    for (std::size_t a = 0; a < nn; ++a) {
        cxd acc = 0.0;
        for (std::size_t l = 0; l < nn; ++l) acc += w[a][l] * t[l] / delta[l];
        s[a] = acc;
        axpy((acc - v00 * t[a] / delta[a]) / delta[a], cols[a], psi2);
    }
    out.emplace_back(e2, psi2);
    if (order == 2) return out;

    // k = 3: E3 = sum_{m,l} conj(t_m) W_ml t_l / (delta_m delta_l)
    //            - V00 sum_m |t_m|^2 / delta_m^2.
    cxd e3 = 0.0;
    for (std::size_t a = 0; a < nn; ++a) {
        e3 += std::conj(t[a]) * s[a] / delta[a];
        e3 -= v00 * std::norm(t[a]) / (delta[a] * delta[a]);
    }

    CVec psi3(n);
    for (std::size_t a = 0; a < nn; ++a) {
        // triple sum via s: sum_l W_al s_l / delta_l
        cxd triple = 0.0;
        for (std::size_t l = 0; l < nn; ++l) triple += w[a][l] * s[l] / delta[l];
        cxd coeff = triple / delta[a];
        for (std::size_t l = 0; l < nn; ++l) {
            const cxd wl = w[a][l] * t[l];
            coeff -= v00 * wl * (1.0 / (delta[a] * delta[l] * delta[l]) +
                                 1.0 / (delta[a] * delta[a] * delta[l]));
        }
        coeff -= e2 * t[a] / (delta[a] * delta[a]);
        coeff += v00 * v00 * t[a] / (delta[a] * delta[a] * delta[a]);
        axpy(coeff, cols[a], psi3);
    }
    out.emplace_back(e3, psi3);
    return out;
}

double vector_angle(const CVec& a, const CVec& b) {
    const double na = nrm2(a), nb = nrm2(b);
    if (na * nb < 1e-14) return 0.0;
    const double c = std::min(1.0, std::abs(dotc(a, b)) / (na * nb));
    return std::acos(c);
}

OracleReport compare(const PerturbationSeries& engine, const DiagonalizationSeries& oracle,
                     double tol_abs, double tol_rel) {
    OracleReport report;
    report.tol_abs = tol_abs;
    report.tol_rel = tol_rel;
    report.pass = true;

    const std::size_t orders = std::min(engine.orders.size(), oracle.energy.size());
    for (std::size_t k = 0; k < orders; ++k) {
        OracleReport::Row row;
        row.k = int(k + 1);
        row.oracle_energy = oracle.energy[k];
        row.engine_energy = engine.orders[k].energy;
        row.abs_err = std::abs(row.engine_energy - cxd(row.oracle_energy));
        const double scale = std::abs(row.oracle_energy);
        row.rel_err = scale > 0.0 ? row.abs_err / scale : (row.abs_err > 0.0 ? HUGE_VAL : 0.0);
        row.angle_err = vector_angle(engine.orders[k].vector, oracle.vector[k]);
        row.pass = row.abs_err <= std::max(tol_abs, tol_rel * scale);
        report.pass = report.pass && row.pass;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace mcpt
