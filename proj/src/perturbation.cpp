#include "mcpt/perturbation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mcpt/errors.hpp"

namespace mcpt {

namespace {

// Relative obstruction gate; looser than the values seen in practice so
// close spectra do not trip false alarms. The measured value is recorded in
// the series diagnostics either way.
constexpr double kObstructionRelTol = 1e-8;

// Right-hand side of the recurrence at order k, before -h0 is applied:
// Q1 Psi^(k-1) + 1/2 sum_{m} [Psi^(m), Psi^(k-m)].
SuperElement recurrence_rhs(const PerturbationProblem& p, const std::vector<SuperElement>& history,
                            const SuperElement& base) {
    const std::size_t k = history.size() + 1;
    const SuperElement& prev = (k == 1) ? base : history.back();
    SuperElement rhs = apply_differential(p.q1, prev);
    for (std::size_t m = 1; m <= k - 1; ++m)
        rhs = rhs + 0.5 * bracket(history[m - 1], history[k - m - 1]);
    return rhs;
}

SuperElement step_impl(const PerturbationProblem& p, const std::vector<SuperElement>& history,
                       const SuperElement& base, double* obs_out, double* rhs_out) {
    const SuperElement rhs = recurrence_rhs(p, history, base);
    const double obs = obstruction_norm(p, rhs);
    const double scale = rhs.norm();
    if (obs_out) *obs_out = obs;
    if (rhs_out) *rhs_out = scale;
    if (obs > kObstructionRelTol * scale)
        throw ObstructionFailure(int(history.size() + 1), obs, kObstructionRelTol * scale);
    return cxd(-1.0) * homotopy_apply(p.homotopy, rhs);
}

}  // namespace

PerturbationProblem PerturbationProblem::build(HermitianOperator h0, HermitianOperator v,
                                               const EigenSelector& sel,
                                               std::optional<double> kernel_tol) {
    if (h0.dim() != v.dim())
        throw DimensionError("PerturbationProblem: operator dimensions differ");
    EigenDatum ed = select_eigenpair(h0, sel, kernel_tol);
    Homotopy hom = reduced_resolvent(h0, ed);
    DifferentialSpec q1{v, cxd(0.0), std::nullopt};
    return PerturbationProblem{std::move(h0), std::move(v), std::move(ed), std::move(hom),
                               std::move(q1)};
}

SuperElement PerturbationProblem::base_element() const {
    SuperElement psi0(h0.dim());
    psi0.vec_theta = eigendatum.vector;
    psi0.scal_c = eigendatum.energy;
    return psi0;
}

SuperElement recurrence_step(const PerturbationProblem& p, const std::vector<SuperElement>& history,
                             const SuperElement& base) {
    return step_impl(p, history, base, nullptr, nullptr);
}

PerturbationSeries corrections(const PerturbationProblem& p, int order) {
    if (order < 1) throw std::invalid_argument("corrections: need order >= 1");

    PerturbationSeries series;
    series.base = p.eigendatum;

    const SuperElement base = p.base_element();
    std::vector<SuperElement> history;
    history.reserve(std::size_t(order));

    for (int k = 1; k <= order; ++k) {
        double obs = 0.0, rhsn = 0.0;
        SuperElement psi_k = step_impl(p, history, base, &obs, &rhsn);
        series.obstruction_norms.push_back(obs);
        series.rhs_norms.push_back(rhsn);
        series.orders.push_back({psi_k.scal_c, psi_k.vec_theta});
        history.push_back(std::move(psi_k));
    }
    return series;
}

std::pair<cxd, CVec> closed_form_order(const PerturbationProblem& p, int k) {
    const CVec& psi0 = p.eigendatum.vector;
    const CMat& g = p.homotopy.resolvent;
    const auto V = [&](const CVec& x) { return p.v.apply(x); };
    const auto G = [&](const CVec& x) { return matvec(g, x); };

    const CVec v0 = V(psi0);          // V psi0
    const cxd e1 = dotc(psi0, v0);    // (psi0, V psi0)
    const CVec gv0 = G(v0);           // G V psi0

    switch (k) {
        case 1:
            return {e1, vscale(-1.0, gv0)};
        case 2: {
            const CVec vgv0 = V(gv0);
            const cxd e2 = -dotc(psi0, vgv0);
            CVec psi2 = G(vgv0);            // G V G V psi0
            axpy(-e1, G(gv0), psi2);        // - e1 G^2 V psi0
            return {e2, psi2};
        }
        case 3: {
            const CVec vgv0 = V(gv0);       // V G V psi0
            const CVec gvgv0 = G(vgv0);     // G V G V psi0
            const CVec ggv0 = G(gv0);       // G^2 V psi0
            const cxd e2neg = dotc(psi0, vgv0);  // (psi0, V G V psi0) = -E^(2)
            const cxd e3 = dotc(psi0, V(gvgv0)) - e1 * dotc(psi0, V(ggv0));

            CVec psi3 = vscale(-1.0, G(V(gvgv0)));  // -G V G V G V psi0
            axpy(e1, G(V(ggv0)), psi3);             // + e1 G V G^2 V psi0
            axpy(e2neg, ggv0, psi3);                // + (psi0, V G V psi0) G^2 V psi0
            axpy(e1, G(gvgv0), psi3);               // + e1 G^2 V G V psi0
            axpy(-e1 * e1, G(ggv0), psi3);          // - e1^2 G^3 V psi0
            return {e3, psi3};
        }
        default:
            throw std::invalid_argument("closed_form_order: k must be 1, 2, or 3");
    }
}

double obstruction_norm(const PerturbationProblem& p, const SuperElement& rhs) {
    return cohomology_project(rhs, p.eigendatum.vector).norm();
}

std::pair<cxd, CVec> evaluate_series(const PerturbationSeries& s, cxd lambda, int order) {
    if (order < 0 || std::size_t(order) > s.orders.size())
        throw std::invalid_argument("evaluate_series: order exceeds available corrections");
    cxd energy = s.base.energy;
    CVec vec = s.base.vector;
    cxd pw = 1.0;
    for (int k = 1; k <= order; ++k) {
        pw *= lambda;
        energy += pw * s.orders[std::size_t(k - 1)].energy;
        axpy(pw, s.orders[std::size_t(k - 1)].vector, vec);
    }
    return {energy, vec};
}

SuperElement series_element(const PerturbationSeries& s, cxd lambda, int order) {
    auto [energy, vec] = evaluate_series(s, lambda, order);
    SuperElement out(vec.size());
    out.vec_theta = std::move(vec);
    out.scal_c = energy;
    return out;
}

}  // namespace mcpt
