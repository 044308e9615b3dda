#include "mcpt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mcpt/hilbert.hpp"
#include "mcpt/random.hpp"
#include "mcpt/superspace.hpp"

namespace mcpt {

namespace {

double sweep_max(int trials, const std::function<double(std::mt19937_64&)>& trial,
                 std::uint64_t seed) {
    // Each trial draws from its own stream so the sweep parallelizes without
    // changing results.
    std::vector<double> residuals(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(trials); ++i) {
        auto gen = rng::make(seed + 0x9e3779b97f4a7c15ULL * std::uint64_t(i + 1));
        residuals[std::size_t(i)] = trial(gen);
    }
    double m = 0.0;
    for (double r : residuals) m = std::max(m, r);
    return m;
}

}  // namespace

InvariantReport run_invariant_suite(const HermitianOperator& h, std::uint64_t seed, int trials) {
    const std::size_t n = h.dim();
    const double hscale = std::max(1.0, max_abs(h.matrix()));

    const EigenDatum ed = select_eigenpair(h, EigenSelector::by_index(0));
    const Homotopy hom = reduced_resolvent(h, ed);
    const SuperElement mc_exact = [&] {
        SuperElement x(n);
        x.vec_theta = ed.vector;
        x.scal_c = ed.energy;
        return x;
    }();
    DifferentialSpec q{h, cxd(0.0), std::nullopt};
    DifferentialSpec qt = twist(h, mc_exact);

    InvariantReport report;
    const auto add = [&](std::string name, double tol,
                         const std::function<double(std::mt19937_64&)>& trial) {
        InvariantRow row;
        row.name = std::move(name);
        row.tolerance = tol;
        row.max_residual = sweep_max(trials, trial, seed);
        row.pass = row.max_residual <= tol;
        report.pass = report.pass && row.pass;
        report.rows.push_back(std::move(row));
    };

    add("bracket_antisymmetry", 1e-14, [&](std::mt19937_64& gen) {
        const int pa = gen() & 1, pb = gen() & 1;
        const SuperElement a = rng::random_homogeneous(n, pa, gen);
        const SuperElement b = rng::random_homogeneous(n, pb, gen);
        const double sign = (pa * pb) != 0 ? -1.0 : 1.0;  // (-1)^{|a||b|}
        const SuperElement resid = bracket(a, b) + cxd(sign) * bracket(b, a);
        return resid.norm() / std::max(1e-300, a.norm() * b.norm());
    });

    add("bracket_jacobi", 1e-12, [&](std::mt19937_64& gen) {
        const int pa = gen() & 1, pb = gen() & 1, pc = gen() & 1;
        const SuperElement a = rng::random_homogeneous(n, pa, gen);
        const SuperElement b = rng::random_homogeneous(n, pb, gen);
        const SuperElement c = rng::random_homogeneous(n, pc, gen);
        const auto sgn = [](int p, int q) { return (p * q) != 0 ? -1.0 : 1.0; };
        const SuperElement cyc = cxd(sgn(pa, pc)) * bracket(a, bracket(b, c)) +
                                 cxd(sgn(pb, pa)) * bracket(b, bracket(c, a)) +
                                 cxd(sgn(pc, pb)) * bracket(c, bracket(a, b));
        return cyc.norm() / std::max(1e-300, a.norm() * b.norm() * c.norm());
    });

    add("q_squared", 1e-12, [&](std::mt19937_64& gen) {
        const SuperElement x = rng::random_super_element(n, gen);
        return apply_differential(q, apply_differential(q, x)).norm() /
               std::max(1e-300, x.norm() * hscale * hscale);
    });

    add("qt_squared", 1e-12, [&](std::mt19937_64& gen) {
        const SuperElement x = rng::random_super_element(n, gen);
        return apply_differential(qt, apply_differential(qt, x)).norm() /
               std::max(1e-300, x.norm() * hscale * hscale);
    });

    add("derivation", 1e-12, [&](std::mt19937_64& gen) {
        const int pa = gen() & 1;
        const SuperElement a = rng::random_homogeneous(n, pa, gen);
        const SuperElement b = rng::random_homogeneous(n, gen() & 1, gen);
        const DifferentialSpec& d = (gen() & 1) ? qt : q;
        const double sign = pa != 0 ? -1.0 : 1.0;
        const SuperElement resid = apply_differential(d, bracket(a, b)) -
                                   bracket(apply_differential(d, a), b) -
                                   cxd(sign) * bracket(a, apply_differential(d, b));
        return resid.norm() / std::max(1e-300, a.norm() * b.norm() * hscale);
    });

    add("homotopy_identity", 1e-11, [&](std::mt19937_64& gen) {
        const SuperElement x = rng::random_super_element(n, gen);
        return homotopy_identity_residual(h, hom, x) / std::max(1e-300, x.norm());
    });

    add("mc_residual_eigenpair", 1e-11, [&](std::mt19937_64&) {
        return mc_residual(h, mc_exact).norm() / hscale;
    });

    add("gauge_stability", 1e-10, [&](std::mt19937_64& gen) {
        const GaugeElement g = rng::random_gauge_element(n, 1.0, gen);
        const SuperElement moved = gauge_act(g, mc_exact, h);
        return mc_residual(h, moved).norm() / std::max(1.0, hscale * moved.norm());
    });

    add("projector_idempotency", 1e-13, [&](std::mt19937_64& gen) {
        const SuperElement x = rng::random_super_element(n, gen);
        const SuperElement once = cohomology_project(x, ed.vector);
        const SuperElement twice = cohomology_project(once, ed.vector);
        return (twice - once).norm() / std::max(1e-300, x.norm());
    });

    return report;
}

}  // namespace mcpt
