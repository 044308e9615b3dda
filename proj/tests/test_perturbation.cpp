#include "doctest.h"

#include <cmath>

#include "mcpt/errors.hpp"
#include "mcpt/perturbation.hpp"
#include "mcpt/random.hpp"
#include "support.hpp"

using namespace mcpt;
using testsup::random_problem;
using testsup::two_level_problem;

TEST_CASE("order 1 matches -h0 Q1 Psi0 in closed form") {
    const PerturbationProblem p = random_problem(6, 101);
    const SuperElement psi1 = recurrence_step(p, {}, p.base_element());

    const CVec& psi0 = p.eigendatum.vector;
    const CVec vpsi0 = p.v.apply(psi0);
    const CVec want_vec = vscale(-1.0, matvec(p.homotopy.resolvent, vpsi0));
    const cxd want_e = dotc(psi0, vpsi0);

    CHECK(std::abs(psi1.scal_c - want_e) <= 1e-14);
    CHECK(nrm2(vsub(psi1.vec_theta, want_vec)) <= 1e-14);
    CHECK(nrm2(psi1.vec_one) == 0.0);
    CHECK(nrm2(psi1.vec_ctheta) == 0.0);
    CHECK(psi1.scal_one == cxd(0.0));
}

TEST_CASE("two-level model: series through order 4") {
    const PerturbationProblem p = two_level_problem();
    const PerturbationSeries s = corrections(p, 4);

    // E-series (0, -1/2, 0, 1/8) from the Taylor expansion of
    // 1 - sqrt(1 + lambda^2); psi-series ((0,-1/2), 0, (0,1/8)).
    CHECK(std::abs(s.orders[0].energy) <= 1e-12);
    CHECK(std::abs(s.orders[1].energy - cxd(-0.5)) <= 1e-12);
    CHECK(std::abs(s.orders[2].energy) <= 1e-12);
    CHECK(std::abs(s.orders[3].energy - cxd(0.125)) <= 1e-12);

    CHECK(std::abs(s.orders[0].vector[0]) <= 1e-12);
    CHECK(std::abs(s.orders[0].vector[1] - cxd(-0.5)) <= 1e-12);
    CHECK(nrm2(s.orders[1].vector) <= 1e-12);
    CHECK(std::abs(s.orders[2].vector[1] - cxd(0.125)) <= 1e-12);
}

TEST_CASE("identity perturbation shifts the spectrum and nothing else") {
    auto base = testsup::two_level_pair();
    const HermitianOperator v(CMat::identity(2));
    const PerturbationProblem p =
        PerturbationProblem::build(base.h0, v, EigenSelector::by_index(0));
    const PerturbationSeries s = corrections(p, 4);
    CHECK(std::abs(s.orders[0].energy - cxd(1.0)) <= 1e-14);
    for (int k = 2; k <= 4; ++k) CHECK(std::abs(s.orders[std::size_t(k - 1)].energy) <= 1e-14);
    for (int k = 1; k <= 4; ++k) CHECK(nrm2(s.orders[std::size_t(k - 1)].vector) <= 1e-14);
}

TEST_CASE("closed forms agree with the recurrence on random problems") {
    for (std::uint64_t seed = 200; seed < 250; ++seed) {
        const PerturbationProblem p = random_problem(6, seed);
        const PerturbationSeries s = corrections(p, 3);
        for (int k = 1; k <= 3; ++k) {
            const auto [e, psi] = closed_form_order(p, k);
            const auto& ord = s.orders[std::size_t(k - 1)];
            const double scale = std::max(1.0, std::abs(ord.energy) + nrm2(ord.vector));
            CHECK(std::abs(e - ord.energy) <= 1e-12 * scale);
            CHECK(nrm2(vsub(psi, ord.vector)) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("two-level model: E3 vanishes") {
    const auto [e3, psi3] = closed_form_order(two_level_problem(), 3);
    CHECK(std::abs(e3) <= 1e-14);
}

TEST_CASE("identity perturbation: closed second order vanishes") {
    auto base = testsup::two_level_pair();
    const HermitianOperator v(CMat::identity(2));
    const PerturbationProblem p =
        PerturbationProblem::build(base.h0, v, EigenSelector::by_index(0));
    const auto [e2, psi2] = closed_form_order(p, 2);
    CHECK(std::abs(e2) <= 1e-14);
    CHECK(nrm2(psi2) <= 1e-14);
}

TEST_CASE("closed_form_order rejects k outside 1..3") {
    CHECK_THROWS_AS(closed_form_order(two_level_problem(), 4), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_order(two_level_problem(), 0), std::invalid_argument);
}

TEST_CASE("obstruction measurement") {
    const PerturbationProblem p = random_problem(8, 777);

    SUBCASE("pure c-theta right-hand sides have zero obstruction") {
        auto gen = rng::make(41);
        SuperElement rhs(8);
        rhs.vec_ctheta = rng::random_vec(8, gen);
        CHECK(obstruction_norm(p, rhs) == 0.0);
    }

    SUBCASE("injected cohomology component is detected") {
        SuperElement rhs(8);
        rhs.vec_one = p.eigendatum.vector;
        CHECK(obstruction_norm(p, rhs) ==
              doctest::Approx(nrm2(p.eigendatum.vector)).epsilon(1e-12));
    }

    SUBCASE("all orders through 6 stay under 1e-10 of the rhs") {
        const PerturbationSeries s = corrections(p, 6);
        for (std::size_t k = 0; k < 6; ++k)
            CHECK(s.obstruction_norms[k] <= 1e-10 * std::max(1e-300, s.rhs_norms[k]));
    }

    SUBCASE("corrupted history trips ObstructionFailure") {
        const SuperElement base = p.base_element();
        SuperElement good = recurrence_step(p, {}, base);
        SuperElement corrupted = good;
        corrupted.vec_one = p.eigendatum.vector;  // illegal degree-0 smear
        CHECK_THROWS_AS(recurrence_step(p, {corrupted}, base), ObstructionFailure);
    }
}

TEST_CASE("normalization and reality invariants on random problems") {
    for (std::uint64_t seed = 300; seed < 310; ++seed) {
        const PerturbationProblem p = random_problem(7, seed);
        const PerturbationSeries s = corrections(p, 5);
        for (const auto& ord : s.orders) {
            CHECK(std::abs(dotc(p.eigendatum.vector, ord.vector)) <= 1e-12);
            CHECK(std::abs(ord.energy.imag()) <= 1e-10);
        }
    }
}

TEST_CASE("eigenvalue corrections come only from the linear term") {
    // Rebuild the recurrence with the bracket's scalar output dropped; the
    // E-series must not move.
    const PerturbationProblem p = random_problem(6, 555);
    const int order = 5;
    const PerturbationSeries s = corrections(p, order);

    const SuperElement base = p.base_element();
    std::vector<SuperElement> history;
    for (int k = 1; k <= order; ++k) {
        const SuperElement& prev = (k == 1) ? base : history.back();
        SuperElement linear = apply_differential(p.q1, prev);
        SuperElement brack(p.h0.dim());
        for (int m = 1; m <= k - 1; ++m)
            brack = brack + 0.5 * bracket(history[std::size_t(m - 1)],
                                          history[std::size_t(k - m - 1)]);
        // energy from the linear part alone
        const SuperElement from_linear = cxd(-1.0) * homotopy_apply(p.homotopy, linear);
        const cxd e_linear = from_linear.scal_c;
        const auto& ord = s.orders[std::size_t(k - 1)];
        CHECK(std::abs(e_linear - ord.energy) <=
              1e-12 * std::max(1.0, std::abs(ord.energy)));
        history.push_back(cxd(-1.0) * homotopy_apply(p.homotopy, linear + brack));
    }
}

TEST_CASE("evaluate_series") {
    const PerturbationProblem p = two_level_problem();
    const PerturbationSeries s = corrections(p, 4);

    SUBCASE("lambda = 0 returns the base pair") {
        const auto [e, psi] = evaluate_series(s, 0.0, 4);
        CHECK(e == cxd(0.0));
        CHECK(nrm2(vsub(psi, p.eigendatum.vector)) == 0.0);
    }

    SUBCASE("lambda = 0.1 reproduces the exact eigenvalue to order lambda^6") {
        const double lambda = 0.1;
        const auto [e, psi] = evaluate_series(s, lambda, 4);
        const double exact = 1.0 - std::sqrt(1.0 + lambda * lambda);
        CHECK(std::abs(e - cxd(exact)) <= 5.0 * std::pow(lambda, 6));
    }

    SUBCASE("requesting more orders than available throws") {
        CHECK_THROWS_AS(evaluate_series(s, 0.1, 5), std::invalid_argument);
    }

    SUBCASE("truncation residual scales as lambda^(K+1)") {
        const PerturbationProblem pr = random_problem(6, 888);
        const PerturbationSeries sr = corrections(pr, 3);
        for (int order = 1; order <= 3; ++order) {
            std::vector<double> lams, resids;
            for (double lam = 1e-3; lam <= 1.001e-2; lam *= std::sqrt(10.0)) {
                CMat hm = pr.h0.matrix();
                for (std::size_t e2 = 0; e2 < hm.rows() * hm.cols(); ++e2)
                    hm.data()[e2] += lam * pr.v.matrix().data()[e2];
                const HermitianOperator hl(std::move(hm));
                lams.push_back(lam);
                resids.push_back(mc_residual(hl, series_element(sr, lam, order)).norm());
            }
            CHECK(testsup::loglog_slope(lams, resids) >= double(order) + 0.9);
        }
    }
}

TEST_CASE("one-dimensional space: corrections beyond first order vanish") {
    CMat h0(1, 1), v(1, 1);
    h0(0, 0) = 0.7;
    v(0, 0) = 0.3;
    const PerturbationProblem p = PerturbationProblem::build(
        HermitianOperator(std::move(h0)), HermitianOperator(std::move(v)),
        EigenSelector::by_index(0));
    const PerturbationSeries s = corrections(p, 3);
    CHECK(std::abs(s.orders[0].energy - cxd(0.3)) <= 1e-15);
    for (int k = 2; k <= 3; ++k) CHECK(std::abs(s.orders[std::size_t(k - 1)].energy) == 0.0);
    for (int k = 1; k <= 3; ++k) CHECK(nrm2(s.orders[std::size_t(k - 1)].vector) == 0.0);
}
