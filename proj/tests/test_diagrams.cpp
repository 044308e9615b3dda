#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "mcpt/diagrams.hpp"
#include "support.hpp"

using namespace mcpt;
using testsup::random_problem;
using testsup::two_level_problem;

namespace {

DiagramNode node(DiagramNodeKind kind, std::vector<DiagramNode> children = {}) {
    DiagramNode n;
    n.kind = kind;
    n.children = std::move(children);
    return n;
}

const auto R = DiagramNodeKind::Homotopy;
const auto C = DiagramNodeKind::Vertex;
const auto F = DiagramNodeKind::Fork;
const auto L = DiagramNodeKind::Leaf;

TreeDiagram chain(int order) {
    DiagramNode head = node(L);
    for (int k = 0; k < order; ++k) head = node(R, {node(C, {std::move(head)})});
    TreeDiagram d;
    d.root = std::move(head);
    d.order = order;
    d.coefficient = (order % 2 == 0) ? 1 : -1;
    return d;
}

}  // namespace

TEST_CASE("enumeration counts: 1, 2, 4, then frozen goldens") {
    CHECK(enumerate_diagrams(1).size() == 1);
    CHECK(enumerate_diagrams(2).size() == 2);
    CHECK(enumerate_diagrams(3).size() == 4);
    // regression goldens, frozen after the first computation
    CHECK(enumerate_diagrams(4).size() == 11);
    CHECK(enumerate_diagrams(5).size() == 30);
    CHECK(enumerate_diagrams(6).size() == 92);

    CHECK_THROWS_AS(enumerate_diagrams(0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_diagrams(9), std::invalid_argument);
}

TEST_CASE("order 1 is the single signed chain") {
    const auto diagrams = enumerate_diagrams(1);
    REQUIRE(diagrams.size() == 1);
    CHECK(diagrams[0].coefficient == -1);
    CHECK(render(diagrams[0], DiagramFormat::Text) == "R C L");
    CHECK(is_energy_contributing(diagrams[0]));
}

TEST_CASE("order 2 is a chain and a fork") {
    const auto diagrams = enumerate_diagrams(2);
    REQUIRE(diagrams.size() == 2);
    std::map<std::string, std::int64_t> got;
    for (const auto& d : diagrams) got[render(d, DiagramFormat::Text)] = d.coefficient;
    CHECK(got.at("R C R C L") == 1);
    CHECK(got.at("R F ( R C L ) ( R C L )") == -1);
}

TEST_CASE("order 3 merges six expansion terms into four trees with factor-2 weights") {
    const auto diagrams = enumerate_diagrams(3);
    REQUIRE(diagrams.size() == 4);
    std::multiset<std::int64_t> coeffs;
    std::int64_t total_terms = 0;
    for (const auto& d : diagrams) {
        coeffs.insert(d.coefficient);
        total_terms += std::abs(d.coefficient);
    }
    CHECK(coeffs == std::multiset<std::int64_t>{-2, -1, 1, 2});
    CHECK(total_terms == 6);
    CHECK(std::count_if(diagrams.begin(), diagrams.end(), [](const TreeDiagram& d) {
              return std::abs(d.coefficient) == 2;
          }) == 2);
}

TEST_CASE("legality rules") {
    SUBCASE("enumerated diagrams validate") {
        for (int k = 1; k <= 6; ++k)
            for (const auto& d : enumerate_diagrams(k)) CHECK_NOTHROW(validate_diagram(d));
    }

    SUBCASE("each prohibited adjacency is rejected") {
        const auto bad = [](DiagramNode root, int order) {
            TreeDiagram d;
            d.root = std::move(root);
            d.order = order;
            return d;
        };
        const auto rcl = [] { return node(R, {node(C, {node(L)})}); };

        // R-R
        CHECK_THROWS_AS(validate_diagram(bad(node(R, {rcl()}), 1)), std::invalid_argument);
        // R-L
        CHECK_THROWS_AS(validate_diagram(bad(node(R, {node(L)}), 0)), std::invalid_argument);
        // C-C
        CHECK_THROWS_AS(
            validate_diagram(bad(node(R, {node(C, {node(C, {node(L)})})}), 2)),
            std::invalid_argument);
        // F-L
        CHECK_THROWS_AS(
            validate_diagram(bad(node(R, {node(F, {rcl(), node(L)})}), 1)),
            std::invalid_argument);
        // F-C
        CHECK_THROWS_AS(
            validate_diagram(bad(node(R, {node(F, {rcl(), node(C, {node(L)})})}), 2)),
            std::invalid_argument);
        // C-F
        CHECK_THROWS_AS(
            validate_diagram(bad(node(R, {node(C, {node(F, {rcl(), rcl()})})}), 3)),
            std::invalid_argument);
    }

    SUBCASE("root must be the homotopy edge") {
        TreeDiagram d;
        d.root = node(C, {node(L)});
        d.order = 1;
        CHECK_THROWS_AS(validate_diagram(d), std::invalid_argument);
    }

    SUBCASE("order must match the vertex count") {
        TreeDiagram d = chain(2);
        d.order = 3;
        CHECK_THROWS_AS(validate_diagram(d), std::invalid_argument);
    }
}

TEST_CASE("evaluation on the two-level model") {
    const PerturbationProblem p = two_level_problem();

    SUBCASE("the order-1 chain reproduces Psi^(1)") {
        const auto diagrams = enumerate_diagrams(1);
        const SuperElement val = evaluate_diagram(diagrams[0], p);
        CHECK(std::abs(val.vec_theta[0]) <= 1e-15);
        CHECK(std::abs(val.vec_theta[1] - cxd(-0.5)) <= 1e-15);
        CHECK(std::abs(val.scal_c) <= 1e-15);
    }

    SUBCASE("fork-rooted diagrams carry no scalar part") {
        for (int k = 2; k <= 4; ++k) {
            for (const auto& d : enumerate_diagrams(k)) {
                if (is_energy_contributing(d)) continue;
                const SuperElement val = evaluate_diagram(d, random_problem(6, 404));
                CHECK(std::abs(val.scal_c) <= 1e-12);
                CHECK(std::abs(val.scal_one) <= 1e-12);
            }
        }
    }

    SUBCASE("order-2 chain with identity perturbation evaluates to zero") {
        auto base = testsup::two_level_pair();
        const HermitianOperator vi(CMat::identity(2));
        const PerturbationProblem pi =
            PerturbationProblem::build(base.h0, vi, EigenSelector::by_index(0));
        const TreeDiagram d = chain(2);
        CHECK(evaluate_diagram(d, pi).norm() <= 1e-15);
    }
}

TEST_CASE("diagram sums reproduce the recurrence") {
    SUBCASE("orders 1..3 on random problems") {
        for (std::uint64_t seed = 600; seed < 605; ++seed) {
            const PerturbationProblem p = random_problem(6, seed);
            for (int k = 1; k <= 3; ++k) CHECK(diagram_sum_check(k, p) <= 1e-11);
        }
    }

    SUBCASE("order 3 on the two-level model") {
        CHECK(diagram_sum_check(3, two_level_problem()) <= 1e-13);
    }

    SUBCASE("zero perturbation gives zero on both sides") {
        auto base = testsup::two_level_pair();
        const HermitianOperator vz(CMat(2, 2));
        const PerturbationProblem pz =
            PerturbationProblem::build(base.h0, vz, EigenSelector::by_index(0));
        for (int k = 1; k <= 4; ++k) {
            CHECK(diagram_sum_check(k, pz) <= 1e-15);
            for (const auto& d : enumerate_diagrams(k))
                CHECK(evaluate_diagram(d, pz).norm() <= 1e-15);
        }
    }
}

TEST_CASE("energy filter") {
    SUBCASE("chains contribute, fork-rooted trees do not") {
        CHECK(is_energy_contributing(chain(1)));
        CHECK(is_energy_contributing(chain(3)));
        const auto diagrams = enumerate_diagrams(2);
        for (const auto& d : diagrams) {
            const bool fork_root = d.root.children[0].kind == F;
            CHECK(is_energy_contributing(d) == !fork_root);
        }
    }

    SUBCASE("contributing diagrams alone reproduce the E-series") {
        const PerturbationProblem p = random_problem(7, 321);
        const PerturbationSeries s = corrections(p, 5);
        for (int k = 1; k <= 5; ++k) {
            cxd e_sum = 0.0;
            for (const auto& d : enumerate_diagrams(k)) {
                if (!is_energy_contributing(d)) continue;
                e_sum += evaluate_diagram(d, p).scal_c;
            }
            const cxd want = s.orders[std::size_t(k - 1)].energy;
            CHECK(std::abs(e_sum - want) <= 1e-11 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("rendering") {
    SUBCASE("text tokens for the order-2 fork") {
        const auto diagrams = enumerate_diagrams(2);
        bool found = false;
        for (const auto& d : diagrams)
            found = found || render(d, DiagramFormat::Text) == "R F ( R C L ) ( R C L )";
        CHECK(found);
    }

    SUBCASE("dot output is structurally sound") {
        for (const auto& d : enumerate_diagrams(3)) {
            const std::string dot = render(d, DiagramFormat::Dot);
            CHECK(dot.rfind("digraph", 0) == 0);
            CHECK(dot.find('{') != std::string::npos);
            CHECK(dot.back() == '\n');
            // edges = nodes - 1 for a tree
            std::size_t nodes = 0, edges = 0, pos = 0;
            while ((pos = dot.find("label=", pos)) != std::string::npos) {
                ++nodes;
                ++pos;
            }
            pos = 0;
            while ((pos = dot.find("->", pos)) != std::string::npos) {
                ++edges;
                ++pos;
            }
            CHECK(edges + 1 == nodes);
            CHECK(dot.find('}') != std::string::npos);
        }
    }

    SUBCASE("deterministic output order") {
        const auto a = enumerate_diagrams(4);
        const auto b = enumerate_diagrams(4);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(render(a[i], DiagramFormat::Text) == render(b[i], DiagramFormat::Text));
            CHECK(a[i].coefficient == b[i].coefficient);
        }
    }
}
