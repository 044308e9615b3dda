// diagrams.hpp — the tree-diagram expansion of the recurrence. Each order-k
// correction equals a signed integer combination of rooted trees built from
// four node kinds:
//
//   Homotopy ("R")  the resolvent edge h0, always the root
//   Vertex   ("C")  the perturbation contact Q1; order = number of these
//   Fork     ("F")  1/2 [ -, - ], children unordered
//   Leaf     ("L")  the base element Psi^(0), always the leaves
//
// Signs and multiplicities come from symbolically expanding the recurrence,
// not from a separate combinatorial rule; isomorphic trees are merged via a
// canonical key with Fork children sorted.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcpt/perturbation.hpp"

namespace mcpt {

enum class DiagramNodeKind : unsigned char { Homotopy, Vertex, Fork, Leaf };

struct DiagramNode {
    DiagramNodeKind kind = DiagramNodeKind::Leaf;
    std::vector<DiagramNode> children;
};

struct TreeDiagram {
    DiagramNode root;
    std::int64_t coefficient = 0;
    int order = 0;  // number of Vertex nodes
};

// Checks the three construction rules: Homotopy at the root, Leaf at every
// leaf, and none of the six prohibited adjacencies
// (R-R, R-L, C-C, F-L, F-C, C-F). Throws std::invalid_argument.
void validate_diagram(const TreeDiagram& d);

// Deterministic structural key; Fork children appear in sorted order.
std::string canonical_key(const DiagramNode& node);

// All distinct legal trees at order k (1 <= k <= 8) with their signed
// integer coefficients, sorted by canonical key.
std::vector<TreeDiagram> enumerate_diagrams(int k);

// Bottom-up evaluation (Leaf -> Psi^(0), Vertex -> Q1, Fork -> 1/2 bracket,
// Homotopy -> h0), scaled by the coefficient.
SuperElement evaluate_diagram(const TreeDiagram& d, const PerturbationProblem& p);

// Norm of (sum of evaluated diagrams at order k) - Psi^(k) from the
// recurrence.
double diagram_sum_check(int k, const PerturbationProblem& p);

// False iff the root's child is a Fork; those trees never move the
// eigenvalue because Y0 G0 = 0.
bool is_energy_contributing(const TreeDiagram& d);

enum class DiagramFormat { Text, Dot };

// Text: preorder tokens, Fork children parenthesized ("R C L",
// "R F ( R C L ) ( R C L )"). Dot: a standalone digraph.
std::string render(const TreeDiagram& d, DiagramFormat format);

}  // namespace mcpt
