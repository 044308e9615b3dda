#include "mcpt/diagrams.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mcpt {

namespace {

const char* kind_token(DiagramNodeKind k) {
    switch (k) {
        case DiagramNodeKind::Homotopy: return "R";
        case DiagramNodeKind::Vertex: return "C";
        case DiagramNodeKind::Fork: return "F";
        case DiagramNodeKind::Leaf: return "L";
    }
    return "?";
}

const char* kind_label(DiagramNodeKind k) {
    switch (k) {
        case DiagramNodeKind::Homotopy: return "h0";
        case DiagramNodeKind::Vertex: return "Q1";
        case DiagramNodeKind::Fork: return "fork";
        case DiagramNodeKind::Leaf: return "psi0";
    }
    return "?";
}

void validate_node(const DiagramNode& node) {
    const std::size_t want =
        node.kind == DiagramNodeKind::Leaf ? 0 : node.kind == DiagramNodeKind::Fork ? 2 : 1;
    if (node.children.size() != want)
        throw std::invalid_argument("diagram: node has wrong child count");

    for (const DiagramNode& child : node.children) {
        const auto pk = node.kind;
        const auto ck = child.kind;
        const bool prohibited =
            (pk == DiagramNodeKind::Homotopy && ck == DiagramNodeKind::Homotopy) ||
            (pk == DiagramNodeKind::Homotopy && ck == DiagramNodeKind::Leaf) ||
            (pk == DiagramNodeKind::Vertex && ck == DiagramNodeKind::Vertex) ||
            (pk == DiagramNodeKind::Fork && ck == DiagramNodeKind::Leaf) ||
            (pk == DiagramNodeKind::Fork && ck == DiagramNodeKind::Vertex) ||
            (pk == DiagramNodeKind::Vertex && ck == DiagramNodeKind::Fork);
        if (prohibited)
            throw std::invalid_argument(std::string("diagram: prohibited adjacency ") +
                                        kind_token(pk) + "-" + kind_token(ck));
        validate_node(child);
    }
}

int count_vertices(const DiagramNode& node) {
    int c = node.kind == DiagramNodeKind::Vertex ? 1 : 0;
    for (const DiagramNode& child : node.children) c += count_vertices(child);
    return c;
}

DiagramNode make_node(DiagramNodeKind kind, std::vector<DiagramNode> children = {}) {
    DiagramNode n;
    n.kind = kind;
    n.children = std::move(children);
    return n;
}

// Canonicalized: Fork children sorted by key so isomorphic trees collide.
DiagramNode canonical_fork(DiagramNode a, DiagramNode b) {
    if (canonical_key(b) < canonical_key(a)) std::swap(a, b);
    return make_node(DiagramNodeKind::Fork, {std::move(a), std::move(b)});
}

struct Expansion {
    DiagramNode node;
    std::int64_t coefficient;
};

// Merged expansions of Psi^(k); index 0 holds the bare leaf.
std::vector<std::vector<Expansion>> expand_through(int order) {
    std::vector<std::vector<Expansion>> table;
    table.push_back({{make_node(DiagramNodeKind::Leaf), 1}});

    for (int k = 1; k <= order; ++k) {
        std::map<std::string, Expansion> merged;
        const auto add = [&](DiagramNode node, std::int64_t coeff) {
            std::string key = canonical_key(node);
            auto it = merged.find(key);
            if (it == merged.end())
                merged.emplace(std::move(key), Expansion{std::move(node), coeff});
            else
                it->second.coefficient += coeff;
        };

        // Linear term: -h0 Q1 Psi^(k-1).
        for (const Expansion& t : table[std::size_t(k - 1)]) {
            DiagramNode node = make_node(
                DiagramNodeKind::Homotopy,
                {make_node(DiagramNodeKind::Vertex, {t.node})});
            add(std::move(node), -t.coefficient);
        }
        // Bracket term: -h0 sum over ordered splits of Fork(Psi^(m), Psi^(k-m)).
        for (int m = 1; m <= k - 1; ++m) {
            for (const Expansion& t1 : table[std::size_t(m)]) {
                for (const Expansion& t2 : table[std::size_t(k - m)]) {
                    DiagramNode node = make_node(DiagramNodeKind::Homotopy,
                                                 {canonical_fork(t1.node, t2.node)});
                    add(std::move(node), -t1.coefficient * t2.coefficient);
                }
            }
        }

        std::vector<Expansion> level;
        level.reserve(merged.size());
        for (auto& [key, exp] : merged) level.push_back(std::move(exp));
        table.push_back(std::move(level));
    }
    return table;
}

SuperElement evaluate_node(const DiagramNode& node, const PerturbationProblem& p) {
    switch (node.kind) {
        case DiagramNodeKind::Leaf:
            return p.base_element();
        case DiagramNodeKind::Vertex:
            return apply_differential(p.q1, evaluate_node(node.children[0], p));
        case DiagramNodeKind::Homotopy:
            return homotopy_apply(p.homotopy, evaluate_node(node.children[0], p));
        case DiagramNodeKind::Fork:
            return 0.5 * bracket(evaluate_node(node.children[0], p),
                                 evaluate_node(node.children[1], p));
    }
    throw std::logic_error("diagram: unknown node kind");
}

void render_tokens(const DiagramNode& node, std::ostringstream& out, bool parenthesize) {
    if (parenthesize) out << "( ";
    out << kind_token(node.kind);
    const bool fork = node.kind == DiagramNodeKind::Fork;
    for (const DiagramNode& child : node.children) {
        out << ' ';
        render_tokens(child, out, fork);
    }
    if (parenthesize) out << " )";
}

int render_dot_nodes(const DiagramNode& node, std::ostringstream& out, int& next_id) {
    const int id = next_id++;
    out << "  n" << id << " [label=\"" << kind_label(node.kind) << "\"];\n";
    for (const DiagramNode& child : node.children) {
        const int cid = render_dot_nodes(child, out, next_id);
        out << "  n" << id << " -> n" << cid << ";\n";
    }
    return id;
}

}  // namespace

void validate_diagram(const TreeDiagram& d) {
    if (d.root.kind != DiagramNodeKind::Homotopy)
        throw std::invalid_argument("diagram: root must be the homotopy edge");
    validate_node(d.root);
    if (count_vertices(d.root) != d.order)
        throw std::invalid_argument("diagram: order does not match vertex count");
}

std::string canonical_key(const DiagramNode& node) {
    std::string key = kind_token(node.kind);
    if (node.children.empty()) return key;
    std::vector<std::string> parts;
    parts.reserve(node.children.size());
    for (const DiagramNode& child : node.children) parts.push_back(canonical_key(child));
    if (node.kind == DiagramNodeKind::Fork) std::sort(parts.begin(), parts.end());
    key += '(';
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) key += ',';
        key += parts[i];
    }
    key += ')';
    return key;
}

std::vector<TreeDiagram> enumerate_diagrams(int k) {
    if (k < 1 || k > 8)
        throw std::invalid_argument("enumerate_diagrams: order must be in [1, 8]");
    const auto table = expand_through(k);

    std::vector<TreeDiagram> out;
    out.reserve(table[std::size_t(k)].size());
    for (const auto& exp : table[std::size_t(k)]) {
        TreeDiagram d;
        d.root = exp.node;
        d.coefficient = exp.coefficient;
        d.order = k;
        out.push_back(std::move(d));
    }
    return out;
}

SuperElement evaluate_diagram(const TreeDiagram& d, const PerturbationProblem& p) {
    validate_diagram(d);
    return cxd(double(d.coefficient)) * evaluate_node(d.root, p);
}

double diagram_sum_check(int k, const PerturbationProblem& p) {
    const std::vector<TreeDiagram> diagrams = enumerate_diagrams(k);
    const std::size_t n = p.h0.dim();

    std::vector<SuperElement> values(diagrams.size(), SuperElement(n));
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(diagrams.size()); ++i)
        values[std::size_t(i)] = evaluate_diagram(diagrams[std::size_t(i)], p);

    SuperElement sum(n);
    for (const SuperElement& v : values) sum = sum + v;  // canonical order

    const PerturbationSeries series = corrections(p, k);
    SuperElement target(n);
    target.vec_theta = series.orders.back().vector;
    target.scal_c = series.orders.back().energy;
    return (sum - target).norm();
}

bool is_energy_contributing(const TreeDiagram& d) {
    validate_diagram(d);
    return d.root.children[0].kind != DiagramNodeKind::Fork;
}

std::string render(const TreeDiagram& d, DiagramFormat format) {
    validate_diagram(d);
    std::ostringstream out;
    if (format == DiagramFormat::Text) {
        render_tokens(d.root, out, false);
        return out.str();
    }
    out << "digraph diagram {\n";
    int next_id = 0;
    render_dot_nodes(d.root, out, next_id);
    out << "}\n";
    return out.str();
}

}  // namespace mcpt
