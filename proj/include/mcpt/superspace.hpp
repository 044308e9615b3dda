// superspace.hpp — the graded-algebra kernel: elements of the eigensystem
// superspace, Grassmann bookkeeping, the bracket, differentials, twisting,
// Maurer-Cartan residuals, and the gauge-group action.
//
// An element carries four Hilbert-space vectors (coefficients of the
// monomials 1, theta, c, c*theta) and two complex scalars (coefficients of
// 1 and c). Monomials are kept in that fixed normal order; all products
// reduce to it with explicit signs. Grassmann derivatives are LEFT
// derivatives throughout; the homotopy anticommutator identity test is the
// arbiter for the sign conventions.
//
// All operations are pure functions of their inputs; values are immutable
// after construction and safe to share across threads for reading.

#pragma once

#include <cstddef>
#include <optional>

#include "mcpt/hermitian.hpp"
#include "mcpt/linalg.hpp"

namespace mcpt {

// ------------------------------ monomials -----------------------------------

enum class Monomial : unsigned char { One = 0, Theta = 1, C = 2, CTheta = 3 };

inline constexpr Monomial kAllMonomials[] = {Monomial::One, Monomial::Theta, Monomial::C,
                                             Monomial::CTheta};
inline constexpr Monomial kScalarMonomials[] = {Monomial::One, Monomial::C};

constexpr int degree(Monomial m) noexcept {
    switch (m) {
        case Monomial::One: return 0;
        case Monomial::Theta:
        case Monomial::C: return 1;
        case Monomial::CTheta: return 2;
    }
    return 0;
}

constexpr int parity(Monomial m) noexcept { return degree(m) % 2; }

// A signed monomial; sign == 0 means the product (or derivative) vanished.
struct MonomialTerm {
    int sign = 0;
    Monomial value = Monomial::One;
};

// Product a*b reduced to normal order. theta*c = -c*theta; theta^2 = c^2 = 0;
// anything of total degree > 2 vanishes.
constexpr MonomialTerm monomial_product(Monomial a, Monomial b) noexcept {
    if (a == Monomial::One) return {1, b};
    if (b == Monomial::One) return {1, a};
    if (a == Monomial::Theta && b == Monomial::C) return {-1, Monomial::CTheta};
    if (a == Monomial::C && b == Monomial::Theta) return {1, Monomial::CTheta};
    return {0, Monomial::One};
}

// Left derivatives with respect to theta and c.
constexpr MonomialTerm d_theta(Monomial m) noexcept {
    switch (m) {
        case Monomial::Theta: return {1, Monomial::One};
        case Monomial::CTheta: return {-1, Monomial::C};
        default: return {0, Monomial::One};
    }
}

constexpr MonomialTerm d_c(Monomial m) noexcept {
    switch (m) {
        case Monomial::C: return {1, Monomial::One};
        case Monomial::CTheta: return {1, Monomial::Theta};
        default: return {0, Monomial::One};
    }
}

// The fixed antisymmetric 2x2 pairing behind the bracket: it couples the
// (vector, scalar) halves of two elements. eps^2 = -1.
struct SymplecticPairing {
    static constexpr double entry[2][2] = {{0.0, 1.0}, {-1.0, 0.0}};
};

// ------------------------------ elements ------------------------------------

// Element of the superspace: vector part in C[theta,c] (x) H, scalar part in
// C[c].
struct SuperElement {
    CVec vec_one, vec_theta, vec_c, vec_ctheta;
    cxd scal_one{0.0}, scal_c{0.0};

    SuperElement() = default;
    explicit SuperElement(std::size_t dim)
        : vec_one(dim), vec_theta(dim), vec_c(dim), vec_ctheta(dim) {}

    std::size_t dim() const noexcept { return vec_one.size(); }

    CVec& vec(Monomial m);
    const CVec& vec(Monomial m) const;
    cxd& scal(Monomial m);              // One or C only
    const cxd& scal(Monomial m) const;  // One or C only

    // Projection onto total degree d in {0, 1, 2}.
    SuperElement degree_part(int d) const;
    double norm() const;
};

SuperElement operator+(const SuperElement& a, const SuperElement& b);
SuperElement operator-(const SuperElement& a, const SuperElement& b);
SuperElement operator*(cxd alpha, const SuperElement& x);

// Graded-antisymmetric bracket; the scalar part of the result is
// identically zero.
SuperElement bracket(const SuperElement& a, const SuperElement& b);

// ---------------------------- differentials ---------------------------------

// Q = c H when untwisted; the twisted form acts as c (H - E) on the vector
// part plus theta psi on the scalar part. Applying twice annihilates any
// element (numerically, for a valid twist).
struct DifferentialSpec {
    HermitianOperator hamiltonian;
    cxd shift{0.0};
    std::optional<CVec> twist_vector;

    bool twisted() const noexcept { return twist_vector.has_value(); }
};

SuperElement apply_differential(const DifferentialSpec& d, const SuperElement& x);

// Q x + 1/2 [x, x] for a degree-1 element; zero exactly on Maurer-Cartan
// elements. Throws DimensionError on non-degree-1 input.
SuperElement mc_residual(const HermitianOperator& h, const SuperElement& x);

// Build the twisted differential from a Maurer-Cartan element in the normal
// form (theta psi; c E). Rejects elements with a nonzero c-component in the
// vector part and elements whose MC residual exceeds the tolerance.
DifferentialSpec twist(const HermitianOperator& h, const SuperElement& mc,
                       std::optional<double> tol = std::nullopt);

// ------------------------------- gauge --------------------------------------

// Degree-0 element (phi; E) viewed as a gauge-group member.
struct GaugeElement {
    CVec vector;
    cxd scalar{0.0};
};

// Left action of the gauge group on Maurer-Cartan elements: rescales the
// theta-component by exp(-E) and shifts the c-component along im(H - E).
// The (exp(-E)-1)/E factor is evaluated by series near E = 0.
SuperElement gauge_act(const GaugeElement& g, const SuperElement& mc, const HermitianOperator& h);

// Group product computed in the faithful affine matrix representation
// (psi, E) -> [[-E I, psi], [0, 0]]: exponentiate both factors, multiply,
// take the logarithm. Throws std::domain_error when exp(-(E1+E2)) lands on
// the negative real axis, where the principal logarithm branch is ambiguous.
GaugeElement group_product(const GaugeElement& g1, const GaugeElement& g2);

// Inverse via negating the representation logarithm.
GaugeElement gauge_inverse(const GaugeElement& g);

// Stable (exp(-z) - 1)/z, by series for small |z|.
cxd expm1_over(cxd z);

// --------------------------- cohomology -------------------------------------

// Projector onto the cohomology of the twisted differential: keeps the
// psi0-components of the 1- and c-slots of the vector part and kills
// everything else (including the scalar part). Idempotent.
SuperElement cohomology_project(const SuperElement& x, const CVec& psi0);

}  // namespace mcpt
