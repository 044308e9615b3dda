#include "mcpt/superspace.hpp"

#include <cmath>
#include <stdexcept>

#include "mcpt/errors.hpp"

namespace mcpt {

namespace {

void check_same_dim(const SuperElement& a, const SuperElement& b, const char* who) {
    if (a.dim() != b.dim()) throw DimensionError(std::string(who) + ": dimension mismatch");
}

void check_dim(const SuperElement& x, std::size_t n, const char* who) {
    if (x.dim() != n) throw DimensionError(std::string(who) + ": dimension mismatch");
}

}  // namespace

CVec& SuperElement::vec(Monomial m) {
    switch (m) {
        case Monomial::One: return vec_one;
        case Monomial::Theta: return vec_theta;
        case Monomial::C: return vec_c;
        case Monomial::CTheta: return vec_ctheta;
    }
    return vec_one;
}

const CVec& SuperElement::vec(Monomial m) const {
    return const_cast<SuperElement*>(this)->vec(m);
}

cxd& SuperElement::scal(Monomial m) {
    if (m == Monomial::One) return scal_one;
    if (m == Monomial::C) return scal_c;
    throw std::logic_error("SuperElement: no scalar slot for this monomial");
}

const cxd& SuperElement::scal(Monomial m) const {
    return const_cast<SuperElement*>(this)->scal(m);
}

SuperElement SuperElement::degree_part(int d) const {
    SuperElement out(dim());
    for (Monomial m : kAllMonomials)
        if (degree(m) == d) out.vec(m) = vec(m);
    if (d == 0) out.scal_one = scal_one;
    if (d == 1) out.scal_c = scal_c;
    return out;
}

double SuperElement::norm() const {
    double s = std::norm(scal_one) + std::norm(scal_c);
    for (Monomial m : kAllMonomials) {
        const CVec& v = vec(m);
        for (const cxd& z : v) s += std::norm(z);
    }
    return std::sqrt(s);
}

SuperElement operator+(const SuperElement& a, const SuperElement& b) {
    check_same_dim(a, b, "SuperElement+");
    SuperElement out(a.dim());
    for (Monomial m : kAllMonomials) out.vec(m) = vadd(a.vec(m), b.vec(m));
    out.scal_one = a.scal_one + b.scal_one;
    out.scal_c = a.scal_c + b.scal_c;
    return out;
}

SuperElement operator-(const SuperElement& a, const SuperElement& b) {
    check_same_dim(a, b, "SuperElement-");
    SuperElement out(a.dim());
    for (Monomial m : kAllMonomials) out.vec(m) = vsub(a.vec(m), b.vec(m));
    out.scal_one = a.scal_one - b.scal_one;
    out.scal_c = a.scal_c - b.scal_c;
    return out;
}

SuperElement operator*(cxd alpha, const SuperElement& x) {
    SuperElement out(x.dim());
    for (Monomial m : kAllMonomials) out.vec(m) = vscale(alpha, x.vec(m));
    out.scal_one = alpha * x.scal_one;
    out.scal_c = alpha * x.scal_c;
    return out;
}

SuperElement bracket(const SuperElement& a, const SuperElement& b) {
    check_same_dim(a, b, "bracket");
    SuperElement out(a.dim());
    // [a, b] = (a^T eps b; 0): eps couples a's vector half to b's scalar
    // half and vice versa, with Grassmann products taken in the written
    // order. The scalar part vanishes identically.
    constexpr double eps_vs = SymplecticPairing::entry[0][1];
    constexpr double eps_sv = SymplecticPairing::entry[1][0];
    for (Monomial mv : kAllMonomials) {
        for (Monomial ms : kScalarMonomials) {
            const MonomialTerm t = monomial_product(mv, ms);
            if (t.sign != 0)
                axpy(eps_vs * double(t.sign) * b.scal(ms), a.vec(mv), out.vec(t.value));
        }
    }
    for (Monomial ms : kScalarMonomials) {
        for (Monomial mv : kAllMonomials) {
            const MonomialTerm t = monomial_product(ms, mv);
            if (t.sign != 0)
                axpy(eps_sv * double(t.sign) * a.scal(ms), b.vec(mv), out.vec(t.value));
        }
    }
    return out;
}

SuperElement apply_differential(const DifferentialSpec& d, const SuperElement& x) {
    const std::size_t n = d.hamiltonian.dim();
    check_dim(x, n, "apply_differential");
    if (d.twist_vector && d.twist_vector->size() != n)
        throw DimensionError("apply_differential: twist vector dimension mismatch");

    SuperElement out(n);
    // c (H - shift) on each vector slot.
    for (Monomial m : kAllMonomials) {
        const MonomialTerm t = monomial_product(Monomial::C, m);
        if (t.sign == 0) continue;
        CVec w = d.hamiltonian.apply(x.vec(m));
        if (d.shift != cxd(0.0)) axpy(-d.shift, x.vec(m), w);
        axpy(cxd(double(t.sign)), w, out.vec(t.value));
    }
    // theta psi on each scalar slot (twisted form only).
    if (d.twist_vector) {
        for (Monomial ms : kScalarMonomials) {
            const MonomialTerm t = monomial_product(Monomial::Theta, ms);
            if (t.sign == 0) continue;
            axpy(double(t.sign) * x.scal(ms), *d.twist_vector, out.vec(t.value));
        }
    }
    return out;
}

SuperElement mc_residual(const HermitianOperator& h, const SuperElement& x) {
    check_dim(x, h.dim(), "mc_residual");
    const double off = x.degree_part(0).norm() + x.degree_part(2).norm();
    if (off > 1e-12 * (1.0 + x.norm()))
        throw DimensionError("mc_residual: input must be a degree-1 element");
    const DifferentialSpec q{h, cxd(0.0), std::nullopt};
    return apply_differential(q, x) + 0.5 * bracket(x, x);
}

DifferentialSpec twist(const HermitianOperator& h, const SuperElement& mc,
                       std::optional<double> tol) {
    check_dim(mc, h.dim(), "twist");
    const double scale = (1.0 + mc.norm()) * (1.0 + max_abs(h.matrix()));
    const double tolerance = tol.value_or(1e-8 * scale);
    if (nrm2(mc.vec_c) > tolerance)
        throw std::invalid_argument(
            "twist: element must be in the normal form (theta psi; c E) with zero c-component");
    const double res = mc_residual(h, mc).norm();
    if (res > tolerance)
        throw std::invalid_argument("twist: Maurer-Cartan residual " + std::to_string(res) +
                                    " exceeds tolerance " + std::to_string(tolerance));
    DifferentialSpec out{h, cxd(0.0), std::nullopt};
    if (nrm2(mc.vec_theta) == 0.0 && mc.scal_c == cxd(0.0)) return out;  // trivial twist
    out.shift = mc.scal_c;
    out.twist_vector = mc.vec_theta;
    return out;
}

cxd expm1_over(cxd z) {
    // (exp(-z) - 1)/z; removable singularity at z = 0.
    if (std::abs(z) < 1e-4) {
        cxd acc = 0.0, term = 1.0;
        for (int k = 1; k <= 8; ++k) {
            term *= -z / double(k);
            acc += term;
        }
        return (z == cxd(0.0)) ? cxd(-1.0) : acc / z;
    }
    return (std::exp(-z) - 1.0) / z;
}

namespace {
// (1 - exp(-z))/z, the series factor of the affine-representation
// exponential; equals -expm1_over(z) and is 1 at z = 0.
cxd phi1(cxd z) { return -expm1_over(z); }
}  // namespace

SuperElement gauge_act(const GaugeElement& g, const SuperElement& mc, const HermitianOperator& h) {
    const std::size_t n = h.dim();
    check_dim(mc, n, "gauge_act");
    if (g.vector.size() != n) throw DimensionError("gauge_act: gauge vector dimension mismatch");

    const cxd e = std::exp(-g.scalar);
    const cxd f = expm1_over(g.scalar);

    SuperElement out(n);
    out.vec_theta = vscale(e, mc.vec_theta);
    CVec hphi = h.apply(g.vector);
    axpy(-mc.scal_c, g.vector, hphi);  // (H - E) phi_g with the element's own E
    out.vec_c = vadd(vscale(e, mc.vec_c), vscale(f, hphi));
    out.scal_c = mc.scal_c;
    return out;
}

GaugeElement group_product(const GaugeElement& g1, const GaugeElement& g2) {
    if (g1.vector.size() != g2.vector.size())
        throw DimensionError("group_product: dimension mismatch");
    // exp of the representation is [[exp(-E) I, phi1(E) psi], [0, 1]]; the
    // product stays in that form and the logarithm is read off the blocks.
    const cxd a1 = std::exp(-g1.scalar);
    const cxd alpha = a1 * std::exp(-g2.scalar);
    CVec v = vscale(phi1(g1.scalar), g1.vector);
    axpy(a1 * phi1(g2.scalar), g2.vector, v);

    if (alpha.real() < 0.0 && std::abs(alpha.imag()) <= 1e-14 * std::abs(alpha))
        throw std::domain_error(
            "group_product: exp(-(E1+E2)) lies on the negative real axis (logarithm branch cut)");
    const cxd total = -std::log(alpha);
    return GaugeElement{vscale(1.0 / phi1(total), v), total};
}

GaugeElement gauge_inverse(const GaugeElement& g) {
    GaugeElement out;
    out.vector = vscale(-1.0, g.vector);
    out.scalar = -g.scalar;
    return out;
}

SuperElement cohomology_project(const SuperElement& x, const CVec& psi0) {
    if (x.dim() != psi0.size()) throw DimensionError("cohomology_project: dimension mismatch");
    SuperElement out(x.dim());
    out.vec_one = vscale(dotc(psi0, x.vec_one), psi0);
    out.vec_c = vscale(dotc(psi0, x.vec_c), psi0);
    return out;
}

}  // namespace mcpt
