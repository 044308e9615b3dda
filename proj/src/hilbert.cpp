#include "mcpt/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mcpt/errors.hpp"

namespace mcpt {

EigenDatum select_eigenpair(const HermitianOperator& h0, const EigenSelector& sel,
                            std::optional<double> kernel_tol) {
    const Eigh eig = eigh(h0.matrix());
    const std::size_t n = h0.dim();

    double spectral_norm = 0.0;
    for (double w : eig.values) spectral_norm = std::max(spectral_norm, std::abs(w));
    const double tol = kernel_tol.value_or(1e-9 * spectral_norm);

    std::size_t pick = 0;
    if (sel.kind == EigenSelector::Kind::Index) {
        if (sel.index < 0 || static_cast<std::size_t>(sel.index) >= n)
            throw std::out_of_range("select_eigenpair: index " + std::to_string(sel.index) +
                                    " out of range for dimension " + std::to_string(n));
        pick = static_cast<std::size_t>(sel.index);
    } else {
        double best = std::abs(eig.values[0] - sel.energy);
        for (std::size_t m = 1; m < n; ++m) {
            const double d = std::abs(eig.values[m] - sel.energy);
            if (d < best) {
                best = d;
                pick = m;
            }
        }
    }

    int multiplicity = 0;
    for (double w : eig.values)
        if (std::abs(w - eig.values[pick]) <= tol) ++multiplicity;
    if (multiplicity > 1)
        throw DegenerateLevel("select_eigenpair: level " + std::to_string(eig.values[pick]) +
                              " has kernel multiplicity " + std::to_string(multiplicity));

    CVec v = eig.vectors.column(pick);
    const double nv = nrm2(v);
    if (nv > 0.0)
        for (cxd& z : v) z /= nv;

    EigenDatum out;
    out.energy = eig.values[pick];
    out.vector = std::move(v);
    out.kernel_dim = multiplicity;
    out.kernel_tol = tol;
    return out;
}

Homotopy reduced_resolvent(const HermitianOperator& h0, const EigenDatum& ed) {
    if (ed.kernel_dim != 1)
        throw DegenerateLevel("reduced_resolvent: kernel multiplicity " +
                              std::to_string(ed.kernel_dim) + " (need 1)");
    if (ed.vector.size() != h0.dim())
        throw DimensionError("reduced_resolvent: dimension mismatch");

    const Eigh eig = eigh(h0.matrix());
    const std::size_t n = h0.dim();

    // G0 = sum over the non-kernel spectrum of |m><m| / (E_m - E0); built as
    // (V diag(w)) V^dagger from the decomposition.
    CMat scaled = eig.vectors;
    for (std::size_t m = 0; m < n; ++m) {
        const double gap = eig.values[m] - ed.energy;
        const cxd w = (std::abs(gap) <= ed.kernel_tol) ? cxd(0.0) : cxd(1.0 / gap);
        for (std::size_t i = 0; i < n; ++i) scaled(i, m) *= w;
    }
    Homotopy out;
    out.resolvent = matmul(scaled, adjoint(eig.vectors));
    out.source = ed;
    return out;
}

SuperElement homotopy_apply(const Homotopy& h, const SuperElement& x) {
    const std::size_t n = h.resolvent.rows();
    if (x.dim() != n) throw DimensionError("homotopy_apply: dimension mismatch");

    SuperElement out(n);
    for (Monomial m : kAllMonomials) {
        const MonomialTerm tc = d_c(m);
        if (tc.sign != 0)
            axpy(cxd(double(tc.sign)), matvec(h.resolvent, x.vec(m)), out.vec(tc.value));
        const MonomialTerm tt = d_theta(m);
        if (tt.sign != 0)
            out.scal(tt.value) += double(tt.sign) * dotc(h.source.vector, x.vec(m));
    }
    return out;
}

double homotopy_identity_residual(const HermitianOperator& h0, const Homotopy& hom,
                                  const SuperElement& x) {
    DifferentialSpec qt{h0, cxd(0.0), std::nullopt};
    qt.shift = hom.source.energy;
    qt.twist_vector = hom.source.vector;

    const SuperElement anti = apply_differential(qt, homotopy_apply(hom, x)) +
                              homotopy_apply(hom, apply_differential(qt, x));
    const SuperElement expected = x - cohomology_project(x, hom.source.vector);
    return (anti - expected).norm();
}

double homotopy_identity_residual(const HermitianOperator& h0, const EigenDatum& ed,
                                  const SuperElement& x) {
    return homotopy_identity_residual(h0, reduced_resolvent(h0, ed), x);
}

}  // namespace mcpt
