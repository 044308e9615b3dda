// hilbert.hpp — finite-dimensional Hilbert-space backend: eigenpair
// selection, kernel detection, the reduced resolvent, the projection
// functional, and the assembled homotopy with its defining anticommutator
// identity.

#pragma once

#include <cstddef>
#include <optional>

#include "mcpt/hermitian.hpp"
#include "mcpt/superspace.hpp"

namespace mcpt {

// Selected eigenpair with the kernel multiplicity of H0 - E0.
struct EigenDatum {
    double energy = 0.0;
    CVec vector;     // unit-normalized, deterministic phase
    int kernel_dim = 1;
    double kernel_tol = 0.0;
};

struct EigenSelector {
    enum class Kind { Index, NearestEnergy };
    Kind kind = Kind::Index;
    int index = 0;
    double energy = 0.0;

    static EigenSelector by_index(int k) { return {Kind::Index, k, 0.0}; }
    static EigenSelector nearest_to(double e) { return {Kind::NearestEnergy, 0, e}; }
};

// Full Hermitian eigendecomposition, then pick the requested pair. The
// kernel tolerance defaults to 1e-9 * ||H||_2; a multiplicity above one
// raises DegenerateLevel.
EigenDatum select_eigenpair(const HermitianOperator& h0, const EigenSelector& sel,
                            std::optional<double> kernel_tol = std::nullopt);

// The pair (G0, Y0) assembled into the homotopy h0. G0 inverts H0 - E0 on
// the orthogonal complement of its kernel and vanishes on the kernel; Y0 is
// the projection functional phi -> (psi0, phi).
struct Homotopy {
    CMat resolvent;    // G0, dense
    EigenDatum source; // supplies psi0 for Y0

    // Y0 as a covector: the row whose plain (bilinear) pairing with phi
    // gives (psi0, phi) in the conjugate-first inner product.
    CVec functional() const {
        CVec row(source.vector.size());
        for (std::size_t i = 0; i < row.size(); ++i) row[i] = std::conj(source.vector[i]);
        return row;
    }
};

Homotopy reduced_resolvent(const HermitianOperator& h0, const EigenDatum& ed);

// h = (d_c G0, 0; d_theta Y0, 0) with left-derivative Grassmann signs;
// squares to zero.
SuperElement homotopy_apply(const Homotopy& h, const SuperElement& x);

// || (Qt h + h Qt) x - (x - Pi x) || for the twisted differential built from
// the eigenpair. The overload taking a precomputed homotopy avoids repeated
// eigendecompositions in sweeps.
double homotopy_identity_residual(const HermitianOperator& h0, const EigenDatum& ed,
                                  const SuperElement& x);
double homotopy_identity_residual(const HermitianOperator& h0, const Homotopy& hom,
                                  const SuperElement& x);

}  // namespace mcpt
