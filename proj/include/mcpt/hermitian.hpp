// hermitian.hpp — validated dense self-adjoint operator.

#pragma once

#include <cstddef>
#include <optional>

#include "mcpt/linalg.hpp"

namespace mcpt {

// Dense complex self-adjoint matrix. Construction rejects matrices whose
// worst entry-wise deviation ||M - M^dagger||_max exceeds the tolerance;
// the default scales with the largest entry.
class HermitianOperator {
public:
    explicit HermitianOperator(CMat m, std::optional<double> hermiticity_tol = std::nullopt);

    std::size_t dim() const noexcept { return mat_.rows(); }
    const CMat& matrix() const noexcept { return mat_; }
    double hermiticity_tol() const noexcept { return tol_; }

    CVec apply(const CVec& x) const { return matvec(mat_, x); }

private:
    CMat mat_;
    double tol_ = 0.0;
};

}  // namespace mcpt
