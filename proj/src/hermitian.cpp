#include "mcpt/hermitian.hpp"

#include <algorithm>
#include <cmath>

#include "mcpt/errors.hpp"

namespace mcpt {

HermitianOperator::HermitianOperator(CMat m, std::optional<double> hermiticity_tol)
    : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() == 0)
        throw DimensionError("HermitianOperator: matrix must be square and non-empty");
    tol_ = hermiticity_tol.value_or(1e-10 * std::max(1.0, max_abs(mat_)));

    double worst = 0.0;
    std::size_t wi = 0, wj = 0;
    for (std::size_t i = 0; i < mat_.rows(); ++i) {
        for (std::size_t j = i; j < mat_.cols(); ++j) {
            const double d = std::abs(mat_(i, j) - std::conj(mat_(j, i)));
            if (d > worst) {
                worst = d;
                wi = i;
                wj = j;
            }
        }
    }
    if (worst > tol_) throw HermiticityError(wi, wj, worst, tol_);
}

}  // namespace mcpt
