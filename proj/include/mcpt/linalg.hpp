// linalg.hpp — dense complex vectors/matrices and the hot kernels used
// throughout the library.
//
// The parallel kernels split work by output row only; every inner reduction
// runs in a fixed serial order, so results are bitwise identical to the
// mcpt::ref reference implementations for any OMP thread count. The ref
// versions are kept for testing and benchmarking.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace mcpt {

using cxd = std::complex<double>;
using CVec = std::vector<cxd>;

// Dense row-major complex matrix.
class CMat {
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMat identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    cxd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cxd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    cxd* data() noexcept { return data_.data(); }
    const cxd* data() const noexcept { return data_.data(); }

    CVec column(std::size_t j) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cxd> data_;
};

// ----------------------------- kernels --------------------------------------

// Parallel over rows when the problem is large enough to pay for it.
CVec matvec(const CMat& a, const CVec& x);
CMat matmul(const CMat& a, const CMat& b);

namespace ref {
// Serial reference implementations; the parallel kernels must agree bitwise.
CVec matvec(const CMat& a, const CVec& x);
CMat matmul(const CMat& a, const CMat& b);
}  // namespace ref

CMat adjoint(const CMat& a);
CMat madd(const CMat& a, const CMat& b);
CMat msub(const CMat& a, const CMat& b);
CMat mscale(cxd alpha, const CMat& a);
double max_abs(const CMat& a);
double frobenius(const CMat& a);

// Inner product, conjugate-linear in the FIRST argument.
cxd dotc(const CVec& x, const CVec& y);
double nrm2(const CVec& x);
void axpy(cxd alpha, const CVec& x, CVec& y);  // y += alpha * x
CVec vscale(cxd alpha, const CVec& x);
CVec vadd(const CVec& x, const CVec& y);
CVec vsub(const CVec& x, const CVec& y);

// ------------------------- LAPACK-backed solvers -----------------------------

// Hermitian eigendecomposition, eigenvalues ascending, eigenvectors as
// columns. Each column's phase is fixed deterministically: the first entry
// of largest magnitude is made real positive.
struct Eigh {
    std::vector<double> values;
    CMat vectors;
};
Eigh eigh(const CMat& hermitian);

// Least squares min ||A X - B||_F via QR (zgels). Requires rows >= cols.
CMat lstsq(CMat a, CMat b);

}  // namespace mcpt
