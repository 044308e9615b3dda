#include "mcpt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mcpt {

namespace {
// Below this many rows the OMP fork costs more than the loop body.
constexpr std::size_t kOmpMinRows = 64;

void check_matvec_dims(const CMat& a, const CVec& x) {
    if (a.cols() != x.size())
        throw std::invalid_argument("matvec: dimension mismatch");
}

void check_matmul_dims(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: dimension mismatch");
}
}  // namespace

CMat CMat::identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CVec CMat::column(std::size_t j) const {
    CVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

CVec matvec(const CMat& a, const CVec& x) {
    check_matvec_dims(a, x);
    const std::size_t m = a.rows(), n = a.cols();
    CVec y(m);
#pragma omp parallel for schedule(static) if (m >= kOmpMinRows)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
        cxd acc = 0.0;
        const cxd* row = a.data() + static_cast<std::size_t>(i) * n;
        for (std::size_t k = 0; k < n; ++k) acc += row[k] * x[k];
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

CMat matmul(const CMat& a, const CMat& b) {
    check_matmul_dims(a, b);
    const std::size_t m = a.rows(), n = b.cols(), kk = a.cols();
    CMat c(m, n);
#pragma omp parallel for schedule(static) if (m >= kOmpMinRows)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
        const cxd* arow = a.data() + static_cast<std::size_t>(i) * kk;
        cxd* crow = c.data() + static_cast<std::size_t>(i) * n;
        for (std::size_t j = 0; j < n; ++j) {
            cxd acc = 0.0;
            for (std::size_t k = 0; k < kk; ++k) acc += arow[k] * b(k, j);
            crow[j] = acc;
        }
    }
    return c;
}

namespace ref {

CVec matvec(const CMat& a, const CVec& x) {
    check_matvec_dims(a, x);
    const std::size_t m = a.rows(), n = a.cols();
    CVec y(m);
    for (std::size_t i = 0; i < m; ++i) {
        cxd acc = 0.0;
        const cxd* row = a.data() + i * n;
        for (std::size_t k = 0; k < n; ++k) acc += row[k] * x[k];
        y[i] = acc;
    }
    return y;
}

CMat matmul(const CMat& a, const CMat& b) {
    check_matmul_dims(a, b);
    const std::size_t m = a.rows(), n = b.cols(), kk = a.cols();
    CMat c(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        const cxd* arow = a.data() + i * kk;
        cxd* crow = c.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            cxd acc = 0.0;
            for (std::size_t k = 0; k < kk; ++k) acc += arow[k] * b(k, j);
            crow[j] = acc;
        }
    }
    return c;
}

}  // namespace ref

CMat adjoint(const CMat& a) {
    CMat b(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) b(j, i) = std::conj(a(i, j));
    return b;
}

CMat madd(const CMat& a, const CMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("madd: dimension mismatch");
    CMat c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) c.data()[i] = a.data()[i] + b.data()[i];
    return c;
}

CMat msub(const CMat& a, const CMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("msub: dimension mismatch");
    CMat c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) c.data()[i] = a.data()[i] - b.data()[i];
    return c;
}

CMat mscale(cxd alpha, const CMat& a) {
    CMat c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) c.data()[i] = alpha * a.data()[i];
    return c;
}

double max_abs(const CMat& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) m = std::max(m, std::abs(a.data()[i]));
    return m;
}

double frobenius(const CMat& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) s += std::norm(a.data()[i]);
    return std::sqrt(s);
}

cxd dotc(const CVec& x, const CVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dotc: dimension mismatch");
    cxd acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double nrm2(const CVec& x) {
    double s = 0.0;
    for (const cxd& v : x) s += std::norm(v);
    return std::sqrt(s);
}

void axpy(cxd alpha, const CVec& x, CVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("axpy: dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

CVec vscale(cxd alpha, const CVec& x) {
    CVec y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = alpha * x[i];
    return y;
}

CVec vadd(const CVec& x, const CVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("vadd: dimension mismatch");
    CVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
    return z;
}

CVec vsub(const CVec& x, const CVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("vsub: dimension mismatch");
    CVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
    return z;
}

Eigh eigh(const CMat& hermitian) {
    if (hermitian.rows() != hermitian.cols())
        throw std::invalid_argument("eigh: matrix must be square");
    const lapack_int n = static_cast<lapack_int>(hermitian.rows());
    Eigh out;
    out.vectors = hermitian;
    out.values.resize(hermitian.rows());
    lapack_int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'L', n, out.vectors.data(), n,
                                     out.values.data());
    if (info != 0) throw std::runtime_error("eigh: zheevd failed, info=" + std::to_string(info));

    // Deterministic phase: first entry of largest magnitude made real positive.
    for (std::size_t j = 0; j < hermitian.rows(); ++j) {
        std::size_t imax = 0;
        double amax = -1.0;
        for (std::size_t i = 0; i < hermitian.rows(); ++i) {
            const double a = std::abs(out.vectors(i, j));
            if (a > amax) {
                amax = a;
                imax = i;
            }
        }
        if (amax > 0.0) {
            const cxd phase = std::conj(out.vectors(imax, j)) / amax;
            for (std::size_t i = 0; i < hermitian.rows(); ++i) out.vectors(i, j) *= phase;
        }
    }
    return out;
}

CMat lstsq(CMat a, CMat b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("lstsq: dimension mismatch");
    if (a.rows() < a.cols()) throw std::invalid_argument("lstsq: underdetermined system");
    const lapack_int m = static_cast<lapack_int>(a.rows());
    const lapack_int n = static_cast<lapack_int>(a.cols());
    const lapack_int nrhs = static_cast<lapack_int>(b.cols());
    lapack_int info = LAPACKE_zgels(LAPACK_ROW_MAJOR, 'N', m, n, nrhs, a.data(), n, b.data(), nrhs);
    if (info != 0) throw std::runtime_error("lstsq: zgels failed, info=" + std::to_string(info));
    CMat x(a.cols(), b.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) = b(i, j);
    return x;
}

}  // namespace mcpt
