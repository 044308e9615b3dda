#include "mcpt/models.hpp"

#include <cmath>
#include <stdexcept>

#include "mcpt/errors.hpp"
#include "mcpt/io.hpp"
#include "mcpt/linalg.hpp"
#include "mcpt/random.hpp"

namespace mcpt::models {

OperatorPair fd1d(std::size_t n, double a, double b, std::span<const double> v0,
                  std::span<const double> v1) {
    if (n < 2) throw std::invalid_argument("fd1d: need n >= 2 grid points");
    if (!(b > a)) throw std::invalid_argument("fd1d: need b > a");
    if (v0.size() != n || v1.size() != n)
        throw DimensionError("fd1d: potential sample arrays must have length n");
    for (double s : v0)
        if (!std::isfinite(s)) throw std::invalid_argument("fd1d: non-finite sample in v0");
    for (double s : v1)
        if (!std::isfinite(s)) throw std::invalid_argument("fd1d: non-finite sample in v1");

    const double dx = (b - a) / double(n + 1);
    const double kin = 1.0 / (2.0 * dx * dx);

    CMat h0(n, n), v(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        h0(i, i) = 2.0 * kin + v0[i];
        if (i + 1 < n) {
            h0(i, i + 1) = -kin;
            h0(i + 1, i) = -kin;
        }
        v(i, i) = v1[i];
    }
    return {HermitianOperator(std::move(h0)), HermitianOperator(std::move(v))};
}

OperatorPair oscillator_quartic(std::size_t basis) {
    if (basis < 8) throw std::invalid_argument("oscillator_quartic: need basis >= 8");

    CMat h0(basis, basis);
    for (std::size_t k = 0; k < basis; ++k) h0(k, k) = double(k) + 0.5;

    // x = (a + a^dagger)/sqrt(2), tridiagonal in the number basis.
    CMat x(basis, basis);
    for (std::size_t k = 0; k + 1 < basis; ++k) {
        const double e = std::sqrt(double(k + 1) / 2.0);
        x(k, k + 1) = e;
        x(k + 1, k) = e;
    }
    const CMat x2 = matmul(x, x);
    CMat v = matmul(x2, x2);
    return {HermitianOperator(std::move(h0)), HermitianOperator(std::move(v))};
}

OperatorPair dense_from_file(const std::string& path) { return io::load_problem(path); }

OperatorPair random_dense(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_dense: need n >= 1");
    auto gen = rng::make(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    // Spectrum on a jittered lattice: consecutive gaps in [0.5, 1.0).
    std::vector<double> levels(n);
    double e = u(gen);
    for (std::size_t m = 0; m < n; ++m) {
        levels[m] = e;
        e += 0.5 + 0.5 * u(gen);
    }

    // Conjugate by the eigenbasis of a random Hermitian matrix.
    const Eigh basis = eigh(rng::random_hermitian(n, gen));
    CMat scaled = basis.vectors;
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t i = 0; i < n; ++i) scaled(i, m) *= levels[m];
    CMat h0raw = matmul(scaled, adjoint(basis.vectors));
    CMat h0(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h0(i, j) = 0.5 * (h0raw(i, j) + std::conj(h0raw(j, i)));

    // Unit spectral norm perturbation.
    CMat vraw = rng::random_hermitian(n, gen);
    const Eigh ve = eigh(vraw);
    double vnorm = 0.0;
    for (double w : ve.values) vnorm = std::max(vnorm, std::abs(w));
    if (vnorm == 0.0) vnorm = 1.0;
    CMat v(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v(i, j) = vraw(i, j) / vnorm;

    return {HermitianOperator(std::move(h0)), HermitianOperator(std::move(v))};
}

}  // namespace mcpt::models
