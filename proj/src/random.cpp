#include "mcpt/random.hpp"

namespace mcpt::rng {

cxd random_complex(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double re = u(gen);
    const double im = u(gen);
    return {re, im};
}

CVec random_vec(std::size_t n, std::mt19937_64& gen) {
    CVec v(n);
    for (cxd& z : v) z = random_complex(gen);
    return v;
}

CMat random_hermitian(std::size_t n, std::mt19937_64& gen) {
    CMat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = random_complex(gen);
    CMat h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return h;
}

SuperElement random_super_element(std::size_t n, std::mt19937_64& gen) {
    SuperElement x(n);
    for (Monomial m : kAllMonomials) x.vec(m) = random_vec(n, gen);
    x.scal_one = random_complex(gen);
    x.scal_c = random_complex(gen);
    return x;
}

SuperElement random_homogeneous(std::size_t n, int parity_value, std::mt19937_64& gen) {
    SuperElement x(n);
    for (Monomial m : kAllMonomials)
        if (parity(m) == parity_value) x.vec(m) = random_vec(n, gen);
    if (parity_value == 0) x.scal_one = random_complex(gen);
    if (parity_value == 1) x.scal_c = random_complex(gen);
    return x;
}

SuperElement random_degree1(std::size_t n, std::mt19937_64& gen) {
    SuperElement x(n);
    x.vec_theta = random_vec(n, gen);
    x.vec_c = random_vec(n, gen);
    x.scal_c = random_complex(gen);
    return x;
}

GaugeElement random_gauge_element(std::size_t n, double scalar_bound, std::mt19937_64& gen) {
    GaugeElement g;
    g.vector = random_vec(n, gen);
    g.scalar = scalar_bound * random_complex(gen) / std::sqrt(2.0);
    return g;
}

}  // namespace mcpt::rng
