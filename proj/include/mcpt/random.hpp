// random.hpp — seeded generators for matrices, superspace elements, and
// gauge elements. Used by the verify pipeline and the test suites; all
// draws come from a named PRNG (mt19937_64) so runs are reproducible.

#pragma once

#include <cstdint>
#include <random>

#include "mcpt/linalg.hpp"
#include "mcpt/superspace.hpp"

namespace mcpt::rng {

inline std::mt19937_64 make(std::uint64_t seed) { return std::mt19937_64(seed); }

cxd random_complex(std::mt19937_64& gen);  // uniform on [-1,1]^2
CVec random_vec(std::size_t n, std::mt19937_64& gen);
CMat random_hermitian(std::size_t n, std::mt19937_64& gen);

SuperElement random_super_element(std::size_t n, std::mt19937_64& gen);
// Parity-homogeneous element (0 = even slots only, 1 = odd slots only).
SuperElement random_homogeneous(std::size_t n, int parity, std::mt19937_64& gen);
// Generic degree-1 element (theta psi + c phi; c E).
SuperElement random_degree1(std::size_t n, std::mt19937_64& gen);

GaugeElement random_gauge_element(std::size_t n, double scalar_bound, std::mt19937_64& gen);

}  // namespace mcpt::rng
