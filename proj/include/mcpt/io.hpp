// io.hpp — problem-file serialization. A problem is a single JSON document
//   {"dim": n, "h0": [[re, im], ...], "v": [[re, im], ...]}
// with both matrices stored row-major as n^2 [re, im] pairs.

#pragma once

#include <string>

#include "mcpt/models.hpp"

namespace mcpt::io {

models::OperatorPair load_problem(const std::string& path);
void save_problem(const std::string& path, const HermitianOperator& h0,
                  const HermitianOperator& v);

// Shortest round-trip decimal form of a double (%.17g), locale-independent.
std::string format_double(double x);

}  // namespace mcpt::io
