#ifndef LIESURF_EXACT_LINALG_HPP
#define LIESURF_EXACT_LINALG_HPP

// Exact linear algebra over the rationals. Elimination is fraction-free
// (Bareiss) on integer rows, so pivots and ranks never depend on tolerances.

#include <cstddef>
#include <vector>

#include "liesurf/expr.hpp"

namespace liesurf {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

std::size_t exact_rank(const RationalMatrix& rows, std::size_t columns);

/// Basis of {x : A x = 0}. Each basis vector is a primitive integer vector
/// whose first nonzero entry is positive.
std::vector<RationalVector> exact_nullspace(const RationalMatrix& rows, std::size_t columns);

}  // namespace liesurf

#endif  // LIESURF_EXACT_LINALG_HPP
