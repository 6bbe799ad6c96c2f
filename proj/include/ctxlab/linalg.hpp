#pragma once

#include <optional>
#include <vector>

#include "ctxlab/rational.hpp"

namespace ctxlab {

using IntegerMatrix = std::vector<std::vector<Integer>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Rank by fraction-free (Bareiss) elimination.
std::size_t rank(IntegerMatrix m);

/// Rank of a rational matrix; each row is first scaled to integers.
std::size_t rank(const RationalMatrix& m);

/// Inverse of a square matrix, or nullopt if singular.
std::optional<RationalMatrix> inverse(RationalMatrix m);

}  // namespace ctxlab
