#pragma once

// Small dense rational linear algebra used internally by exactgeom and the
// modules above it.

#include <optional>
#include <vector>

#include "coxkit/exactgeom.hpp"

namespace coxkit::detail {

using RatMatrix = std::vector<RatVector>;

RatMatrix to_rat(const IntMatrix& m);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m, std::size_t cols);

/// Inverse of a square rational matrix, or nullopt if singular.
std::optional<RatMatrix> inverse(const RatMatrix& m);

/// Solves m * x == b (m is rows x cols). Returns one solution (free
/// variables set to zero) or nullopt if inconsistent.
std::optional<RatVector> solve(const RatMatrix& m, std::size_t cols,
                               const RatVector& b);

Int floor_rat(const Rat& q);

}  // namespace coxkit::detail
