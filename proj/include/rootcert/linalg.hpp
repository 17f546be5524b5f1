#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rootcert/rational.hpp"

namespace rootcert {

using IntVec = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVec>;
using RatVec = std::vector<Rational>;
using RatMatrix = std::vector<RatVec>;

/// Row-style Hermite normal form of the lattice spanned by `rows`: upper
/// triangular (row i has its pivot in a column strictly right of row i-1's),
/// positive pivots, entries above a pivot reduced into [0, pivot). Zero rows
/// are dropped.
IntMatrix hermite_normal_form(IntMatrix rows);

RatMatrix identity_matrix(std::size_t n);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);
RatVec multiply(const RatMatrix& a, const RatVec& x);
RatMatrix transpose(const RatMatrix& a);

/// Throws ConsistencyError if `a` is singular.
RatMatrix inverse(RatMatrix a);
std::size_t matrix_rank(RatMatrix a);
/// Basis (as rows) of {x : a x = 0}.
RatMatrix nullspace(RatMatrix a);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
/// Floor division for b > 0.
std::int64_t floor_div(std::int64_t a, std::int64_t b);

}  // namespace rootcert
