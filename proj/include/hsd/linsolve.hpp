#pragma once

#include <optional>
#include <vector>

#include "hsd/ratfn.hpp"

namespace hsd {

using Matrix = std::vector<std::vector<RatFn>>;

struct LinSolveResult {
    bool consistent = false;
    std::vector<RatFn> solution;              // a particular solution (free vars 0)
    std::vector<std::vector<RatFn>> kernel;   // basis of the homogeneous solutions
    std::size_t rank = 0;
    // original row index witnessing 0 = nonzero when inconsistent
    std::optional<std::size_t> witness_row;
};

// Exact Gaussian elimination over F_p(t) for A x = b. Rows of A must have a
// common length and b must match the row count. Inconsistency is an answer,
// not an error.
LinSolveResult linsolve(Matrix a, std::vector<RatFn> b);

// kernel basis of A x = 0
std::vector<std::vector<RatFn>> kernel_basis(const Matrix& a, std::uint64_t p);

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_pow(Matrix a, std::uint64_t e, std::uint64_t p);
Matrix mat_identity(std::size_t n, std::uint64_t p);
bool mat_is_zero(const Matrix& a);
std::size_t mat_rank(Matrix a);

} // namespace hsd
