#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qec/zmod.hpp"

namespace qec {

using Vec = std::vector<u64>;

/// Linear system over a prime field: rows of (coefficient vector, rhs).
struct LinearSystem {
    Modulus p;
    std::size_t dim;
    std::vector<Vec> rows;
    std::vector<u64> rhs;

    LinearSystem(Modulus p_, std::size_t dim_);

    void add_row(Vec coeffs, u64 b);
};

/// One solution via Gaussian elimination (pivot on the first nonzero column,
/// smallest row index; free variables set to 0), or nullopt if inconsistent.
std::optional<Vec> particular_solution(const LinearSystem& sys);

/// Basis of the homogeneous solution space, one vector per pivot-free column
/// in ascending column order. Size is dim - rank.
std::vector<Vec> null_space_basis(const LinearSystem& sys);

/// Rank of the coefficient matrix.
std::size_t matrix_rank(const LinearSystem& sys);

}  // namespace qec
