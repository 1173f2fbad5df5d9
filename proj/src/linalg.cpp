#include "qec/linalg.hpp"

#include <stdexcept>

namespace qec {

LinearSystem::LinearSystem(Modulus p_, std::size_t dim_) : p(p_), dim(dim_) {
    if (!p.prime) throw std::invalid_argument("LinearSystem requires a prime modulus");
}

void LinearSystem::add_row(Vec coeffs, u64 b) {
    if (coeffs.size() != dim) throw std::invalid_argument("row length mismatch");
    for (u64& c : coeffs) c %= p.m;
    rows.push_back(std::move(coeffs));
    rhs.push_back(b % p.m);
}

namespace {

struct Rref {
    std::vector<Vec> mat;       // reduced rows, pivots normalized to 1
    std::vector<u64> rhs;
    std::vector<std::size_t> pivot_cols;  // pivot_cols[r] = column of row r
    bool consistent = true;
};

// Reduced row echelon form with deterministic pivoting: sweep columns left to
// right, pick the first row (smallest index) with a nonzero entry.
Rref reduce(const LinearSystem& sys) {
    const u64 m = sys.p.m;
    Rref out;
    out.mat = sys.rows;
    out.rhs = sys.rhs;

    std::size_t row = 0;
    for (std::size_t col = 0; col < sys.dim && row < out.mat.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < out.mat.size() && out.mat[pivot][col] == 0) ++pivot;
        if (pivot == out.mat.size()) continue;
        std::swap(out.mat[row], out.mat[pivot]);
        std::swap(out.rhs[row], out.rhs[pivot]);

        u64 inv = mod_inv(out.mat[row][col], m);
        for (std::size_t j = col; j < sys.dim; ++j)
            out.mat[row][j] = mod_mul(out.mat[row][j], inv, m);
        out.rhs[row] = mod_mul(out.rhs[row], inv, m);

        for (std::size_t r = 0; r < out.mat.size(); ++r) {
            if (r == row || out.mat[r][col] == 0) continue;
            u64 f = out.mat[r][col];
            for (std::size_t j = col; j < sys.dim; ++j)
                out.mat[r][j] = mod_sub(out.mat[r][j], mod_mul(f, out.mat[row][j], m), m);
            out.rhs[r] = mod_sub(out.rhs[r], mod_mul(f, out.rhs[row], m), m);
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    for (std::size_t r = out.pivot_cols.size(); r < out.mat.size(); ++r)
        if (out.rhs[r] != 0) out.consistent = false;
    return out;
}

}  // namespace

std::optional<Vec> particular_solution(const LinearSystem& sys) {
    Rref rr = reduce(sys);
    if (!rr.consistent) return std::nullopt;
    Vec x(sys.dim, 0);  // free variables stay 0, so pivot rows read off directly
    for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r) x[rr.pivot_cols[r]] = rr.rhs[r];
    return x;
}

std::vector<Vec> null_space_basis(const LinearSystem& sys) {
    const u64 m = sys.p.m;
    Rref rr = reduce(sys);

    std::vector<bool> is_pivot(sys.dim, false);
    for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;

    std::vector<Vec> basis;
    for (std::size_t f = 0; f < sys.dim; ++f) {
        if (is_pivot[f]) continue;
        Vec v(sys.dim, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r)
            v[rr.pivot_cols[r]] = mod_neg(rr.mat[r][f], m);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t matrix_rank(const LinearSystem& sys) { return reduce(sys).pivot_cols.size(); }

}  // namespace qec
