#include "hsd/linsolve.hpp"

namespace hsd {

LinSolveResult linsolve(Matrix a, std::vector<RatFn> b) {
    require(a.size() == b.size(), "linsolve: row count mismatch");
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    for (const auto& row : a) require(row.size() == n, "linsolve: ragged matrix");
    std::vector<std::size_t> origin(m);
    for (std::size_t i = 0; i < m; ++i) origin[i] = i;

    LinSolveResult res;
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        // pivot: smallest combined degree among nonzero candidates, to slow
        // coefficient growth
        std::size_t best = m;
        int best_deg = 0;
        for (std::size_t i = row; i < m; ++i) {
            if (a[i][col].is_zero()) continue;
            int deg = a[i][col].num().degree() + a[i][col].den().degree();
            if (best == m || deg < best_deg) {
                best = i;
                best_deg = deg;
            }
        }
        if (best == m) continue;
        std::swap(a[row], a[best]);
        std::swap(b[row], b[best]);
        std::swap(origin[row], origin[best]);
        RatFn inv = a[row][col].inverse();
        for (std::size_t j = col; j < n; ++j)
            if (!a[row][j].is_zero()) a[row][j] = a[row][j] * inv;
        if (!b[row].is_zero()) b[row] = b[row] * inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || a[i][col].is_zero()) continue;
            RatFn f = a[i][col];
            for (std::size_t j = col; j < n; ++j)
                if (!a[row][j].is_zero()) a[i][j] = a[i][j] - f * a[row][j];
            if (!b[row].is_zero()) b[i] = b[i] - f * b[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    res.rank = row;

    for (std::size_t i = row; i < m; ++i)
        if (!b[i].is_zero()) {
            res.consistent = false;
            res.witness_row = origin[i];
            return res;
        }
    res.consistent = true;

    const std::uint64_t p = n ? a[0][0].p() : (m ? b[0].p() : 2);
    res.solution.assign(n, RatFn(p));
    for (std::size_t r = 0; r < pivot_col.size(); ++r) res.solution[pivot_col[r]] = b[r];

    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        std::vector<RatFn> k(n, RatFn(p));
        k[j] = RatFn::constant(p, 1);
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            if (!a[r][j].is_zero()) k[pivot_col[r]] = -a[r][j];
        res.kernel.push_back(std::move(k));
    }
    return res;
}

std::vector<std::vector<RatFn>> kernel_basis(const Matrix& a, std::uint64_t p) {
    std::vector<RatFn> zero(a.size(), RatFn(p));
    return linsolve(a, std::move(zero)).kernel;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    require(!a.empty() && !b.empty() && a[0].size() == b.size(), "mat_mul: size mismatch");
    std::uint64_t p = b[0][0].p();
    Matrix r(a.size(), std::vector<RatFn>(b[0].size(), RatFn(p)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < b[0].size(); ++j)
                if (!b[k][j].is_zero()) r[i][j] = r[i][j] + a[i][k] * b[k][j];
        }
    return r;
}

Matrix mat_identity(std::size_t n, std::uint64_t p) {
    Matrix r(n, std::vector<RatFn>(n, RatFn(p)));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = RatFn::constant(p, 1);
    return r;
}

Matrix mat_pow(Matrix a, std::uint64_t e, std::uint64_t p) {
    Matrix r = mat_identity(a.size(), p);
    while (e) {
        if (e & 1) r = mat_mul(r, a);
        a = mat_mul(a, a);
        e >>= 1;
    }
    return r;
}

bool mat_is_zero(const Matrix& a) {
    for (const auto& row : a)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

std::size_t mat_rank(Matrix a) {
    if (a.empty()) return 0;
    std::vector<RatFn> zero(a.size(), RatFn(a[0][0].p()));
    return linsolve(std::move(a), std::move(zero)).rank;
}

} // namespace hsd
