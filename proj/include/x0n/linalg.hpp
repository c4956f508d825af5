#ifndef X0N_LINALG_HPP
#define X0N_LINALG_HPP

#include "x0n/ring.hpp"

#include <stdexcept>
#include <vector>

namespace x0n {

template <class F>
using Matrix = std::vector<std::vector<F>>;

enum class SolveStatus { Unique, Inconsistent, Underdetermined };

struct SolveResult {
    SolveStatus status = SolveStatus::Inconsistent;
    std::vector<Rational> x;
    int rank = 0;
};

/// Solves A x = b over Q (A may have more rows than columns) by fraction-free
/// Bareiss elimination on the integer-scaled augmented matrix. `x` is filled
/// only for a unique, consistent solution.
SolveResult solve_exact(const Matrix<Rational>& A, const std::vector<Rational>& b);

/// Determinant of a square rational matrix (Bareiss).
Rational determinant(const Matrix<Rational>& A);

/// Reduced row echelon form over Q or Q(zeta_N), in place. Returns the pivot
/// column of each nonzero row.
template <class F>
std::vector<int> rref(Matrix<F>& m, int level) {
    using T = RingTraits<F>;
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && T::is_zero(m[p][c])) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        const F inv = T::inverse(m[r][c]);
        for (int k = c; k < cols; ++k) m[r][k] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || T::is_zero(m[i][c])) continue;
            const F f = m[i][c];
            for (int k = c; k < cols; ++k)
                if (!T::is_zero(m[r][k])) m[i][k] -= f * m[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(static_cast<std::size_t>(r), std::vector<F>(static_cast<std::size_t>(cols), T::zero(level)));
    return pivots;
}

/// Basis of {x : m x = 0}, one vector per free column, in RREF-derived form
/// (the free coordinate is 1, other free coordinates 0).
template <class F>
Matrix<F> kernel(Matrix<F> m, int cols, int level) {
    using T = RingTraits<F>;
    const auto pivots = rref(m, level);
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int p : pivots) is_pivot[p] = true;
    Matrix<F> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<F> v(static_cast<std::size_t>(cols), T::zero(level));
        v[f] = T::one(level);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace x0n

#endif  // X0N_LINALG_HPP
