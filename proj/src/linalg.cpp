#include "x0n/linalg.hpp"

namespace x0n {

namespace {

std::vector<Integer> integer_row(const std::vector<Rational>& row) {
    DenominatorLcm l;
    for (const auto& x : row) l.add(x);
    std::vector<Integer> out;
    out.reserve(row.size());
    for (const auto& x : row) out.push_back(Integer(x * l.value()));
    return out;
}

// Fraction-free elimination to row echelon form. Returns pivot columns among
// the first `cols` columns; the last nonzero pivot is the running determinant.
std::vector<int> bareiss(std::vector<std::vector<Integer>>& m, int cols, int* sign = nullptr) {
    const int rows = static_cast<int>(m.size());
    const int width = rows ? static_cast<int>(m[0].size()) : 0;
    std::vector<int> pivots;
    Integer prev = 1;
    int r = 0;
    if (sign) *sign = 1;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && sgn(m[p][c]) == 0) ++p;
        if (p == rows) continue;
        if (p != r) {
            std::swap(m[p], m[r]);
            if (sign) *sign = -*sign;
        }
        for (int i = r + 1; i < rows; ++i) {
            for (int k = c + 1; k < width; ++k) {
                m[i][k] = m[r][c] * m[i][k] - m[i][c] * m[r][k];
                mpz_divexact(m[i][k].get_mpz_t(), m[i][k].get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

SolveResult solve_exact(const Matrix<Rational>& A, const std::vector<Rational>& b) {
    if (A.size() != b.size()) throw std::invalid_argument("solve_exact: row count mismatch");
    SolveResult res;
    const int n = A.empty() ? 0 : static_cast<int>(A[0].size());
    std::vector<std::vector<Integer>> m;
    m.reserve(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (static_cast<int>(A[i].size()) != n) throw std::invalid_argument("solve_exact: ragged matrix");
        std::vector<Rational> row(A[i]);
        row.push_back(b[i]);
        m.push_back(integer_row(row));
    }
    const auto pivots = bareiss(m, n);
    res.rank = static_cast<int>(pivots.size());
    for (std::size_t i = pivots.size(); i < m.size(); ++i)
        if (sgn(m[i][n]) != 0) {
            res.status = SolveStatus::Inconsistent;
            return res;
        }
    if (res.rank < n) {
        res.status = SolveStatus::Underdetermined;
        return res;
    }
    res.x.assign(static_cast<std::size_t>(n), 0);
    for (int r = n - 1; r >= 0; --r) {
        Rational s = Rational(m[r][n]);
        for (int k = r + 1; k < n; ++k) s -= Rational(m[r][k]) * res.x[k];
        res.x[r] = s / Rational(m[r][r]);
    }
    res.status = SolveStatus::Unique;
    return res;
}

Rational determinant(const Matrix<Rational>& A) {
    const int n = static_cast<int>(A.size());
    if (n == 0) return 1;
    std::vector<std::vector<Integer>> m;
    Rational scale = 1;
    for (const auto& row : A) {
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("determinant: matrix not square");
        DenominatorLcm l;
        for (const auto& x : row) l.add(x);
        scale *= Rational(l.value());
        m.push_back(integer_row(row));
    }
    int sign = 1;
    const auto pivots = bareiss(m, n, &sign);
    if (static_cast<int>(pivots.size()) < n) return 0;
    return Rational(m[n - 1][n - 1]) * sign / scale;
}

}  // namespace x0n
