#ifndef X0N_RELATIONS_HPP
#define X0N_RELATIONS_HPP

#include "x0n/linalg.hpp"
#include "x0n/poly.hpp"
#include "x0n/series.hpp"

#include <stdexcept>
#include <vector>

namespace x0n {

/// Insufficient precision, inconsistent data, or generators of the wrong shape.
class RelationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Number of series coefficients beyond the unknown count used to detect
/// precision problems.
inline constexpr int kDefaultGuard = 25;

/// F_N(X, Y) = Y^{g+1} - X^{g+2} + sum_j Phi_j(X) Y^j with deg Phi_j <= g+1-j
/// vanishing on (F1, F2). F1, F2 are expansions at P with pole orders g+1,
/// g+2 (any nonzero leading coefficients). The result is integer-cleared.
BivarPoly minimal_equation(const QSeries& F1, const QSeries& F2, int g, int guard = kDefaultGuard);

/// Precision (exponent bound at P) needed by minimal_equation.
int minimal_equation_precision(int g, int guard = kDefaultGuard);

/// F1 F_{i+2} - F2 F_{i+1} + sum_{k<=i+1} a_k F_k F1 + sum_{k<=g+1} b_k F_k + c = 0.
struct RelationRow {
    int i = 0;
    std::vector<Rational> a;  // a[k-1], k = 1..i+1
    std::vector<Rational> b;  // b[k-1], k = 1..g+1
    Rational c;
};

RelationRow relation_coeffs(const std::vector<QSeries>& F, int i, int guard = kDefaultGuard);

/// F_k = U_k / Delta for k = 3..g+1, polynomials in X = F1, Y = F2.
struct RationalRep {
    BivarPoly delta;
    std::vector<BivarPoly> numerators;  // U_3 .. U_{g+1}
};

/// Cramer solve of the rows over Q[X, Y]; verifies A U = Delta * rhs.
RationalRep solve_Hi(const std::vector<RelationRow>& rows, int g);

/// Row polynomial in F1..F_{g+1} (for residual checks and display).
RPoly relation_poly(const RelationRow& row, int g);

/// Monomial exponents (over F1..F_{g+1}) of the pole-order-n element used by
/// the reduction: n = (2g+1) l + k.
Exponent reduction_monomial(int n, int g);

/// Writes F (poles only at P) as a polynomial in F1..F_{g+1}; `basis` holds
/// the P-expansions. Throws RelationError on a gap pole order or a nonzero
/// residual after the constant term.
RPoly reduce_to_poly(const QSeries& F, const std::vector<QSeries>& basis, int g);

/// Evaluates a polynomial in F1..F_n on series.
QSeries eval_on_series(const RPoly& p, const std::vector<QSeries>& values);
CSeries eval_on_series(const CPoly& p, const std::vector<CSeries>& values);

/// Determinant of a square matrix of polynomials (Laplace expansion).
RPoly poly_determinant(const std::vector<std::vector<RPoly>>& m);

}  // namespace x0n

#endif  // X0N_RELATIONS_HPP
