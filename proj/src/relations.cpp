#include "x0n/relations.hpp"

#include <climits>
#include <map>
#include <optional>

namespace x0n {

namespace {

constexpr int kUnbounded = INT_MAX / 4;

template <class R>
LaurentSeries<R> eval_series(const MPoly<R>& p, const std::vector<LaurentSeries<R>>& values) {
    if (static_cast<int>(values.size()) != p.nvars()) throw std::invalid_argument("eval_on_series: arity mismatch");
    if (values.empty()) throw std::invalid_argument("eval_on_series: no variables");
    const SeriesTag tag = values[0].tag();
    std::vector<std::vector<LaurentSeries<R>>> powers(values.size());
    auto power = [&](std::size_t var, int k) -> const LaurentSeries<R>& {
        auto& pw = powers[var];
        if (pw.empty()) pw.push_back(values[var]);
        while (static_cast<int>(pw.size()) < k) pw.push_back(pw.back() * values[var]);
        return pw[static_cast<std::size_t>(k - 1)];
    };
    auto acc = LaurentSeries<R>::zero(tag, kUnbounded);
    R constant = RingTraits<R>::zero(tag.level);
    for (const auto& [e, c] : p.terms()) {
        std::optional<LaurentSeries<R>> term;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            const auto& pw = power(i, e[i]);
            term = term ? *term * pw : pw;
        }
        if (!term)
            constant += c;
        else
            acc += term->scaled(c);
    }
    if (acc.precision() >= kUnbounded) {
        int prec = kUnbounded;
        for (const auto& v : values) prec = std::min(prec, v.precision());
        acc = LaurentSeries<R>::zero(tag, prec);
    }
    return acc + LaurentSeries<R>::constant(tag, constant, std::max(acc.precision(), 1));
}

void check_pole(const QSeries& s, int pole, const std::string& what) {
    if (s.is_zero() || s.valuation() != -pole)
        throw RelationError(what + " must have a pole of order " + std::to_string(pole) + " at P (found valuation " +
                            std::to_string(s.valuation()) + ")");
}

// Rows of A x = b from coefficients of sum_u x_u S_u + T = 0.
SolveResult solve_series_system(const std::vector<QSeries>& unknowns, const QSeries& target, int guard,
                                const std::string& what) {
    int lo = target.valuation(), hi = target.precision();
    for (const auto& s : unknowns) {
        lo = std::min(lo, s.valuation());
        hi = std::min(hi, s.precision());
    }
    const int rows = hi - lo;
    const int n = static_cast<int>(unknowns.size());
    if (rows < n + guard)
        throw RelationError(what + ": precision too low (" + std::to_string(rows) + " equations for " +
                            std::to_string(n) + " unknowns, guard " + std::to_string(guard) + ")");
    Matrix<Rational> A(static_cast<std::size_t>(rows), std::vector<Rational>(static_cast<std::size_t>(n)));
    std::vector<Rational> b(static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r) {
        const int e = lo + r;
        for (int u = 0; u < n; ++u) A[r][u] = unknowns[u].coeff(e);
        b[r] = -target.coeff(e);
    }
    auto res = solve_exact(A, b);
    if (res.status == SolveStatus::Inconsistent)
        throw RelationError(what + ": no solution (generators invalid or precision insufficient)");
    if (res.status == SolveStatus::Underdetermined)
        throw RelationError(what + ": solution not unique (rank " + std::to_string(res.rank) + " < " +
                            std::to_string(n) + ")");
    return res;
}

RPoly var(int nvars, int i) { return RPoly::variable(nvars, i); }
RPoly cst(int nvars, const Rational& c) { return RPoly::constant(nvars, c); }

}  // namespace

QSeries eval_on_series(const RPoly& p, const std::vector<QSeries>& values) { return eval_series(p, values); }
CSeries eval_on_series(const CPoly& p, const std::vector<CSeries>& values) { return eval_series(p, values); }

int minimal_equation_precision(int g, int guard) { return (g + 1) * (g + 4) / 2 + guard + 2; }

BivarPoly minimal_equation(const QSeries& F1, const QSeries& F2, int g, int guard) {
    if (g < 1) throw RelationError("minimal equation needs genus >= 1");
    check_pole(F1, g + 1, "F1");
    check_pole(F2, g + 2, "F2");
    const Rational l1 = F1.leading(), l2 = F2.leading();
    const QSeries x = F1.scaled(1 / l1), y = F2.scaled(1 / l2);
    std::vector<QSeries> xp, yp;
    auto xpow = [&](int k) -> std::optional<QSeries> {
        if (k == 0) return std::nullopt;
        while (static_cast<int>(xp.size()) < k) xp.push_back(xp.empty() ? x : xp.back() * x);
        return xp[static_cast<std::size_t>(k - 1)];
    };
    auto ypow = [&](int k) -> std::optional<QSeries> {
        if (k == 0) return std::nullopt;
        while (static_cast<int>(yp.size()) < k) yp.push_back(yp.empty() ? y : yp.back() * y);
        return yp[static_cast<std::size_t>(k - 1)];
    };
    const int hi_prec = std::min(x.precision(), y.precision()) + 1;
    auto monomial = [&](int k, int j) {
        auto a = xpow(k), b = ypow(j);
        if (a && b) return *a * *b;
        if (a) return *a;
        if (b) return *b;
        return QSeries::constant(x.tag(), 1, hi_prec);
    };
    std::vector<QSeries> unknowns;
    std::vector<std::pair<int, int>> shape;  // (j, k): coefficient of X^k Y^j
    for (int j = 0; j <= g; ++j)
        for (int k = 0; k <= g + 1 - j; ++k) {
            unknowns.push_back(monomial(k, j));
            shape.emplace_back(j, k);
        }
    const QSeries target = *ypow(g + 1) - *xpow(g + 2);
    const auto res = solve_series_system(unknowns, target, guard, "minimal equation");

    // Equation in the monic variables, then X -> X / l1, Y -> Y / l2.
    RPoly eq(2);
    auto term = [&](int k, int j, const Rational& c) {
        Rational s = c;
        for (int t = 0; t < k; ++t) s /= l1;
        for (int t = 0; t < j; ++t) s /= l2;
        eq.add_term({k, j}, s);
    };
    term(0, g + 1, 1);
    term(g + 2, 0, -1);
    for (std::size_t u = 0; u < shape.size(); ++u) term(shape[u].second, shape[u].first, res.x[u]);
    eq = primitive_part(eq);

    const QSeries residual = eval_on_series(eq, {F1, F2});
    if (!residual.is_zero()) throw RelationError("minimal equation residual does not vanish");
    return eq;
}

// ---------------------------------------------------------------------------

RelationRow relation_coeffs(const std::vector<QSeries>& F, int i, int guard) {
    const int g = static_cast<int>(F.size()) - 1;
    if (g < 2) throw RelationError("relations need genus >= 2");
    if (i < 1 || i > g - 1) throw RelationError("relation index out of range");
    for (int k = 1; k <= g + 1; ++k) {
        check_pole(F[k - 1], g + k, "F" + std::to_string(k));
        if (F[k - 1].leading() != 1) throw RelationError("relations need generators with leading coefficient 1");
    }
    const QSeries& F1 = F[0];
    std::vector<QSeries> unknowns;
    for (int k = 1; k <= i + 1; ++k) unknowns.push_back(F[k - 1] * F1);
    for (int k = 1; k <= g + 1; ++k) unknowns.push_back(F[k - 1]);
    int prec = F1.precision();
    for (const auto& s : unknowns) prec = std::min(prec, s.precision());
    unknowns.push_back(QSeries::constant(F1.tag(), 1, std::max(prec, 1)));
    const QSeries target = F1 * F[i + 1] - F[1] * F[i];
    const auto res = solve_series_system(unknowns, target, guard, "relation " + std::to_string(i));
    RelationRow row;
    row.i = i;
    row.a.assign(res.x.begin(), res.x.begin() + (i + 1));
    row.b.assign(res.x.begin() + (i + 1), res.x.begin() + (i + 1) + (g + 1));
    row.c = res.x.back();
    if (!eval_on_series(relation_poly(row, g), F).is_zero())
        throw RelationError("relation " + std::to_string(i) + " residual does not vanish");
    return row;
}

RPoly relation_poly(const RelationRow& row, int g) {
    const int n = g + 1;
    const int i = row.i;
    RPoly p = var(n, 0) * var(n, i + 1) - var(n, 1) * var(n, i);
    for (int k = 1; k <= i + 1; ++k) p += (var(n, k - 1) * var(n, 0)).scaled(row.a[k - 1]);
    for (int k = 1; k <= g + 1; ++k) p += var(n, k - 1).scaled(row.b[k - 1]);
    p += cst(n, row.c);
    return p;
}

RPoly poly_determinant(const std::vector<std::vector<RPoly>>& m) {
    const std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("determinant of an empty matrix");
    const int nv = m[0][0].nvars();
    if (n == 1) return m[0][0];
    RPoly det(nv);
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) continue;
        std::vector<std::vector<RPoly>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<RPoly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(std::move(row));
        }
        RPoly t = m[0][c] * poly_determinant(minor);
        if (c % 2) t = -t;
        det += t;
    }
    return det;
}

RationalRep solve_Hi(const std::vector<RelationRow>& rows, int g) {
    if (g < 2) throw RelationError("solve_Hi needs genus >= 2");
    if (static_cast<int>(rows.size()) != g - 1) throw RelationError("solve_Hi needs g-1 relation rows");
    const int n = g - 1;
    const RPoly X = var(2, 0), Y = var(2, 1);
    std::vector<std::vector<RPoly>> A(static_cast<std::size_t>(n), std::vector<RPoly>(static_cast<std::size_t>(n), RPoly(2)));
    std::vector<RPoly> rhs(static_cast<std::size_t>(n), RPoly(2));
    for (int r = 0; r < n; ++r) {
        const RelationRow& row = rows[r];
        const int i = row.i;
        if (i != r + 1) throw RelationError("relation rows out of order");
        for (int k = 3; k <= g + 1; ++k) {
            RPoly u = cst(2, row.b[k - 1]);
            if (k == i + 2) u += X;
            if (k == i + 1) u -= Y;
            if (k <= i + 1) u += X.scaled(row.a[k - 1]);
            A[r][k - 3] = u;
        }
        RPoly rest = X * X * cst(2, row.a[0]) + X * Y * cst(2, row.a[1]) + X.scaled(row.b[0]) + Y.scaled(row.b[1]) +
                     cst(2, row.c);
        if (i == 1) rest -= Y * Y;
        rhs[r] = -rest;
    }
    RationalRep rep;
    rep.delta = poly_determinant(A);
    if (rep.delta.is_zero()) throw RelationError("relation matrix is singular");
    for (int k = 0; k < n; ++k) {
        auto Ak = A;
        for (int r = 0; r < n; ++r) Ak[r][k] = rhs[r];
        rep.numerators.push_back(poly_determinant(Ak));
    }
    for (int r = 0; r < n; ++r) {
        RPoly lhs(2);
        for (int k = 0; k < n; ++k) lhs += A[r][k] * rep.numerators[k];
        if (!(lhs == rhs[r] * rep.delta)) throw RelationError("Cramer solution check failed");
    }
    return rep;
}

// ---------------------------------------------------------------------------

Exponent reduction_monomial(int n, int g) {
    Exponent e(static_cast<std::size_t>(g + 1), 0);
    if (n == 0) return e;
    const int step = 2 * g + 1;
    const int l = n / step, k = n % step;
    if (k == 0) {
        e[g] = l;
    } else if (k < g + 1) {
        if (l == 0)
            throw RelationError("no function with pole order " + std::to_string(n) +
                                " at P in the basis (gap; P would be a Weierstrass point)");
        e[g] += l - 1;
        e[0] += 1;
        e[k - 1] += 1;
    } else {
        e[g] += l;
        e[k - g - 1] += 1;
    }
    return e;
}

RPoly reduce_to_poly(const QSeries& F, const std::vector<QSeries>& basis, int g) {
    if (static_cast<int>(basis.size()) != g + 1) throw RelationError("basis must hold g+1 expansions");
    for (int k = 1; k <= g + 1; ++k) check_pole(basis[k - 1], g + k, "F" + std::to_string(k));
    std::map<Exponent, QSeries, ExponentOrder> cache;
    std::vector<QSeries> top;  // powers of F_{g+1}
    auto top_power = [&](int l) {
        while (static_cast<int>(top.size()) < l) top.push_back(top.empty() ? basis[g] : top.back() * basis[g]);
        return top[static_cast<std::size_t>(l - 1)];
    };
    auto monomial_series = [&](const Exponent& e) -> const QSeries& {
        auto it = cache.find(e);
        if (it != cache.end()) return it->second;
        std::optional<QSeries> s;
        if (e[g] > 0) s = top_power(e[g]);
        for (int i = 0; i < g; ++i)
            for (int t = 0; t < e[i]; ++t) s = s ? *s * basis[i] : basis[i];
        return cache.emplace(e, *s).first->second;
    };

    RPoly out(g + 1);
    QSeries rem = F;
    while (true) {
        if (rem.precision() < 1)
            throw RelationError("precision exhausted while reducing to a polynomial (raise the precision)");
        if (rem.is_zero() || rem.valuation() >= 0) {
            const Rational c = rem.coeff(0);
            out.add_term(Exponent(static_cast<std::size_t>(g + 1), 0), c);
            rem = rem - QSeries::constant(rem.tag(), c, rem.precision());
            if (!rem.is_zero())
                throw RelationError("reduction residual is nonzero at exponent " + std::to_string(rem.valuation()) +
                                    " (function not regular away from P?)");
            return out;
        }
        const int n = -rem.valuation();
        const Exponent e = reduction_monomial(n, g);
        const QSeries& u = monomial_series(e);
        const Rational c = rem.leading() / u.leading();
        rem -= u.scaled(c);
        out.add_term(e, c);
    }
}

}  // namespace x0n
