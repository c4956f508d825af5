#include "x0n/jrep.hpp"

#include "x0n/linalg.hpp"
#include "x0n/weier.hpp"

#include <sstream>

namespace x0n {

namespace {

constexpr int kMaxLocalPrec = 2048;

int pole_of(const CPoly& G, int g) {
    int pole = 0;
    for (const auto& [e, c] : G.terms())
        for (int k = 0; k <= g; ++k)
            if (e[k] > 0) pole = std::max(pole, (g + 1 + k) * e[k]);
    return pole;
}

CPoly affine_form(const CycNum& c0, const std::vector<CycNum>& c, int level) {
    const int n = static_cast<int>(c.size());
    CPoly G = CPoly::constant(n, c0, level);
    for (int k = 0; k < n; ++k) G += CPoly::variable(n, k, level).scaled(c[k]);
    return G;
}

// Order at Q of F1 - F1(Q); sets the constant.
int first_generator_order(const ModFuncExpr& F1, const CuspClass& Q, CycNum& value) {
    for (int prec = 8; prec <= kMaxLocalPrec; prec *= 2) {
        const CSeries s = expand(F1, Q, prec);
        if (s.valuation() < 0)
            throw JRepError("F1 has a pole at " + Q.to_string() + "; generators must be regular away from <1/1>");
        value = s.coeff(0);
        const CSeries r = s - CSeries::constant(s.tag(), value, prec);
        if (!r.is_zero()) return r.valuation();
    }
    throw JRepError("F1 is constant at " + Q.to_string() + " to the maximum precision");
}

RPoly derivative(const RPoly& p, int var) {
    RPoly d(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        if (e[var] == 0) continue;
        Exponent f = e;
        --f[var];
        d.add_term(f, c * e[var]);
    }
    return d;
}

Rational eval_point(const RPoly& p, const std::vector<Rational>& v) {
    return p.evaluate(v, [](const Rational& c) { return c; });
}

RPoly power_cached(std::vector<RPoly>& cache, const RPoly& base, int k, const std::optional<BivarPoly>& model) {
    if (cache.empty()) cache.push_back(RPoly::constant(base.nvars(), 1));
    while (static_cast<int>(cache.size()) <= k) {
        RPoly next = cache.back() * base;
        if (model) next = reduce_mod_model(next, *model);
        cache.push_back(std::move(next));
    }
    return cache[static_cast<std::size_t>(k)];
}

// p(F1..F_{g+1}) as num(X,Y) / Delta^dpow, F_k = U_k / Delta for k >= 3.
std::pair<RPoly, int> to_xy(const RPoly& p, int g, const std::optional<BivarPoly>& model,
                            const std::optional<RationalRep>& H) {
    int dmax = 0;
    for (const auto& [e, c] : p.terms()) {
        int d = 0;
        for (int k = 2; k <= g; ++k) d += e[k];
        dmax = std::max(dmax, d);
    }
    if (dmax > 0 && !H) throw JRepError("collapsing needs the representation F_k = U_k / Delta");
    std::vector<std::vector<RPoly>> upow(static_cast<std::size_t>(g + 1));
    std::vector<RPoly> dpow, xpow, ypow;
    const RPoly X = RPoly::variable(2, 0), Y = RPoly::variable(2, 1);
    RPoly out(2);
    for (const auto& [e, c] : p.terms()) {
        RPoly t = power_cached(xpow, X, e[0], model);
        if (g >= 1) t = t * power_cached(ypow, Y, e[1], model);
        int d = 0;
        for (int k = 2; k <= g; ++k) {
            if (e[k] == 0) continue;
            d += e[k];
            t = t * power_cached(upow[k], H->numerators[k - 2], e[k], model);
            if (model) t = reduce_mod_model(t, *model);
        }
        if (dmax > d) t = t * power_cached(dpow, H->delta, dmax - d, model);
        if (model) t = reduce_mod_model(t, *model);
        out += t.scaled(c);
    }
    return {out, dmax};
}

UPoly coeff_in_y(const RPoly& p, int k) {
    UPoly u;
    for (const auto& [e, c] : p.terms()) {
        if (e[1] != k) continue;
        if (u.size() <= static_cast<std::size_t>(e[0])) u.resize(e[0] + 1, 0);
        u[e[0]] += c;
    }
    upoly_trim(u);
    return u;
}

}  // namespace

std::string upoly_to_string(const UPoly& u, const std::string& var) {
    return from_upoly(u, 1, 0).to_string({var});
}

RPoly reduce_mod_model(const RPoly& p, const BivarPoly& model) {
    const int n = model.degree(1);
    if (n <= 0) throw JRepError("model has no Y term");
    Exponent top{0, n};
    const Rational lead = model.coeff(top);
    if (sgn(lead) == 0) throw JRepError("model is not monic in Y up to a constant");
    for (const auto& [e, c] : model.terms())
        if (e[1] == n && e != top) throw JRepError("model is not monic in Y up to a constant");
    RPoly r = p;
    while (!r.is_zero()) {
        const auto& [e, c] = *r.terms().begin();
        if (e[1] < n) break;
        RPoly mono(2);
        mono.add_term({e[0], e[1] - n}, c / lead);
        r -= mono * model;
    }
    return r;
}

// ---------------------------------------------------------------------------

CuspKiller find_cusp_killer(const std::vector<ModFuncExpr>& F, const CuspClass& Q, KillerPolicy policy) {
    if (F.empty()) throw JRepError("no generators");
    const int N = F[0].level();
    const int n = static_cast<int>(F.size());
    if (Q.D == 1) throw JRepError("no killer is needed at <1/1>");
    CuspKiller k;
    k.cusp = Q;
    k.pole_j = j_pole_order(Q, N);

    CycNum f1q(N);
    const int o1 = first_generator_order(F[0], Q, f1q);
    std::vector<CycNum> lin(static_cast<std::size_t>(n), CycNum(N));
    lin[0] = CycNum(N, 1);
    k.G = affine_form(-f1q, lin, N);
    k.zero_order = o1;

    if (policy == KillerPolicy::MaxOrder && n > 1) {
        for (int prec = 2 * o1 + 8; prec <= kMaxLocalPrec; prec *= 2) {
            std::vector<CSeries> E;
            for (const auto& f : F) {
                E.push_back(expand(f, Q, prec));
                if (E.back().valuation() < 0) throw JRepError("generator has a pole at " + Q.to_string());
            }
            // Column 0 is the constant, columns 1..n the generators.
            Matrix<CycNum> rows;
            Matrix<CycNum> best;
            int vmax = 0;
            for (int v = 1; v <= prec; ++v) {
                std::vector<CycNum> row(static_cast<std::size_t>(n + 1), CycNum(N));
                if (v == 1) row[0] = CycNum(N, 1);
                for (int j = 0; j < n; ++j) row[j + 1] = E[j].coeff(v - 1);
                rows.push_back(std::move(row));
                auto K = kernel(rows, n + 1, N);
                if (K.empty()) break;
                best = std::move(K);
                vmax = v;
            }
            if (vmax == prec) continue;
            if (vmax > o1) {
                const auto& v = best.front();
                k.G = affine_form(v[0], std::vector<CycNum>(v.begin() + 1, v.end()), N);
                k.zero_order = vmax;
            }
            break;
        }
    }
    k.m = (k.pole_j + k.zero_order - 1) / k.zero_order;
    return k;
}

JRepresentation represent_J(const std::vector<ModFuncExpr>& F, const JOptions& opt,
                            const std::optional<BivarPoly>& model, const std::optional<RationalRep>& H) {
    if (F.empty()) throw JRepError("no generators");
    JRepresentation rep;
    rep.N = F[0].level();
    rep.g = static_cast<int>(F.size()) - 1;
    const int N = rep.N, g = rep.g, n = g + 1;

    for (const auto& Q : cusps_gamma0(N)) {
        if (Q.D == 1) continue;
        rep.killers.push_back(find_cusp_killer(F, Q, opt.policy));
    }
    for (const auto& k : rep.killers) {
        auto it = std::find_if(rep.factors.begin(), rep.factors.end(), [&](const KillerFactor& f) { return f.G == k.G; });
        if (it == rep.factors.end()) {
            rep.factors.push_back({k.G, k.m, {k.cusp}});
        } else {
            it->m = std::max(it->m, k.m);
            it->cusps.push_back(k.cusp);
        }
    }
    CPoly dall = CPoly::constant(n, CycNum(N, 1), N);
    for (const auto& f : rep.factors) dall *= f.G.pow(static_cast<unsigned>(f.m));
    try {
        rep.denominator = to_rational_poly(dall);
    } catch (const std::exception&) {
        throw JRepError("product of killing factors is not rational");
    }

    // J * prod G^m must be regular away from <1/1>.
    for (const auto& k : rep.killers) {
        const CuspClass& Q = k.cusp;
        for (int prec = k.pole_j + 4;; prec *= 2) {
            if (prec > kMaxLocalPrec) throw JRepError("cannot decide regularity at " + Q.to_string());
            std::vector<CSeries> E;
            for (const auto& f : F) E.push_back(expand(f, Q, prec));
            const CSeries s = j_at_cusp(Q, N, prec).map([N](const Rational& x) { return CycNum(N, x); },
                                                        E[0].tag()) *
                              eval_on_series(dall, E);
            if (s.is_zero() && s.precision() <= 0) continue;
            if (s.valuation() < 0)
                throw JRepError("J * prod G^m still has a pole at " + Q.to_string() + " (order " +
                                std::to_string(-s.valuation()) + ")");
            if (s.precision() > 0) break;
        }
    }

    const CuspClass P = make_cusp_class(1, 1, N);
    int n0 = j_pole_order(P, N);
    for (const auto& f : rep.factors) n0 += f.m * pole_of(f.G, g);
    for (int extra = opt.guard + 2 * g + 2;; extra *= 2) {
        const int prec = n0 + extra;
        if (prec > 8 * kMaxLocalPrec) throw JRepError("precision limit reached while representing J");
        std::vector<QSeries> B;
        for (const auto& f : F) B.push_back(expand_rational(f, P, prec));
        const QSeries S = j_at_cusp(P, N, prec) * eval_on_series(rep.denominator, B);
        RPoly PN;
        try {
            PN = reduce_to_poly(S, B, g);
        } catch (const RelationError&) {
            if (extra > 4 * (opt.guard + 2 * g + 2)) throw;
            continue;
        }
        const QSeries residual = S - eval_on_series(PN, B);
        if (!residual.is_zero()) throw JRepError("J representation residual does not vanish");
        if (residual.precision() < opt.guard) continue;
        rep.P_N = std::move(PN);
        break;
    }

    if ((g <= 2 || opt.collapse) && (g == 0 || model) && (g <= 1 || H))
        rep.collapsed = collapse(rep.P_N, rep.denominator, g, model, H);
    else if (opt.collapse)
        throw JRepError("collapsing needs the plane model (and U_k / Delta for g >= 2)");
    return rep;
}

CollapsedJ collapse(const RPoly& P_N, const RPoly& denominator, int g, const std::optional<BivarPoly>& model,
                    const std::optional<RationalRep>& H) {
    CollapsedJ out;
    if (g == 0) {
        out.num = {to_upoly(P_N, 0)};
        out.den = to_upoly(denominator, 0);
    } else {
        if (!model) throw JRepError("collapsing needs the plane model");
        auto [A, da] = to_xy(P_N, g, model, H);
        auto [B, db] = to_xy(denominator, g, model, H);
        if (da > db) B = reduce_mod_model(B * H->delta.pow(static_cast<unsigned>(da - db)), *model);
        if (db > da) A = reduce_mod_model(A * H->delta.pow(static_cast<unsigned>(db - da)), *model);
        if (B.degree(1) > 0) {
            // 1/B in Q(X)[Y]/(F_N): solve M v = e_0 with M the matrix of multiplication by B.
            const RPoly Y = RPoly::variable(2, 1);
            std::vector<std::vector<RPoly>> M(static_cast<std::size_t>(g + 1),
                                              std::vector<RPoly>(static_cast<std::size_t>(g + 1), RPoly(2)));
            RPoly col = B;
            for (int j = 0; j <= g; ++j) {
                for (const auto& [e, c] : col.terms()) M[e[1]][j].add_term({e[0], 0}, c);
                col = reduce_mod_model(col * Y, *model);
            }
            const RPoly det = poly_determinant(M);
            if (det.is_zero()) throw JRepError("denominator is a zero divisor modulo the model");
            RPoly inv(2);
            for (int k = 0; k <= g; ++k) {
                std::vector<std::vector<RPoly>> minor;
                for (int r = 1; r <= g; ++r) {
                    std::vector<RPoly> row;
                    for (int c = 0; c <= g; ++c)
                        if (c != k) row.push_back(M[r][c]);
                    minor.push_back(std::move(row));
                }
                RPoly cof = g == 0 ? RPoly::constant(2, 1) : poly_determinant(minor);
                if (k % 2) cof = -cof;
                inv += cof * Y.pow(static_cast<unsigned>(k));
            }
            if (!(reduce_mod_model(B * inv, *model) == det)) throw JRepError("denominator inversion check failed");
            A = reduce_mod_model(A * inv, *model);
            B = det;
        }
        for (int k = 0; k <= g; ++k) out.num.push_back(coeff_in_y(A, k));
        out.den = to_upoly(B, 0);
    }
    UPoly common = out.den;
    for (const auto& c : out.num) common = upoly_gcd(common, c);
    if (common.size() > 1) {
        UPoly rem;
        out.den = upoly_divmod(out.den, common, rem);
        for (auto& c : out.num) c = upoly_divmod(c, common, rem);
    }
    const Rational lead = out.den.back();
    for (auto& c : out.den) c /= lead;
    for (auto& u : out.num)
        for (auto& c : u) c /= lead;
    return out;
}

// ---------------------------------------------------------------------------

JValue evaluate_j(const JRepresentation& rep, const std::optional<BivarPoly>& model,
                  const std::optional<RationalRep>& H, const Rational& x, const Rational& y) {
    const int g = rep.g;
    const SeriesTag tag{1, 1, 1};
    const int T = 32 + 4 * (std::max(rep.P_N.total_degree(), 0) + std::max(rep.denominator.total_degree(), 0)) *
                           (g >= 2 ? 2 : 1);
    auto linear = [&](const Rational& a) {
        return QSeries(tag, 0, T, {a, Rational(1)});
    };
    std::vector<QSeries> Fs;
    if (g == 0) {
        Fs.push_back(linear(x));
    } else {
        if (!model) throw JRepError("evaluation needs the plane model");
        if (sgn(eval_point(*model, {x, y})) != 0) throw JRepError("point is not on the curve");
        const Rational fx = eval_point(derivative(*model, 0), {x, y});
        const Rational fy = eval_point(derivative(*model, 1), {x, y});
        // Local branch: solve for the coordinate whose partial derivative is nonzero.
        int solve_var;
        if (sgn(fy) != 0)
            solve_var = 1;
        else if (sgn(fx) != 0)
            solve_var = 0;
        else
            throw JRepError("point is singular on the model");
        const RPoly dF = derivative(*model, solve_var);
        std::vector<QSeries> XY{linear(x), linear(y)};
        XY[solve_var] = QSeries::constant(tag, solve_var ? y : x, T);
        for (int step = 1; step < 2 * T; step *= 2) {
            const QSeries f = eval_on_series(*model, XY);
            const QSeries d = eval_on_series(dF, XY);
            XY[solve_var] = XY[solve_var] - f * d.inverse();
        }
        if (!eval_on_series(*model, XY).is_zero()) throw JRepError("local branch did not converge");
        Fs = XY;
        if (g >= 2) {
            if (!H) throw JRepError("evaluation needs U_k / Delta for g >= 2");
            const QSeries dinv = eval_on_series(H->delta, XY).inverse();
            for (const auto& u : H->numerators) Fs.push_back(eval_on_series(u, XY) * dinv);
        }
    }
    const QSeries num = eval_on_series(rep.P_N, Fs);
    const QSeries den = eval_on_series(rep.denominator, Fs);
    if (den.is_zero()) throw JRepError("denominator vanishes to working precision");
    const QSeries J = num * den.inverse();
    JValue v;
    if (!J.is_zero() && J.valuation() < 0) {
        v.cusp = true;
        return v;
    }
    if (J.precision() <= 0) throw JRepError("insufficient precision to evaluate J");
    v.value = J.coeff(0);
    return v;
}

}  // namespace x0n
