#ifndef X0N_CHECKS_PROPERTIES_HPP
#define X0N_CHECKS_PROPERTIES_HPP

#include "x0n/pipeline.hpp"
#include "x0n/weier.hpp"

#include <random>
#include <string>
#include <vector>

namespace x0n::checks {

struct PropResult {
    int checked = 0;
    int failed = 0;
    std::string first_failure;
    bool ok() const { return checked > 0 && failed == 0; }
    void fail(const std::string& s) {
        if (failed++ == 0) first_failure = s;
    }
};

inline WVector random_vector(int N, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(1, N - 1);
    while (true) {
        try {
            WVector a(N, {d(rng), d(rng), d(rng), d(rng)});
            if (!a.is_trivial()) return a;
        } catch (const InvalidVector&) {
        }
    }
}

// deg div(W_a) on X_1(N) is zero.
inline PropResult divisor_degree_zero(int N, int count, std::mt19937& rng) {
    PropResult r;
    const auto cusps = cusps_gamma1(N);
    for (int i = 0; i < count; ++i) {
        const WVector a = random_vector(N, rng);
        int deg = 0;
        for (const auto& c : cusps) deg += w_order(a, c);
        ++r.checked;
        if (deg != 0) r.fail(a.to_string() + " has divisor degree " + std::to_string(deg));
    }
    return r;
}

// Predicted order of W_a at <u/D> equals the valuation of its expansion.
inline PropResult order_matches_expansion(const std::vector<int>& levels, int count, std::mt19937& rng) {
    PropResult r;
    std::uniform_int_distribution<std::size_t> pick_level(0, levels.size() - 1);
    for (int i = 0; i < count; ++i) {
        const int N = levels[pick_level(rng)];
        const auto cusps = cusps_gamma0(N);
        const CuspClass& Q = cusps[std::uniform_int_distribution<std::size_t>(0, cusps.size() - 1)(rng)];
        const WVector a = random_vector(N, rng);
        const int predicted = w_order_at_t(a, Q.D);
        const CSeries s = w_expansion<CycNum>(a, Q, predicted + 4);
        ++r.checked;
        if (s.is_zero() || s.valuation() != predicted)
            r.fail(a.to_string() + " at " + Q.to_string() + " N=" + std::to_string(N) + ": predicted " +
                   std::to_string(predicted) + ", expansion " + (s.is_zero() ? "zero" : std::to_string(s.valuation())));
    }
    return r;
}

// The order bound for T(W_a W_b) never exceeds the actual valuation.
inline PropResult trace_bound_holds(const std::vector<int>& levels, int count, std::mt19937& rng) {
    PropResult r;
    std::uniform_int_distribution<std::size_t> pick_level(0, levels.size() - 1);
    for (int i = 0; i < count; ++i) {
        const int N = levels[pick_level(rng)];
        const auto cusps = cusps_gamma0(N);
        const CuspClass& Q = cusps[std::uniform_int_distribution<std::size_t>(0, cusps.size() - 1)(rng)];
        const WVector a = random_vector(N, rng);
        const WVector b = random_vector(N, rng);
        const int bound = trace_order_bound(a, b, Q.D);
        const CSeries s = trace_term_expansion<CycNum>(a, b, Q, bound + 6);
        ++r.checked;
        const int actual = s.is_zero() ? s.precision() : s.valuation();
        if (actual < bound)
            r.fail(a.to_string() + "*" + b.to_string() + " at " + Q.to_string() + " N=" + std::to_string(N) +
                   ": bound " + std::to_string(bound) + " > valuation " + std::to_string(actual));
    }
    return r;
}

// d_P(Delta) = g^2 - 1 where Delta is the determinant of the relation system.
inline int delta_pole_order(const PipelineResult& res) {
    const CuspClass P = make_cusp_class(1, 1, res.N);
    const int prec = res.g * res.g + 8;
    std::vector<QSeries> B;
    for (int k = 0; k < 2; ++k) B.push_back(expand_rational(res.gens.funcs[k], P, prec));
    const QSeries d = eval_on_series(res.H->delta, B);
    return d.is_zero() ? 0 : -d.valuation();
}

// F_N = c Y^{g+1} + sum_j Phi_j(X) Y^j with deg Phi_j <= g+1-j for 1 <= j <= g,
// deg Phi_0 = g+2 and nothing above Y^{g+1}.
inline PropResult phi_degrees(const BivarPoly& eq, int g) {
    PropResult r;
    ++r.checked;
    for (const auto& [e, c] : eq.terms()) {
        const int dx = e[0], dy = e[1];
        bool ok = true;
        if (dy > g + 1) ok = false;
        if (dy == g + 1 && dx != 0) ok = false;
        if (dy == 0 && dx > g + 2) ok = false;
        if (dy >= 1 && dy <= g && dx > g + 1 - dy) ok = false;
        if (!ok) r.fail("monomial X^" + std::to_string(dx) + " Y^" + std::to_string(dy) + " out of shape");
    }
    bool has_x = false, has_y = false;
    for (const auto& [e, c] : eq.terms()) {
        if (e[1] == 0 && e[0] == g + 2) has_x = true;
        if (e[1] == g + 1 && e[0] == 0) has_y = true;
    }
    if (!has_x || !has_y) r.fail("missing X^{g+2} or Y^{g+1}");
    return r;
}

// Emitted polynomials are identical at guard and 2*guard.
inline PropResult precision_stability(int N, int guard = kDefaultGuard) {
    PropResult r;
    PipelineConfig lo, hi;
    lo.N = hi.N = N;
    lo.precision_guard = guard;
    hi.precision_guard = 2 * guard;
    const auto a = run(lo);
    const auto b = run(hi);
    ++r.checked;
    if (generator_json(a.gens) != generator_json(b.gens)) r.fail("generators differ");
    if (a.equation.has_value() != b.equation.has_value() || (a.equation && !(*a.equation == *b.equation)))
        r.fail("equation differs");
    if (a.H.has_value() != b.H.has_value() || (a.H && !(a.H->delta == b.H->delta))) r.fail("Delta differs");
    if (jrep_json(a) != jrep_json(b)) r.fail("J representation differs");
    return r;
}

}  // namespace x0n::checks

#endif  // X0N_CHECKS_PROPERTIES_HPP
