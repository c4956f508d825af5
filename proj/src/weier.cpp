#include "x0n/weier.hpp"

#include <algorithm>
#include <span>

namespace x0n {

namespace {

SeriesTag qd_tag(const CuspClass& q, int N) { return SeriesTag{N, q.D, 1}; }

// Adds sign * (T_c) to the table, where with w = zeta^{c*} q_D^{b} and
// Q = q_D^{N/D}:
//   T_c = sum_{m>=0} sum_{n>=1} n w^n Q^{mn} + sum_{m>=1} sum_{n>=1} n w^{-n} Q^{mn}.
// For b = 0 the m = 0 part is returned separately as the exponent c* of w.
std::optional<long> add_wp(std::vector<long long>& counts, long c, int sign, const CuspClass& q, int N,
                           int prec) {
    const auto [b, mu] = braces_mu(c, q.D, N);
    const long M = N / q.D;
    const long cstar = mod(static_cast<long>(mu) * mod(c, N) % N * q.d, N);
    const long m0 = (b == 0) ? 1 : 0;
    for (long n = 1; n * (b + m0 * M) < prec; ++n) {
        const long k = mod(n * cstar, N);
        for (long m = m0;; ++m) {
            const long e = n * (b + m * M);
            if (e >= prec) break;
            counts[static_cast<std::size_t>(e * N + k)] += sign * n;
        }
    }
    for (long n = 1; n * (M - b) < prec; ++n) {
        const long k = mod(-n * cstar, N);
        for (long m = 1;; ++m) {
            const long e = n * (m * M - b);
            if (e >= prec) break;
            counts[static_cast<std::size_t>(e * N + k)] += sign * n;
        }
    }
    if (b == 0) return cstar;
    return std::nullopt;
}

template <class R>
R closed_form(long cstar, int N) {
    // w / (1 - w)^2 with w = zeta^{c*} != 1
    using T = RingTraits<R>;
    R w = T::root_power(N, cstar);
    R t = T::one(N) - w;
    t *= t;
    return w * T::inverse(t);
}

template <class R>
LaurentSeries<R> checked_product(const LaurentSeries<R>& a, const LaurentSeries<R>& b, int prec) {
    auto p = a * b;
    if (p.precision() < prec) throw SeriesError("internal precision shortfall in trace expansion");
    return p.truncated(prec);
}

}  // namespace

template <class R>
LaurentSeries<R> wp_diff(long r, long s, const CuspClass& q, int N, int prec) {
    using T = RingTraits<R>;
    prec = std::max(prec, 1);
    std::vector<long long> counts(static_cast<std::size_t>(prec) * N, 0);
    R constant = T::zero(N);
    if (auto cs = add_wp(counts, r, +1, q, N, prec)) constant += closed_form<R>(*cs, N);
    if (auto cs = add_wp(counts, s, -1, q, N, prec)) constant -= closed_form<R>(*cs, N);
    std::vector<R> coeffs;
    coeffs.reserve(static_cast<std::size_t>(prec));
    for (int e = 0; e < prec; ++e)
        coeffs.push_back(T::from_root_counts(N, std::span<const long long>(counts.data() + std::size_t(e) * N, N)));
    coeffs[0] += constant;
    return LaurentSeries<R>(qd_tag(q, N), 0, prec, std::move(coeffs));
}

template <class R>
LaurentSeries<R> w_expansion(const WVector& a, const CuspClass& q, int prec) {
    const int N = a.level();
    if (a.is_trivial()) return LaurentSeries<R>::constant(qd_tag(q, N), RingTraits<R>::one(N), prec);
    auto br = [&](int i) { return braces_mu(a[i], q.D, N).value; };
    const int vn = std::min(br(0), br(1));
    const int vd = std::min(br(2), br(3));
    if (prec <= vn - vd) return LaurentSeries<R>::zero(qd_tag(q, N), prec);
    int base = std::max(prec + vd + std::max(0, vd - vn), vd + 1);
    for (int attempt = 0; attempt < 8; ++attempt) {
        auto num = wp_diff<R>(a[0], a[1], q, N, base);
        auto den = wp_diff<R>(a[2], a[3], q, N, base);
        if (den.is_zero()) throw SeriesError("denominator of W" + a.to_string() + " vanishes");
        auto w = num * den.inverse();
        if (w.precision() >= prec) return w.truncated(prec);
        base += prec - w.precision();
    }
    throw SeriesError("could not reach precision for W" + a.to_string());
}

template <class R>
LaurentSeries<R> trace_term_expansion(const WVector& a, const std::optional<WVector>& b, const CuspClass& q,
                                      int prec) {
    const int N = a.level();
    auto sum = LaurentSeries<R>::zero(qd_tag(q, N), prec);
    for (int lam : unit_classes(N)) {
        const WVector la = a.scaled(lam);
        if (!b) {
            sum += w_expansion<R>(la, q, prec);
            continue;
        }
        const WVector lb = b->scaled(lam);
        const int va = w_order_at_t(la, q.D);
        const int vb = w_order_at_t(lb, q.D);
        if (va + vb >= prec) continue;
        sum += checked_product(w_expansion<R>(la, q, prec - vb), w_expansion<R>(lb, q, prec - va), prec);
    }
    return sum;
}

template QSeries wp_diff<Rational>(long, long, const CuspClass&, int, int);
template CSeries wp_diff<CycNum>(long, long, const CuspClass&, int, int);
template QSeries w_expansion<Rational>(const WVector&, const CuspClass&, int);
template CSeries w_expansion<CycNum>(const WVector&, const CuspClass&, int);
template QSeries trace_term_expansion<Rational>(const WVector&, const std::optional<WVector>&, const CuspClass&,
                                                int);
template CSeries trace_term_expansion<CycNum>(const WVector&, const std::optional<WVector>&, const CuspClass&,
                                              int);

// ---------------------------------------------------------------------------

ExpansionEngine::Key ExpansionEngine::key(const WVector& a, const std::optional<WVector>& b, const CuspClass& q) {
    return {a.level(), a.entries(), b ? b->entries() : std::array<int, 4>{0, 0, 0, 0}, q.u, q.D};
}

template <class R>
LaurentSeries<R> ExpansionEngine::term(const TraceTerm& t, const CuspClass& q, int prec) {
    auto& cache = [this]() -> std::map<Key, LaurentSeries<R>>& {
        if constexpr (std::is_same_v<R, Rational>)
            return qcache_;
        else
            return ccache_;
    }();
    const Key k = key(t.a, t.b, q);
    {
        std::lock_guard lock(mu_);
        auto it = cache.find(k);
        if (it != cache.end() && it->second.precision() >= prec) return it->second.truncated(prec);
    }
    auto s = trace_term_expansion<R>(t.a, t.b, q, prec);
    std::lock_guard lock(mu_);
    auto [it, inserted] = cache.try_emplace(k, s);
    if (!inserted && it->second.precision() < prec) it->second = s;
    return s;
}

template <class R>
LaurentSeries<R> ExpansionEngine::combine(const ModFuncExpr& f, const CuspClass& q, int local_prec) {
    const int N = f.level();
    const int prec = local_prec * q.width;
    auto sum = LaurentSeries<R>::constant(qd_tag(q, N), RingTraits<R>::from_rational(N, f.constant()), prec);
    for (const auto& t : f.terms()) {
        auto s = term<R>(t, q, prec);
        if constexpr (std::is_same_v<R, Rational>)
            sum += s.scaled(t.coeff);
        else
            sum += s.scaled(t.coeff);
    }
    return sum.rebased(q.width).truncated(local_prec);
}

CSeries ExpansionEngine::expand(const ModFuncExpr& f, const CuspClass& q, int local_prec) {
    if (q.D == 1) return to_cyclotomic_series(combine<Rational>(f, q, local_prec));
    return combine<CycNum>(f, q, local_prec);
}

QSeries ExpansionEngine::expand_rational(const ModFuncExpr& f, const CuspClass& q, int local_prec) {
    if (q.D == 1) return combine<Rational>(f, q, local_prec);
    return to_rational_series(combine<CycNum>(f, q, local_prec));
}

void ExpansionEngine::clear() {
    std::lock_guard lock(mu_);
    qcache_.clear();
    ccache_.clear();
}

ExpansionEngine& default_engine() {
    static ExpansionEngine engine;
    return engine;
}

// ---------------------------------------------------------------------------

QSeries j_series(int prec) {
    const SeriesTag tag{1, 1, 1};
    const int n = std::max(prec + 1, 1);  // E4 and Delta/q are needed through q^prec
    // E4 = 1 + 240 sum sigma_3(k) q^k, via a divisor sieve
    std::vector<Rational> e4(static_cast<std::size_t>(n), 0);
    std::vector<Integer> sigma3(static_cast<std::size_t>(n), 0);
    for (long d = 1; d < n; ++d)
        for (long m = d; m < n; m += d) sigma3[m] += Integer(d) * d * d;
    e4[0] = 1;
    for (int k = 1; k < n; ++k) e4[k] = Rational(240 * sigma3[k]);
    // prod (1 - q^k) by Euler's pentagonal theorem
    std::vector<Rational> eta(static_cast<std::size_t>(n), 0);
    for (long k = 0;; ++k) {
        const long p1 = k * (3 * k - 1) / 2, p2 = k * (3 * k + 1) / 2;
        if (p1 >= n) break;
        const int sign = (k % 2) ? -1 : 1;
        eta[p1] = sign;
        if (k > 0 && p2 < n) eta[p2] = sign;
    }
    QSeries E4(tag, 0, n, std::move(e4));
    QSeries Eta(tag, 0, n, std::move(eta));
    QSeries e2 = Eta * Eta, e4p = e2 * e2, e8 = e4p * e4p, e16 = e8 * e8;
    QSeries delta_over_q = e16 * e8;
    QSeries num = E4 * E4 * E4;
    QSeries j = num * delta_over_q.inverse();  // = q * j
    std::vector<Rational> c(j.coeffs().begin(), j.coeffs().end());
    return QSeries(tag, j.valuation() - 1, std::min(prec, j.precision() - 1), std::move(c));
}

QSeries j_at_cusp(const CuspClass& q, int N, int local_prec) {
    const int k = N / (q.D * q.width);
    QSeries j = j_series(ceil_div(local_prec, k)).inflated(k).truncated(local_prec);
    return j.with_tag(SeriesTag{N, q.D, q.width});
}

}  // namespace x0n
