#include "x0n/search.hpp"

#include "x0n/cyclotomic.hpp"
#include "x0n/weier.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace x0n {

SearchBounds parse_bounds(const std::string& text) {
    SearchBounds b;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad bounds item '" + item + "' (expected key=value)");
        const std::string key = item.substr(0, eq);
        int value;
        try {
            value = std::stoi(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad bounds value in '" + item + "'");
        }
        if (key == "entry")
            b.max_entry = value;
        else if (key == "terms")
            b.max_terms = value;
        else if (key == "slack")
            b.slack = value;
        else if (key == "candidates")
            b.max_candidates = value;
        else
            throw std::invalid_argument("unknown bounds key '" + key + "'");
    }
    if (b.max_terms < 1 || b.max_terms > 2) throw std::invalid_argument("terms must be 1 or 2");
    if (b.max_entry < 0 || b.max_candidates < 1) throw std::invalid_argument("bounds must be positive");
    return b;
}

std::string to_string(const SearchBounds& b) {
    return "entry=" + std::to_string(b.max_entry) + ",terms=" + std::to_string(b.max_terms) +
           ",slack=" + std::to_string(b.slack) + ",candidates=" + std::to_string(b.max_candidates);
}

namespace {

using Key = std::array<int, 8>;

std::array<int, 4> canon(const WVector& v) {
    const int N = v.level();
    std::array<int, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = std::min(v[i], N - v[i]);
    return out;
}

Key orbit_key(const WVector& a, const std::optional<WVector>& b) {
    Key best;
    bool first = true;
    for (int l : unit_classes(a.level())) {
        auto x = canon(a.scaled(l));
        auto y = b ? canon(b->scaled(l)) : std::array<int, 4>{0, 0, 0, 0};
        if (b && y < x) std::swap(x, y);
        Key k;
        std::copy(x.begin(), x.end(), k.begin());
        std::copy(y.begin(), y.end(), k.begin() + 4);
        if (first || k < best) best = k;
        first = false;
    }
    return best;
}

struct Row {
    std::vector<Rational> v;
    std::map<int, Rational> combo;  // index into the function list -> coefficient
    int pivot = -1;
};

int first_nonzero(const std::vector<Rational>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) return static_cast<int>(i);
    return -1;
}

}  // namespace

std::vector<Candidate> candidate_pool(int N, const SearchBounds& bounds) {
    const int g = genus0(N);
    const int slack = bounds.slack < 0 ? 2 * g : bounds.slack;
    const int M = bounds.max_entry > 0 ? std::min(bounds.max_entry, N / 2) : N / 2;
    const int lo = -(2 * g + 1 + slack), hi = -(g + 1);
    std::vector<std::pair<int, int>> others;  // (D, width)
    for (int D : divisors(N))
        if (D != 1) others.emplace_back(D, gcd(D, N / D));

    std::vector<WVector> singles, seconds;
    for (int k = 1; k <= M; ++k)
        for (int x = 1; x <= M; ++x)
            for (int y = 1; y <= M; ++y) {
                if (x == k || y == k || x == y) continue;
                WVector a(N, {x, k, y, k});
                singles.push_back(a);
                if (k == 1) seconds.push_back(a);
            }

    std::set<Key> seen;
    std::vector<Candidate> out;
    auto consider = [&](const WVector& a, const std::optional<WVector>& b) {
        const int bp = trace_order_bound(a, b, 1);
        if (bp < lo || bp > hi) return;
        bool regular = true;
        for (auto [D, w] : others) {
            const int bd = trace_order_bound(a, b, D);
            if (bd < -w) return;
            if (bd < 0) regular = false;
        }
        if (!seen.insert(orbit_key(a, b)).second) return;
        out.push_back({ModFuncExpr::trace(a, b), bp, regular});
    };
    for (const auto& a : singles) consider(a, std::nullopt);
    if (bounds.max_terms >= 2)
        for (const auto& a : singles)
            for (const auto& b : seconds)
                if (!(a == b)) consider(a, b);

    std::stable_sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) {
        if (x.regular != y.regular) return x.regular;
        const auto tx = x.f.terms().size() + (x.f.terms().empty() ? 0 : x.f.terms()[0].b.has_value());
        const auto ty = y.f.terms().size() + (y.f.terms().empty() ? 0 : y.f.terms()[0].b.has_value());
        if (tx != ty) return tx < ty;
        return x.bound_p > y.bound_p;
    });
    if (static_cast<int>(out.size()) > bounds.max_candidates) out.erase(out.begin() + bounds.max_candidates, out.end());
    return out;
}

GeneratorSystem assemble_generators(int N, const std::vector<Candidate>& pool, const std::vector<ModFuncExpr>& fixed) {
    const int g = genus0(N);
    const CuspClass P = make_cusp_class(1, 1, N);
    std::vector<CuspClass> others;
    for (const auto& Q : cusps_gamma0(N))
        if (Q.D != 1) others.push_back(Q);
    const int deg = CyclotomicField::of(N).degree();

    std::vector<ModFuncExpr> funcs(fixed);
    for (const auto& c : pool) funcs.push_back(c.f);
    int maxpole = 2 * g + 1;
    for (const auto& c : pool) maxpole = std::max(maxpole, -c.bound_p);
    for (std::size_t i = 0; i < fixed.size(); ++i) maxpole = std::max(maxpole, g + 1 + static_cast<int>(i));

    // Columns: simple-pole coefficients at the other cusps (rational coordinates),
    // then the principal part at P from the highest pole down.
    const int bad = static_cast<int>(others.size()) * deg;
    const int width = bad + maxpole;
    auto column_of_pole = [&](int n) { return bad + (maxpole - n); };

    std::vector<Row> basis;
    std::set<int> achieved;
    auto achieved_all = [&] {
        for (int n = g + 1; n <= 2 * g + 1; ++n)
            if (!achieved.count(n)) return false;
        return true;
    };
    for (int idx = 0; idx < static_cast<int>(funcs.size()) && !achieved_all(); ++idx) {
        const ModFuncExpr& f = funcs[idx];
        Row r;
        r.v.assign(static_cast<std::size_t>(width), 0);
        r.combo[idx] = 1;
        bool usable = true;
        for (std::size_t q = 0; q < others.size() && usable; ++q) {
            const CSeries s = expand(f, others[q], 1);
            if (s.valuation() < -1) {
                usable = false;
                break;
            }
            if (s.valuation() == -1) {
                const auto& c = s.coeff(-1).coeffs();
                for (int k = 0; k < deg && k < static_cast<int>(c.size()); ++k) r.v[q * deg + k] = c[k];
            }
        }
        if (!usable) {
            if (idx < static_cast<int>(fixed.size())) throw SearchError("fixed function " + f.to_string() + " has a pole away from <1/1>");
            continue;
        }
        const QSeries sp = expand_rational(f, P, 1);
        if (sp.valuation() < -maxpole) continue;
        for (int n = 1; n <= maxpole; ++n) r.v[column_of_pole(n)] = sp.coeff(-n);

        while (true) {
            const int c = first_nonzero(r.v);
            if (c < 0) break;
            auto it = std::find_if(basis.begin(), basis.end(), [&](const Row& b) { return b.pivot == c; });
            if (it == basis.end()) {
                r.pivot = c;
                break;
            }
            const Rational f2 = r.v[c] / it->v[c];
            for (int k = c; k < width; ++k)
                if (sgn(it->v[k]) != 0) r.v[k] -= f2 * it->v[k];
            for (const auto& [j, cj] : it->combo) {
                r.combo[j] -= f2 * cj;
                if (sgn(r.combo[j]) == 0) r.combo.erase(j);
            }
        }
        if (r.pivot < 0) {
            if (idx < static_cast<int>(fixed.size())) throw SearchError("fixed functions are linearly dependent");
            continue;
        }
        if (r.pivot >= bad) achieved.insert(maxpole - (r.pivot - bad));
        basis.push_back(std::move(r));
    }
    if (!achieved_all()) {
        std::string got;
        for (int n : achieved) got += (got.empty() ? "" : ",") + std::to_string(n);
        throw SearchError("generator search failed at N=" + std::to_string(N) + ": pole orders reached at <1/1> {" +
                          got + "}, need " + std::to_string(g + 1) + ".." + std::to_string(2 * g + 1) +
                          " (widen the bounds)");
    }

    GeneratorSystem sys;
    sys.N = N;
    sys.g = g;
    sys.provenance = fixed.empty() ? "searched" : "completed";
    for (int n = g + 1; n <= 2 * g + 1; ++n) {
        const int slot = n - g - 1;
        if (slot < static_cast<int>(fixed.size())) {
            sys.funcs.push_back(fixed[slot]);
            continue;
        }
        const Row& r = *std::find_if(basis.begin(), basis.end(), [&](const Row& b) { return b.pivot == column_of_pole(n); });
        ModFuncExpr f(N);
        const Rational scale = 1 / r.v[r.pivot];
        for (const auto& [j, cj] : r.combo) f = f + funcs[j].scaled(cj * scale);
        const QSeries s = expand_rational(f, P, 1);
        f = f.plus_constant(-s.coeff(0));
        sys.funcs.push_back(f);
    }
    const auto rep = verify_system(sys);
    if (!rep.ok) throw SearchError("assembled system failed verification: " + rep.issues.front());
    return sys;
}

GeneratorSystem search_generators(int N, const SearchBounds& bounds, const std::vector<ModFuncExpr>& fixed) {
    const auto pool = candidate_pool(N, bounds);
    if (pool.empty() && static_cast<int>(fixed.size()) < genus0(N) + 1)
        throw SearchError("empty candidate pool at N=" + std::to_string(N) + " with bounds " + to_string(bounds));
    return assemble_generators(N, pool, fixed);
}

VerifyReport verify_system(const GeneratorSystem& sys) {
    VerifyReport rep;
    const int g = genus0(sys.N);
    if (sys.g != g) rep.flag("genus " + std::to_string(sys.g) + " does not match g0(N)=" + std::to_string(g));
    if (static_cast<int>(sys.funcs.size()) != g + 1) {
        rep.flag("expected " + std::to_string(g + 1) + " functions, found " + std::to_string(sys.funcs.size()));
        return rep;
    }
    for (const auto& f : sys.funcs)
        if (f.level() != sys.N) {
            rep.flag("function " + f.to_string() + " has level " + std::to_string(f.level()) + ", expected " +
                     std::to_string(sys.N));
            return rep;
        }
    const CuspClass P = make_cusp_class(1, 1, sys.N);
    for (int i = 1; i <= g + 1; ++i) {
        const auto& f = sys.funcs[i - 1];
        const QSeries s = expand_rational(f, P, 1);
        const std::string name = "F" + std::to_string(i);
        if (s.is_zero() || s.valuation() != -(g + i)) {
            rep.flag(name + " has order " + std::to_string(s.valuation()) + " at <1/1>, expected " +
                     std::to_string(-(g + i)));
            continue;
        }
        if (s.leading() != 1) rep.flag(name + " has leading coefficient " + to_string(s.leading()) + " (normalization)");
        for (const auto& Q : cusps_gamma0(sys.N)) {
            if (Q.D == 1) continue;
            const CSeries e = expand(f, Q, 1);
            if (!e.is_zero() && e.valuation() < 0)
                rep.flag(name + " has a pole of order " + std::to_string(-e.valuation()) + " at " + Q.to_string());
        }
    }
    return rep;
}

}  // namespace x0n
