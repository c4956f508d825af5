#include "x0n/modcurve.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace x0n {

void require_supported_level(int N) {
    if (N < kMinLevel)
        throw UnsupportedLevel("level N=" + std::to_string(N) + " is not supported (need N >= " +
                               std::to_string(kMinLevel) + ")");
}

int gcd(long a, long b) { return static_cast<int>(std::gcd(a, b)); }

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

std::vector<int> divisors(int N) {
    std::vector<int> out;
    for (int d = 1; d <= N; ++d)
        if (N % d == 0) out.push_back(d);
    return out;
}

std::vector<int> unit_classes(int N) {
    std::vector<int> out;
    for (int l = 1; 2 * l <= N; ++l)
        if (gcd(l, N) == 1) out.push_back(l);
    if (out.empty()) out.push_back(1);
    return out;
}

Braces braces_mu(long n, int D, int N) {
    const long M = N / D;
    const long r = mod(n, M);
    if (2 * r <= M) return {static_cast<int>(r), 1};
    return {static_cast<int>(M - r), -1};
}

// ---------------------------------------------------------------------------

WVector::WVector(int level, std::array<long, 4> entries) : level_(level) {
    if (level < 1) throw InvalidVector("vector level must be positive");
    for (int i = 0; i < 4; ++i) a_[i] = static_cast<int>(mod(entries[i], level));
    auto bad = [&](const std::string& why) {
        throw InvalidVector("invalid vector " + to_string() + " at N=" + std::to_string(level) + ": " + why);
    };
    for (int i = 0; i < 4; ++i)
        if (a_[i] == 0) bad("entry is 0 mod N");
    if (a_[0] == a_[1] || a_[0] == mod(-a_[1], level)) bad("a1 == +-a2 mod N");
    if (a_[2] == a_[3] || a_[2] == mod(-a_[3], level)) bad("a3 == +-a4 mod N");
}

WVector WVector::scaled(long lambda) const {
    if (gcd(lambda, level_) != 1) throw InvalidVector("scaling by a non-unit");
    return WVector(level_, {lambda * a_[0], lambda * a_[1], lambda * a_[2], lambda * a_[3]});
}

std::string WVector::to_string() const {
    return "[" + std::to_string(a_[0]) + "," + std::to_string(a_[1]) + "," + std::to_string(a_[2]) + "," +
           std::to_string(a_[3]) + "]";
}

// ---------------------------------------------------------------------------

std::vector<Gamma1Cusp> cusps_gamma1(int N) {
    require_supported_level(N);
    std::vector<Gamma1Cusp> out;
    for (int t = 1; t <= N; ++t) {
        const int D = gcd(t, N);
        int umax;
        if (2 * t < N)
            umax = D;
        else if (2 * t == N || t == N)
            umax = D / 2;  // floor; exact for N >= 5
        else
            continue;
        for (int u = 1; u <= umax; ++u)
            if (gcd(u, D) == 1) out.push_back({u, t, D});
    }
    return out;
}

CuspClass make_cusp_class(int u, int D, int N) {
    if (N % D != 0) throw std::invalid_argument("D must divide N");
    if (gcd(u, D) != 1) throw std::invalid_argument("cusp <u/D> needs gcd(u, D) = 1");
    const int width = gcd(D, N / D);
    int d = 0;
    while (mod(static_cast<long>(u) * d, D) != mod(1, D)) ++d;
    const long c = (static_cast<long>(u) * d - 1) / D;
    return {u, D, width, d, c};
}

std::vector<CuspClass> cusps_gamma0(int N) {
    require_supported_level(N);
    std::vector<CuspClass> out;
    for (int D : divisors(N)) {
        const int e = gcd(D, N / D);
        for (int v = 1; v <= e; ++v) {
            if (gcd(v, e) != 1) continue;
            int u = v;
            while (gcd(u, D) != 1) u += e;
            out.push_back(make_cusp_class(u, D, N));
        }
    }
    return out;
}

CuspClass cusp_class_of(int u, int t, int N) {
    const auto g1 = cusps_gamma1(N);
    const Gamma1Cusp probe{u, t, gcd(t, N)};
    if (std::find(g1.begin(), g1.end(), probe) == g1.end())
        throw std::invalid_argument("(" + std::to_string(u) + ":" + std::to_string(t) +
                                    ") is not a listed cusp of Gamma_1(" + std::to_string(N) + ")");
    const int D = probe.D;
    const int e = gcd(D, N / D);
    const long v = mod(static_cast<long>(t / D) * u, e);
    for (const auto& q : cusps_gamma0(N))
        if (q.D == D && mod(q.u, e) == v) return q;
    throw std::logic_error("no Gamma_0 class found for a Gamma_1 cusp");
}

// ---------------------------------------------------------------------------

int w_order_at_t(const WVector& a, int t) {
    const int N = a.level();
    const int D = gcd(t, N);
    const long tp = t / D;
    auto b = [&](int i) { return braces_mu(a[i] * tp, D, N).value; };
    return std::min(b(0), b(1)) - std::min(b(2), b(3));
}

int w_order(const WVector& a, const Gamma1Cusp& q) { return w_order_at_t(a, q.t); }

int trace_order_bound(const WVector& a, const std::optional<WVector>& b, int D) {
    const int N = a.level();
    const int M = N / D;
    int best = std::numeric_limits<int>::max();
    auto order = [&](const WVector& v, long s) {
        auto br = [&](int i) { return braces_mu(v[i] * s, D, N).value; };
        return std::min(br(0), br(1)) - std::min(br(2), br(3));
    };
    for (int s = 1; s <= std::max(1, M / 2); ++s) {
        if (gcd(s, M) != 1) continue;
        int o = order(a, s);
        if (b) o += order(*b, s);
        best = std::min(best, o);
    }
    return best;
}

int genus0(int N) {
    if (N < 1) throw std::invalid_argument("genus0: N must be positive");
    // index mu = N prod (1 + 1/p); elliptic points nu2, nu3; cusps nu_inf
    long mu = N;
    long nu2 = (N % 4 == 0) ? 0 : 1;
    long nu3 = (N % 9 == 0) ? 0 : 1;
    int n = N;
    for (int p = 2; p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        mu = mu / p * (p + 1);
        const int leg4 = (p == 2) ? 0 : (p % 4 == 1 ? 1 : -1);  // (-1/p)
        const int leg3 = (p == 3) ? 0 : (p % 3 == 1 ? 1 : -1);  // (-3/p)
        nu2 *= 1 + leg4;
        nu3 *= 1 + leg3;
    }
    long cusps = 0;
    for (int d : divisors(N)) {
        const int g = gcd(d, N / d);
        int phi = 0;
        for (int k = 1; k <= g; ++k)
            if (gcd(k, g) == 1) ++phi;
        cusps += phi;
    }
    // g = 1 + mu/12 - nu2/4 - nu3/3 - cusps/2, times 12
    const long twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps;
    return static_cast<int>(twelve_g / 12);
}

int j_pole_order(const CuspClass& q, int N) { return N / (q.D * q.width); }

}  // namespace x0n
