#ifndef X0N_MODCURVE_HPP
#define X0N_MODCURVE_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace x0n {

class UnsupportedLevel : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidVector : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Smallest supported level (the Gamma1 cusp list needs N >= 5).
inline constexpr int kMinLevel = 5;
void require_supported_level(int N);

int gcd(long a, long b);
long mod(long a, long m);
std::vector<int> divisors(int N);

/// Representatives of (Z/NZ)^x / {+-1}, i.e. 1 <= lambda <= N/2 coprime to N.
std::vector<int> unit_classes(int N);

/// {n}_D and mu_D(n): 0 <= value <= N/(2D), n == sign*value (mod N/D),
/// sign = +1 on the two boundary values.
struct Braces {
    int value;
    int sign;
    friend bool operator==(const Braces&, const Braces&) = default;
};
Braces braces_mu(long n, int D, int N);

/// a = [a1,a2,a3,a4] modulo N with a_i != 0, a1 != +-a2, a3 != +-a4.
class WVector {
public:
    WVector(int level, std::array<long, 4> entries);

    int level() const { return level_; }
    const std::array<int, 4>& entries() const { return a_; }
    int operator[](int i) const { return a_[static_cast<std::size_t>(i)]; }

    /// lambda * a; lambda must be a unit mod N.
    WVector scaled(long lambda) const;
    /// True when (a1,a2) == (a3,a4) mod N, in which case W_a = 1.
    bool is_trivial() const { return a_[0] == a_[2] && a_[1] == a_[3]; }

    std::string to_string() const;
    friend bool operator==(const WVector&, const WVector&) = default;
    friend auto operator<=>(const WVector&, const WVector&) = default;

private:
    int level_;
    std::array<int, 4> a_;
};

/// Cusp (u:t) of Gamma_1(N); D = gcd(t, N).
struct Gamma1Cusp {
    int u;
    int t;
    int D;
    friend bool operator==(const Gamma1Cusp&, const Gamma1Cusp&) = default;
};

/// Gamma_0(N) cusp <u/D>. `width` is gcd(D, N/D), the exponent e such that
/// q_D^e is the local parameter. B(u,D) = [[u, c], [D, d]] with u*d - c*D = 1.
struct CuspClass {
    int u;
    int D;
    int width;
    int d;
    long c;
    friend bool operator==(const CuspClass&, const CuspClass&) = default;
    std::string to_string() const { return "<" + std::to_string(u) + "/" + std::to_string(D) + ">"; }
};

std::vector<Gamma1Cusp> cusps_gamma1(int N);
std::vector<CuspClass> cusps_gamma0(int N);
CuspClass make_cusp_class(int u, int D, int N);
CuspClass cusp_class_of(int u, int t, int N);

/// Order of W_a at a Gamma_1 cusp with D = gcd(t, N), in q_D units.
int w_order(const WVector& a, const Gamma1Cusp& q);
/// Same, given only t (the order does not depend on u).
int w_order_at_t(const WVector& a, int t);

/// min over s (gcd(s, N/D) = 1, 1 <= s <= N/(2D)) of o(s a) + o(s b) at (1:D).
/// Lower bound for the valuation of T(W_a W_b) at any cusp <u/D>, in q_D units.
int trace_order_bound(const WVector& a, const std::optional<WVector>& b, int D);

int genus0(int N);

/// Pole order of j at <u/D> in the local parameter q_D^width: N / (D * width).
int j_pole_order(const CuspClass& q, int N);

}  // namespace x0n

#endif  // X0N_MODCURVE_HPP
