#ifndef X0N_POLY_HPP
#define X0N_POLY_HPP

#include "x0n/ring.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace x0n {

using Exponent = std::vector<int>;

/// Orders exponent vectors by the last variable first, descending; for
/// (X, Y) this is deg_Y descending, then deg_X descending.
struct ExponentOrder {
    bool operator()(const Exponent& a, const Exponent& b) const {
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }
};

/// Sparse multivariate polynomial with coefficients in Q or Q(zeta_N).
template <class R>
class MPoly {
public:
    using Traits = RingTraits<R>;
    using Terms = std::map<Exponent, R, ExponentOrder>;

    explicit MPoly(int nvars = 0, int level = 1) : nvars_(nvars), level_(level) {}

    static MPoly constant(int nvars, const R& c, int level = 1) {
        MPoly p(nvars, level);
        p.add_term(Exponent(static_cast<std::size_t>(nvars), 0), c);
        return p;
    }
    static MPoly variable(int nvars, int i, int level = 1) {
        MPoly p(nvars, level);
        Exponent e(static_cast<std::size_t>(nvars), 0);
        e[static_cast<std::size_t>(i)] = 1;
        p.add_term(e, Traits::one(level));
        return p;
    }

    int nvars() const { return nvars_; }
    int level() const { return level_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    R coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Traits::zero(level_) : it->second;
    }
    R constant_term() const { return coeff(Exponent(static_cast<std::size_t>(nvars_), 0)); }

    void add_term(const Exponent& e, const R& c) {
        if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("exponent length mismatch");
        if (Traits::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (Traits::is_zero(it->second)) terms_.erase(it);
        }
    }

    int degree(int var) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(var)]);
        return d;
    }
    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }
    static int total_degree(const Exponent& e) {
        int s = 0;
        for (int x : e) s += x;
        return s;
    }

    MPoly operator-() const {
        MPoly r(*this);
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    MPoly& operator+=(const MPoly& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        a.check(b);
        MPoly r(a.nvars_, a.level_);
        Exponent e(static_cast<std::size_t>(a.nvars_));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly scaled(const R& s) const {
        MPoly r(nvars_, level_);
        for (const auto& [e, c] : terms_) r.add_term(e, c * s);
        return r;
    }
    MPoly pow(unsigned k) const {
        MPoly r = constant(nvars_, Traits::one(level_), level_);
        MPoly b = *this;
        while (k) {
            if (k & 1) r *= b;
            k >>= 1;
            if (k) b *= b;
        }
        return r;
    }

    /// Substitutes values[i] for variable i. V must support +, *, and
    /// construction of constants through `make_const`.
    template <class V, class MakeConst>
    V evaluate(const std::vector<V>& values, MakeConst&& make_const) const {
        if (static_cast<int>(values.size()) != nvars_) throw std::invalid_argument("evaluate: arity mismatch");
        std::vector<std::vector<V>> powers(values.size());
        auto power = [&](int var, int k) -> const V& {
            auto& p = powers[static_cast<std::size_t>(var)];
            if (p.empty()) p.push_back(values[var]);
            while (static_cast<int>(p.size()) < k) p.push_back(p.back() * values[var]);
            return p[static_cast<std::size_t>(k - 1)];
        };
        V acc = make_const(Traits::zero(level_));
        for (const auto& [e, c] : terms_) {
            V term = make_const(c);
            for (int i = 0; i < nvars_; ++i)
                if (e[i] > 0) term = term * power(i, e[i]);
            acc = acc + term;
        }
        return acc;
    }

    /// Substitutes polynomials for variables (composition).
    MPoly substitute(const std::vector<MPoly>& values) const {
        if (static_cast<int>(values.size()) != nvars_) throw std::invalid_argument("substitute: arity mismatch");
        const int nv = values.empty() ? 0 : values[0].nvars_;
        return evaluate(values, [&](const R& c) { return MPoly::constant(nv, c, level_); });
    }

    std::string to_string(const std::vector<std::string>& names) const;

    friend bool operator==(const MPoly& a, const MPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    void check(const MPoly& o) const {
        if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial arity mismatch");
    }

    int nvars_;
    int level_;
    Terms terms_;
};

using RPoly = MPoly<Rational>;
using CPoly = MPoly<CycNum>;

/// Polynomial in X (variable 0) and Y (variable 1) over Q.
using BivarPoly = RPoly;
inline const std::vector<std::string>& xy_names() {
    static const std::vector<std::string> n{"X", "Y"};
    return n;
}
std::vector<std::string> f_names(int count);

/// Text form: terms in map order, "c*X^2*Y", coefficients printed as integers
/// or fractions, e.g. "Y^2 + X*Y - Y - X^3 - 6*X^2 - 18*X - 12".
template <>
std::string MPoly<Rational>::to_string(const std::vector<std::string>& names) const;
template <>
std::string MPoly<CycNum>::to_string(const std::vector<std::string>& names) const;

/// Multiplies by the positive lcm of the coefficient denominators.
RPoly integer_cleared(const RPoly& p);
/// Divides by the content and makes the first coefficient (map order) positive.
RPoly primitive_part(const RPoly& p);
/// True when a = s*b for a nonzero rational s.
bool proportional(const RPoly& a, const RPoly& b);

/// Throws CyclotomicError when a coefficient is irrational.
RPoly to_rational_poly(const CPoly& p);
CPoly to_cyclotomic_poly(const RPoly& p, int level);

class PolyParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses sums/products/powers of rationals, variables and parenthesised
/// subexpressions. Multiplication may be implicit ("729F2^6", "2XY"),
/// underscores in identifiers are ignored ("F_2" == "F2"), and division is
/// allowed by constants only.
RPoly parse_poly(std::string_view text, const std::vector<std::string>& names);

// --- univariate helpers over Q (coefficients constant-first) ---------------

using UPoly = std::vector<Rational>;
void upoly_trim(UPoly& p);
UPoly upoly_mul(const UPoly& a, const UPoly& b);
/// Returns quotient, sets remainder.
UPoly upoly_divmod(const UPoly& a, const UPoly& b, UPoly& rem);
/// Monic gcd (zero polynomial if both are zero).
UPoly upoly_gcd(UPoly a, UPoly b);
/// Variable `var` of p, which must not involve the other variables.
UPoly to_upoly(const RPoly& p, int var);
RPoly from_upoly(const UPoly& u, int nvars, int var);

}  // namespace x0n

#endif  // X0N_POLY_HPP
