#ifndef X0N_CYCLOTOMIC_HPP
#define X0N_CYCLOTOMIC_HPP

#include "x0n/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace x0n {

/// Coefficients (constant term first) of the n-th cyclotomic polynomial,
/// obtained by dividing x^n - 1 exactly by the lower-order Phi_d. Memoized.
const std::vector<Integer>& cyclotomic_poly(int n);

int euler_phi(int n);

/// Q(zeta_N) presented as Q[z]/Phi_N(z). One instance per level, created on
/// first use and never destroyed; safe to share between threads.
class CyclotomicField {
public:
    static const CyclotomicField& of(int level);

    int level() const { return level_; }
    int degree() const { return degree_; }
    const std::vector<Integer>& modulus() const { return modulus_; }

    /// Reduced coefficients of zeta_N^k; k is taken modulo N.
    const std::vector<Rational>& root_power(long k) const;

    /// Reduces a coefficient vector of any length modulo Phi_N and resizes
    /// it to degree().
    void reduce(std::vector<Rational>& poly) const;

private:
    explicit CyclotomicField(int level);

    int level_;
    int degree_;
    std::vector<Integer> modulus_;
    std::vector<std::vector<Rational>> roots_;
};

class CyclotomicError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Element of Q(zeta_N) in canonical reduced form (degree < phi(N)).
class CycNum {
public:
    explicit CycNum(int level);
    CycNum(int level, const Rational& value);
    CycNum(const CyclotomicField& field, std::vector<Rational> coeffs);

    static CycNum root_power(int level, long k);

    int level() const { return field_->level(); }
    const CyclotomicField& field() const { return *field_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    /// Throws CyclotomicError unless the value lies in Q.
    Rational to_rational() const;

    CycNum inverse() const;

    CycNum& operator+=(const CycNum& o);
    CycNum& operator-=(const CycNum& o);
    CycNum& operator*=(const CycNum& o);
    CycNum& operator*=(const Rational& r);
    CycNum& operator/=(const CycNum& o) { return *this *= o.inverse(); }

    friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
    friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
    friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
    friend CycNum operator*(CycNum a, const Rational& r) { return a *= r; }
    friend CycNum operator*(const Rational& r, CycNum a) { return a *= r; }
    friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }
    CycNum operator-() const;

    friend bool operator==(const CycNum& a, const CycNum& b);
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

    /// Adds a*b into an unreduced accumulator of length 2*phi(N) - 1.
    static void mul_accumulate(std::vector<Rational>& acc, const CycNum& a, const CycNum& b);
    static CycNum from_unreduced(const CyclotomicField& field, std::vector<Rational> acc);

    /// Polynomial in `symbol` with rational coefficients, highest power first,
    /// e.g. "8*z^2" or "z^5 - z^4 + 1/2".
    std::string to_string(const std::string& symbol = "z") const;

private:
    void check_level(const CycNum& o) const;

    const CyclotomicField* field_;
    std::vector<Rational> c_;
};

}  // namespace x0n

#endif  // X0N_CYCLOTOMIC_HPP
