#ifndef X0N_RING_HPP
#define X0N_RING_HPP

#include "x0n/cyclotomic.hpp"
#include "x0n/rational.hpp"

#include <span>
#include <string>
#include <vector>

namespace x0n {

/// Uniform access to the two coefficient fields used by series code.
/// `level` selects Q(zeta_level) for CycNum and is ignored for Rational.
template <class R>
struct RingTraits;

template <>
struct RingTraits<Rational> {
    using Acc = Rational;

    static Rational zero(int) { return 0; }
    static Rational one(int) { return 1; }
    static Rational from_rational(int, const Rational& x) { return x; }
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static Rational inverse(const Rational& x) {
        if (sgn(x) == 0) throw std::domain_error("division by zero");
        return 1 / x;
    }

    /// sum_k counts[k] * zeta_N^k. Only zeta^0 is available over Q.
    static Rational from_root_counts(int level, std::span<const long long> counts) {
        for (std::size_t k = 1; k < counts.size(); ++k)
            if (counts[k] != 0)
                throw CyclotomicError("root of unity zeta_" + std::to_string(level) + "^" +
                                      std::to_string(k) + " is not rational");
        return Rational(static_cast<long>(counts.empty() ? 0 : counts[0]));
    }
    static Rational root_power(int level, long k) {
        if (k % level != 0) throw CyclotomicError("non-trivial root of unity is not rational");
        return 1;
    }

    static Acc make_acc(int) { return 0; }
    static void acc_add_product(Acc& acc, const Rational& a, const Rational& b, Rational& tmp) {
        mpq_mul(tmp.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
        mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
    }
    static Rational acc_finish(int, Acc&& acc) { return std::move(acc); }

    static std::string to_string(const Rational& x) { return x.get_str(); }
};

template <>
struct RingTraits<CycNum> {
    using Acc = std::vector<Rational>;

    static CycNum zero(int level) { return CycNum(level); }
    static CycNum one(int level) { return CycNum(level, 1); }
    static CycNum from_rational(int level, const Rational& x) { return CycNum(level, x); }
    static bool is_zero(const CycNum& x) { return x.is_zero(); }
    static CycNum inverse(const CycNum& x) { return x.inverse(); }

    static CycNum from_root_counts(int level, std::span<const long long> counts) {
        const auto& f = CyclotomicField::of(level);
        std::vector<Rational> c(static_cast<std::size_t>(f.degree()));
        Rational t;
        for (std::size_t k = 0; k < counts.size(); ++k) {
            if (counts[k] == 0) continue;
            const auto& z = f.root_power(static_cast<long>(k));
            Rational n(static_cast<long>(counts[k]));
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (sgn(z[i]) == 0) continue;
                t = n * z[i];
                c[i] += t;
            }
        }
        return CycNum(f, std::move(c));
    }
    static CycNum root_power(int level, long k) { return CycNum::root_power(level, k); }

    static Acc make_acc(int level) {
        return Acc(2 * static_cast<std::size_t>(CyclotomicField::of(level).degree()) - 1);
    }
    static void acc_add_product(Acc& acc, const CycNum& a, const CycNum& b, Rational&) {
        CycNum::mul_accumulate(acc, a, b);
    }
    static CycNum acc_finish(int level, Acc&& acc) {
        return CycNum::from_unreduced(CyclotomicField::of(level), std::move(acc));
    }

    static std::string to_string(const CycNum& x) { return x.to_string("z"); }
};

}  // namespace x0n

#endif  // X0N_RING_HPP
