#ifndef X0N_SERIES_HPP
#define X0N_SERIES_HPP

#include "x0n/ring.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace x0n {

class SeriesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Identifies the expansion variable q_D^step, q_D = exp(2 pi i tau D / N).
struct SeriesTag {
    int level = 1;
    int divisor = 1;
    int step = 1;

    friend bool operator==(const SeriesTag&, const SeriesTag&) = default;
    std::string variable() const {
        std::string v = "q_" + std::to_string(divisor);
        if (step != 1) v += "^" + std::to_string(step);
        return v;
    }
};

inline int floor_div(int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }
inline int ceil_div(int a, int b) { return -floor_div(-a, b); }

/// Truncated Laurent series sum_{k=val}^{prec-1} c_k x^k + O(x^prec).
///
/// coeffs() holds exactly prec - val entries; coeffs()[0] is nonzero unless the series is zero to its precision, in
/// which case valuation() == precision() and coeffs() is empty.
template <class R>
class LaurentSeries {
public:
    using Traits = RingTraits<R>;

    LaurentSeries(SeriesTag tag, int val, int prec, std::vector<R> coeffs)
        : tag_(tag), val_(val), prec_(prec), c_(std::move(coeffs)) {
        // Dense storage always covers val..prec-1 exactly.
        c_.resize(static_cast<std::size_t>(std::max(0, prec_ - val_)), Traits::zero(tag_.level));
        normalize();
    }

    static LaurentSeries zero(SeriesTag tag, int prec) { return LaurentSeries(tag, prec, prec, {}); }
    static LaurentSeries constant(SeriesTag tag, R c, int prec) {
        return monomial(tag, std::move(c), 0, prec);
    }
    static LaurentSeries monomial(SeriesTag tag, R c, int exp, int prec) {
        if (exp >= prec) return zero(tag, prec);
        std::vector<R> v(static_cast<std::size_t>(prec - exp), Traits::zero(tag.level));
        v[0] = std::move(c);
        return LaurentSeries(tag, exp, prec, std::move(v));
    }

    const SeriesTag& tag() const { return tag_; }
    int valuation() const { return val_; }
    int precision() const { return prec_; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<R>& coeffs() const { return c_; }

    /// Coefficient of x^exp; exp must be below the precision.
    R coeff(int exp) const {
        if (exp >= prec_)
            throw SeriesError("coefficient of exponent " + std::to_string(exp) +
                              " is beyond precision " + std::to_string(prec_));
        if (exp < val_) return Traits::zero(tag_.level);
        return c_[static_cast<std::size_t>(exp - val_)];
    }
    const R& leading() const {
        if (c_.empty()) throw SeriesError("leading coefficient of a zero series");
        return c_.front();
    }

    LaurentSeries truncated(int prec) const {
        if (prec >= prec_) return *this;
        std::vector<R> v(c_.begin(), c_.begin() + std::max(0, std::min<int>(static_cast<int>(c_.size()), prec - val_)));
        return LaurentSeries(tag_, std::min(val_, prec), prec, std::move(v));
    }

    LaurentSeries operator-() const {
        LaurentSeries r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    LaurentSeries& operator+=(const LaurentSeries& o) { return add(o, false); }
    LaurentSeries& operator-=(const LaurentSeries& o) { return add(o, true); }
    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        a.check_tag(b);
        const int val = a.val_ + b.val_;
        const int prec = std::min(a.prec_ + b.val_, b.prec_ + a.val_);
        const int n = std::max(0, prec - val);
        const int lvl = a.tag_.level;
        std::vector<R> out;
        out.reserve(static_cast<std::size_t>(n));
        Rational tmp;
        const int na = static_cast<int>(a.c_.size()), nb = static_cast<int>(b.c_.size());
        for (int k = 0; k < n; ++k) {
            auto acc = Traits::make_acc(lvl);
            const int lo = std::max(0, k - nb + 1), hi = std::min(k, na - 1);
            for (int i = lo; i <= hi; ++i) {
                const R& x = a.c_[i];
                if (Traits::is_zero(x)) continue;
                const R& y = b.c_[k - i];
                if (Traits::is_zero(y)) continue;
                Traits::acc_add_product(acc, x, y, tmp);
            }
            out.push_back(Traits::acc_finish(lvl, std::move(acc)));
        }
        return LaurentSeries(a.tag_, val, prec, std::move(out));
    }
    LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

    LaurentSeries scaled(const R& s) const {
        LaurentSeries r(*this);
        for (auto& x : r.c_) x *= s;
        r.normalize();
        return r;
    }
    template <class S = R>
        requires(!std::is_same_v<S, Rational>)
    LaurentSeries scaled(const Rational& s) const {
        LaurentSeries r(*this);
        for (auto& x : r.c_) x *= s;
        r.normalize();
        return r;
    }

    LaurentSeries plus_constant(const R& c) const {
        return *this + constant(tag_, c, std::max(prec_, 1));
    }

    /// Multiplicative inverse; relative precision is preserved.
    LaurentSeries inverse() const {
        if (is_zero()) throw SeriesError("inverse of a zero series");
        const int n = prec_ - val_;
        const R inv0 = Traits::inverse(c_[0]);
        std::vector<R> b;
        b.reserve(static_cast<std::size_t>(n));
        b.push_back(inv0);
        Rational tmp;
        const int lvl = tag_.level;
        for (int k = 1; k < n; ++k) {
            auto acc = Traits::make_acc(lvl);
            for (int i = 1; i <= k; ++i) {
                if (Traits::is_zero(c_[i])) continue;
                Traits::acc_add_product(acc, c_[i], b[k - i], tmp);
            }
            R s = Traits::acc_finish(lvl, std::move(acc));
            s *= inv0;
            b.push_back(-s);
        }
        return LaurentSeries(tag_, -val_, prec_ - 2 * val_, std::move(b));
    }

    /// k-th power; pow(0) is 1 to the relative precision of *this.
    LaurentSeries pow(unsigned k) const {
        if (k == 0) return constant(tag_, Traits::one(tag_.level), std::max(1, prec_ - val_));
        LaurentSeries r = *this;
        for (unsigned i = 1; i < k; ++i) r = r * *this;
        return r;
    }

    /// Rewrites a series supported on exponents divisible by e as a series
    /// in x^e.
    LaurentSeries rebased(int e) const {
        if (e < 1) throw SeriesError("rebase step must be positive");
        if (e == 1) return *this;
        const int new_prec = ceil_div(prec_, e);
        if (is_zero()) return zero(retag(e), new_prec);
        std::vector<R> out;
        for (int k = 0; k < static_cast<int>(c_.size()); ++k) {
            const int exp = val_ + k;
            if (exp % e != 0) {
                if (!Traits::is_zero(c_[k]))
                    throw SeriesError("series not supported on q_D^" + std::to_string(e) +
                                      " lattice (nonzero coefficient at exponent " +
                                      std::to_string(exp) + ")");
                continue;
            }
            out.push_back(c_[k]);
        }
        return LaurentSeries(retag(e), val_ / e, new_prec, std::move(out));
    }

    /// Substitutes x -> x^k (k >= 1).
    LaurentSeries inflated(int k) const {
        std::vector<R> out;
        if (!c_.empty()) {
            out.assign((c_.size() - 1) * static_cast<std::size_t>(k) + 1, Traits::zero(tag_.level));
            for (std::size_t i = 0; i < c_.size(); ++i) out[i * k] = c_[i];
        }
        const int val = c_.empty() ? prec_ * k : val_ * k;
        // Known through exponent k*(prec-1) + (k-1).
        return LaurentSeries(tag_, val, prec_ * k, std::move(out));
    }

    LaurentSeries with_tag(SeriesTag t) const {
        LaurentSeries r(*this);
        r.tag_ = t;
        return r;
    }

    template <class F>
    auto map(F&& f, SeriesTag tag) const {
        using R2 = std::decay_t<decltype(f(std::declval<const R&>()))>;
        std::vector<R2> v;
        v.reserve(c_.size());
        for (const auto& x : c_) v.push_back(f(x));
        return LaurentSeries<R2>(tag, val_, prec_, std::move(v));
    }

    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        return a.tag_ == b.tag_ && a.val_ == b.val_ && a.prec_ == b.prec_ && a.c_ == b.c_;
    }

private:
    SeriesTag retag(int e) const {
        SeriesTag t = tag_;
        t.step *= e;
        return t;
    }
    void check_tag(const LaurentSeries& o) const {
        if (!(tag_ == o.tag_))
            throw SeriesError("series variable mismatch: " + tag_.variable() + " (N=" +
                              std::to_string(tag_.level) + ") vs " + o.tag_.variable() +
                              " (N=" + std::to_string(o.tag_.level) + ")");
    }
    void normalize() {
        std::size_t lead = 0;
        while (lead < c_.size() && Traits::is_zero(c_[lead])) ++lead;
        if (lead == c_.size()) {
            c_.clear();
            val_ = prec_;
            return;
        }
        if (lead) {
            c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
            val_ += static_cast<int>(lead);
        }
    }

    LaurentSeries& add(const LaurentSeries& o, bool subtract) {
        if (&o == this) {
            const LaurentSeries copy(o);
            return add(copy, subtract);
        }
        check_tag(o);
        const int prec = std::min(prec_, o.prec_);
        const int val = std::min(val_, o.val_);
        const int n = std::max(0, prec - val);
        std::vector<R> out(static_cast<std::size_t>(n), Traits::zero(tag_.level));
        for (int k = 0; k < n; ++k) {
            const int exp = val + k;
            if (exp >= val_ && exp - val_ < static_cast<int>(c_.size())) out[k] = std::move(c_[exp - val_]);
            if (exp >= o.val_ && exp - o.val_ < static_cast<int>(o.c_.size())) {
                if (subtract)
                    out[k] -= o.c_[exp - o.val_];
                else
                    out[k] += o.c_[exp - o.val_];
            }
        }
        val_ = val;
        prec_ = prec;
        c_ = std::move(out);
        normalize();
        return *this;
    }

    SeriesTag tag_;
    int val_;
    int prec_;
    std::vector<R> c_;
};

using QSeries = LaurentSeries<Rational>;
using CSeries = LaurentSeries<CycNum>;

/// Exact conversion; throws CyclotomicError if a coefficient is irrational.
inline QSeries to_rational_series(const CSeries& s) {
    return s.map([](const CycNum& x) { return x.to_rational(); }, s.tag());
}
inline CSeries to_cyclotomic_series(const QSeries& s) {
    const int lvl = s.tag().level;
    return s.map([lvl](const Rational& x) { return CycNum(lvl, x); }, s.tag());
}

}  // namespace x0n

#endif  // X0N_SERIES_HPP
