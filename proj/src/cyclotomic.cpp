#include "x0n/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace x0n {

namespace {

std::mutex& memo_mutex() {
    static std::mutex m;
    return m;
}

// Exact division of integer polynomials (constant term first), divisor monic.
std::vector<Integer> divide_exact(std::vector<Integer> num, const std::vector<Integer>& den) {
    const std::size_t dn = den.size() - 1;
    std::vector<Integer> quot(num.size() - dn);
    for (std::size_t k = num.size(); k-- > dn;) {
        Integer c = num[k];
        quot[k - dn] = c;
        if (c == 0) continue;
        for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
    }
    for (const auto& r : num)
        if (r != 0) throw std::logic_error("cyclotomic division left a remainder");
    return quot;
}

std::vector<Integer> compute_cyclotomic(int n) {
    std::vector<Integer> p(static_cast<std::size_t>(n) + 1);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = divide_exact(std::move(p), cyclotomic_poly(d));
    return p;
}

}  // namespace

int euler_phi(int n) {
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

const std::vector<Integer>& cyclotomic_poly(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic_poly: n must be positive");
    static std::map<int, std::unique_ptr<std::vector<Integer>>> memo;
    {
        std::lock_guard lock(memo_mutex());
        auto it = memo.find(n);
        if (it != memo.end()) return *it->second;
    }
    // Recursion below re-enters cyclotomic_poly, so compute unlocked; a
    // racing duplicate computation yields the same value and is discarded.
    auto poly = std::make_unique<std::vector<Integer>>(compute_cyclotomic(n));
    std::lock_guard lock(memo_mutex());
    auto [it, inserted] = memo.emplace(n, std::move(poly));
    return *it->second;
}

// ---------------------------------------------------------------------------

CyclotomicField::CyclotomicField(int level)
    : level_(level), degree_(euler_phi(level)), modulus_(cyclotomic_poly(level)) {
    roots_.reserve(static_cast<std::size_t>(level));
    std::vector<Rational> cur(static_cast<std::size_t>(degree_));
    cur[0] = 1;
    for (int k = 0; k < level; ++k) {
        roots_.push_back(cur);
        // multiply by z
        std::vector<Rational> next(static_cast<std::size_t>(degree_) + 1);
        for (int i = 0; i < degree_; ++i) next[i + 1] = cur[i];
        reduce(next);
        cur = std::move(next);
    }
}

const CyclotomicField& CyclotomicField::of(int level) {
    if (level < 1) throw std::invalid_argument("cyclotomic field level must be positive");
    static std::map<int, std::unique_ptr<CyclotomicField>> fields;
    const auto& phi = cyclotomic_poly(level);  // populate outside our lock
    (void)phi;
    static std::mutex m;
    std::lock_guard lock(m);
    auto it = fields.find(level);
    if (it == fields.end())
        it = fields.emplace(level, std::unique_ptr<CyclotomicField>(new CyclotomicField(level))).first;
    return *it->second;
}

const std::vector<Rational>& CyclotomicField::root_power(long k) const {
    long r = k % level_;
    if (r < 0) r += level_;
    return roots_[static_cast<std::size_t>(r)];
}

void CyclotomicField::reduce(std::vector<Rational>& poly) const {
    const int dn = degree_;
    Rational t;
    for (std::size_t k = poly.size(); k-- > static_cast<std::size_t>(dn);) {
        if (sgn(poly[k]) == 0) continue;
        const Rational c = poly[k];
        for (int i = 0; i < dn; ++i) {
            if (modulus_[i] == 0) continue;
            t = c * modulus_[i];
            poly[k - dn + i] -= t;
        }
        poly[k] = 0;
    }
    poly.resize(static_cast<std::size_t>(dn));
}

// ---------------------------------------------------------------------------

CycNum::CycNum(int level)
    : field_(&CyclotomicField::of(level)), c_(static_cast<std::size_t>(field_->degree())) {}

CycNum::CycNum(int level, const Rational& value) : CycNum(level) { c_[0] = value; }

CycNum::CycNum(const CyclotomicField& field, std::vector<Rational> coeffs)
    : field_(&field), c_(std::move(coeffs)) {
    if (c_.size() != static_cast<std::size_t>(field_->degree())) field_->reduce(c_);
}

CycNum CycNum::root_power(int level, long k) {
    const auto& f = CyclotomicField::of(level);
    return CycNum(f, f.root_power(k));
}

bool CycNum::is_zero() const {
    for (const auto& x : c_)
        if (sgn(x) != 0) return false;
    return true;
}

bool CycNum::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return false;
    return true;
}

Rational CycNum::to_rational() const {
    if (!is_rational())
        throw CyclotomicError("cyclotomic number " + to_string() + " is not rational");
    return c_[0];
}

void CycNum::check_level(const CycNum& o) const {
    if (field_ != o.field_) throw CyclotomicError("cyclotomic level mismatch");
}

CycNum& CycNum::operator+=(const CycNum& o) {
    check_level(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) {
    check_level(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CycNum CycNum::operator-() const {
    CycNum r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

CycNum& CycNum::operator*=(const Rational& r) {
    for (auto& x : c_) x *= r;
    return *this;
}

void CycNum::mul_accumulate(std::vector<Rational>& acc, const CycNum& a, const CycNum& b) {
    a.check_level(b);
    Rational t;
    const std::size_t n = a.c_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(b.c_[j]) == 0) continue;
            mpq_mul(t.get_mpq_t(), a.c_[i].get_mpq_t(), b.c_[j].get_mpq_t());
            mpq_add(acc[i + j].get_mpq_t(), acc[i + j].get_mpq_t(), t.get_mpq_t());
        }
    }
}

CycNum CycNum::from_unreduced(const CyclotomicField& field, std::vector<Rational> acc) {
    field.reduce(acc);
    return CycNum(field, std::move(acc));
}

CycNum& CycNum::operator*=(const CycNum& o) {
    check_level(o);
    if (is_rational()) {
        Rational s = c_[0];
        c_ = o.c_;
        return *this *= s;
    }
    if (o.is_rational()) return *this *= o.c_[0];
    std::vector<Rational> acc(2 * c_.size() - 1);
    mul_accumulate(acc, *this, o);
    field_->reduce(acc);
    c_ = std::move(acc);
    return *this;
}

CycNum CycNum::inverse() const {
    if (is_zero()) throw CyclotomicError("division by zero in cyclotomic field");
    if (is_rational()) return CycNum(level(), 1 / c_[0]);
    // Solve M x = e_0 where column j of M is z^j * this, reduced.
    const int n = field_->degree();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    std::vector<Rational> col = c_;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) m[i][j] = col[i];
        std::vector<Rational> next(n + 1);
        for (int i = 0; i < n; ++i) next[i + 1] = col[i];
        field_->reduce(next);
        col = std::move(next);
    }
    m[0][n] = 1;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        while (piv < n && sgn(m[piv][c]) == 0) ++piv;
        if (piv == n) throw std::logic_error("singular multiplication matrix in Q(zeta_N)");
        std::swap(m[piv], m[c]);
        Rational inv = 1 / m[c][c];
        for (int j = c; j <= n; ++j) m[c][j] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == c || sgn(m[r][c]) == 0) continue;
            Rational f = m[r][c];
            for (int j = c; j <= n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    std::vector<Rational> x(n);
    for (int i = 0; i < n; ++i) x[i] = m[i][n];
    return CycNum(*field_, std::move(x));
}

bool operator==(const CycNum& a, const CycNum& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

std::string CycNum::to_string(const std::string& symbol) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const Rational& x = c_[k];
        if (sgn(x) == 0) continue;
        Rational mag = abs(x);
        if (first)
            os << (sgn(x) < 0 ? "-" : "");
        else
            os << (sgn(x) < 0 ? " - " : " + ");
        first = false;
        if (k == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1) os << mag.get_str() << '*';
        os << symbol;
        if (k > 1) os << '^' << k;
    }
    return first ? "0" : os.str();
}

}  // namespace x0n
