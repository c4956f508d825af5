#include "x0n/poly.hpp"

#include <cctype>
#include <sstream>

namespace x0n {

std::vector<std::string> f_names(int count) {
    std::vector<std::string> n;
    for (int i = 1; i <= count; ++i) n.push_back("F" + std::to_string(i));
    return n;
}

namespace {

std::string monomial(const Exponent& e, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += names.at(i);
        if (e[i] > 1) s += '^' + std::to_string(e[i]);
    }
    return s;
}

// Writes one term given its sign and the text of |coefficient|.
void emit(std::ostringstream& os, bool& first, bool negative, const std::string& mag, const std::string& mono) {
    if (first)
        os << (negative ? "-" : "");
    else
        os << (negative ? " - " : " + ");
    first = false;
    if (mono.empty())
        os << mag;
    else if (mag == "1")
        os << mono;
    else
        os << mag << '*' << mono;
}

}  // namespace

template <>
std::string MPoly<Rational>::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) emit(os, first, sgn(c) < 0, Rational(abs(c)).get_str(), monomial(e, names));
    return os.str();
}

template <>
std::string MPoly<CycNum>::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (c.is_rational()) {
            const Rational r = c.to_rational();
            emit(os, first, sgn(r) < 0, Rational(abs(r)).get_str(), monomial(e, names));
        } else {
            emit(os, first, false, "(" + c.to_string("z") + ")", monomial(e, names));
        }
    }
    return os.str();
}

RPoly integer_cleared(const RPoly& p) {
    DenominatorLcm l;
    for (const auto& [e, c] : p.terms()) l.add(c);
    return p.scaled(Rational(l.value()));
}

RPoly primitive_part(const RPoly& p) {
    if (p.is_zero()) return p;
    RPoly q = integer_cleared(p);
    Integer g = 0;
    for (const auto& [e, c] : q.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    Rational s(g);
    if (sgn(q.terms().begin()->second) < 0) s = -s;
    return q.scaled(1 / s);
}

bool proportional(const RPoly& a, const RPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.terms().size() != b.terms().size()) return false;
    const Rational s = a.terms().begin()->second / b.terms().begin()->second;
    for (auto ia = a.terms().begin(), ib = b.terms().begin(); ia != a.terms().end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second != s * ib->second) return false;
    return true;
}

RPoly to_rational_poly(const CPoly& p) {
    RPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) r.add_term(e, c.to_rational());
    return r;
}

CPoly to_cyclotomic_poly(const RPoly& p, int level) {
    CPoly r(p.nvars(), level);
    for (const auto& [e, c] : p.terms()) r.add_term(e, CycNum(level, c));
    return r;
}

// ---------------------------------------------------------------------------

namespace {

class PolyParser {
public:
    PolyParser(std::string_view s, const std::vector<std::string>& names) : s_(s), names_(names) {
        for (const auto& n : names_) {
            std::string k;
            for (char ch : n)
                if (ch != '_') k += ch;
            keys_.push_back(k);
        }
    }

    RPoly parse() {
        RPoly p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    int nv() const { return static_cast<int>(names_.size()); }

    RPoly expr() {
        skip();
        RPoly acc(nv());
        bool negate = false;
        if (peek('+') || peek('-')) negate = s_[pos_++] == '-';
        RPoly t = term();
        acc += negate ? -t : t;
        while (true) {
            skip();
            if (!(peek('+') || peek('-'))) break;
            negate = s_[pos_++] == '-';
            t = term();
            acc += negate ? -t : t;
        }
        return acc;
    }

    RPoly term() {
        RPoly acc = factor();
        while (true) {
            skip();
            if (peek('*')) {
                ++pos_;
                acc *= factor();
            } else if (peek('/')) {
                ++pos_;
                RPoly d = factor();
                if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
                acc = acc.scaled(1 / d.constant_term());
            } else if (starts_primary()) {
                acc *= factor();
            } else {
                break;
            }
        }
        return acc;
    }

    RPoly factor() {
        RPoly base = primary();
        skip();
        if (peek('^')) {
            ++pos_;
            skip();
            const long k = integer();
            if (k < 0) fail("negative exponent");
            base = base.pow(static_cast<unsigned>(k));
        }
        return base;
    }

    RPoly primary() {
        skip();
        if (peek('(')) {
            ++pos_;
            RPoly e = expr();
            skip();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return e;
        }
        if (peek('-')) {  // unary minus inside products, e.g. "2*-X"
            ++pos_;
            return -factor();
        }
        if (std::isdigit(static_cast<unsigned char>(cur()))) return RPoly::constant(nv(), Rational(integer_text()));
        if (std::isalpha(static_cast<unsigned char>(cur()))) return identifier();
        fail("expected a number, variable or '('");
    }

    // Longest variable name matching at the cursor (underscores skipped), so
    // run-together products like "XY" or "F1F2" split into factors.
    RPoly identifier() {
        int best = -1;
        std::size_t best_end = pos_, best_len = 0;
        for (int v = 0; v < nv(); ++v) {
            const auto& k = keys_[static_cast<std::size_t>(v)];
            std::size_t i = pos_, j = 0;
            while (j < k.size() && i < s_.size()) {
                if (s_[i] == '_') {
                    ++i;
                    continue;
                }
                if (s_[i] != k[j]) break;
                ++i;
                ++j;
            }
            if (j != k.size()) continue;
            // "F1" must not match the prefix of "F12"
            if (std::isdigit(static_cast<unsigned char>(k.back())) && i < s_.size() &&
                std::isdigit(static_cast<unsigned char>(s_[i])))
                continue;
            if (k.size() > best_len) {
                best = v;
                best_len = k.size();
                best_end = i;
            }
        }
        if (best < 0) fail("unknown variable");
        pos_ = best_end;
        return RPoly::variable(nv(), best);
    }

    bool starts_primary() {
        skip();
        return peek('(') || std::isalpha(static_cast<unsigned char>(cur())) ||
               std::isdigit(static_cast<unsigned char>(cur()));
    }

    std::string integer_text() {
        std::string t;
        while (std::isdigit(static_cast<unsigned char>(cur()))) t += s_[pos_++];
        if (t.empty()) fail("expected an integer");
        return t;
    }
    long integer() { return std::stol(integer_text()); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char cur() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    bool peek(char c) const { return cur() == c; }
    [[noreturn]] void fail(const std::string& why) const {
        throw PolyParseError("cannot parse polynomial '" + std::string(s_) + "' at offset " + std::to_string(pos_) +
                             ": " + why);
    }

    std::string_view s_;
    const std::vector<std::string>& names_;
    std::vector<std::string> keys_;
    std::size_t pos_ = 0;
};

}  // namespace

RPoly parse_poly(std::string_view text, const std::vector<std::string>& names) {
    return PolyParser(text, names).parse();
}

// ---------------------------------------------------------------------------

void upoly_trim(UPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

UPoly upoly_mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    upoly_trim(r);
    return r;
}

UPoly upoly_divmod(const UPoly& a, const UPoly& b, UPoly& rem) {
    UPoly bb(b);
    upoly_trim(bb);
    if (bb.empty()) throw std::domain_error("polynomial division by zero");
    rem = a;
    upoly_trim(rem);
    if (rem.size() < bb.size()) return {};
    UPoly q(rem.size() - bb.size() + 1, 0);
    const Rational lead_inv = 1 / bb.back();
    while (rem.size() >= bb.size()) {
        const std::size_t shift = rem.size() - bb.size();
        const Rational f = rem.back() * lead_inv;
        q[shift] = f;
        for (std::size_t i = 0; i < bb.size(); ++i) rem[shift + i] -= f * bb[i];
        upoly_trim(rem);
    }
    upoly_trim(q);
    return q;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
    upoly_trim(a);
    upoly_trim(b);
    while (!b.empty()) {
        UPoly r;
        upoly_divmod(a, b, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

UPoly to_upoly(const RPoly& p, int var) {
    UPoly u;
    for (const auto& [e, c] : p.terms()) {
        for (int i = 0; i < p.nvars(); ++i)
            if (i != var && e[i] != 0) throw std::invalid_argument("to_upoly: polynomial is not univariate");
        const auto k = static_cast<std::size_t>(e[var]);
        if (u.size() <= k) u.resize(k + 1, 0);
        u[k] += c;
    }
    upoly_trim(u);
    return u;
}

RPoly from_upoly(const UPoly& u, int nvars, int var) {
    RPoly p(nvars);
    Exponent e(static_cast<std::size_t>(nvars), 0);
    for (std::size_t k = 0; k < u.size(); ++k) {
        e[var] = static_cast<int>(k);
        p.add_term(e, u[k]);
    }
    return p;
}

}  // namespace x0n
