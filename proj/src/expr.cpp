#include "x0n/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace x0n {

namespace {

class ExprParser {
public:
    ExprParser(int level, std::string_view text) : level_(level), s_(text) {}

    ModFuncExpr parse() {
        ModFuncExpr out(level_);
        skip();
        int sign = 1;
        if (peek('+') || peek('-')) sign = take() == '-' ? -1 : 1;
        out = out + term(sign);
        while (true) {
            skip();
            if (at_end()) break;
            if (!(peek('+') || peek('-'))) fail("expected '+' or '-'");
            sign = take() == '-' ? -1 : 1;
            out = out + term(sign);
        }
        return out;
    }

private:
    ModFuncExpr term(int sign) {
        skip();
        Rational coeff = sign;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(cur()))) {
            coeff *= rational();
            have_coeff = true;
            skip();
            if (peek('*')) {
                ++pos_;
                skip();
            } else if (!starts_trace()) {
                return ModFuncExpr(level_, coeff, {});
            }
        }
        if (!starts_trace()) fail(have_coeff ? "expected a trace after '*'" : "expected a number or a trace");
        if (peek('T')) ++pos_;
        skip();
        WVector a = vec();
        std::optional<WVector> b;
        skip();
        if (peek('*')) {
            std::size_t save = pos_;
            ++pos_;
            skip();
            if (peek('[')) {
                b = vec();
            } else {
                pos_ = save;
            }
        }
        return ModFuncExpr(level_, 0, {TraceTerm{coeff, a, b}});
    }

    bool starts_trace() {
        skip();
        return peek('T') || peek('[');
    }

    WVector vec() {
        skip();
        expect('[');
        std::array<long, 4> v{};
        for (int i = 0; i < 4; ++i) {
            skip();
            bool neg = false;
            if (peek('-')) {
                neg = true;
                ++pos_;
            }
            v[i] = integer();
            if (neg) v[i] = -v[i];
            skip();
            if (i < 3) expect(',');
        }
        expect(']');
        try {
            return WVector(level_, v);
        } catch (const InvalidVector& e) {
            fail(e.what());
        }
    }

    Rational rational() {
        long n = integer();
        skip();
        if (peek('/')) {
            ++pos_;
            skip();
            long d = integer();
            if (d == 0) fail("zero denominator");
            Rational r(n, d);
            r.canonicalize();
            return r;
        }
        return Rational(n);
    }

    long integer() {
        skip();
        if (!std::isdigit(static_cast<unsigned char>(cur()))) fail("expected an integer");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(cur()))) {
            v = v * 10 + (s_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char cur() const { return at_end() ? '\0' : s_[pos_]; }
    bool peek(char c) const { return cur() == c; }
    char take() { return s_[pos_++]; }
    void expect(char c) {
        skip();
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("cannot parse expression '" + std::string(s_) + "' at offset " +
                         std::to_string(pos_) + ": " + why);
    }

    int level_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

ModFuncExpr::ModFuncExpr(int level, Rational constant, std::vector<TraceTerm> terms)
    : level_(level), constant_(std::move(constant)), terms_(std::move(terms)) {
    for (const auto& t : terms_)
        if (t.a.level() != level_ || (t.b && t.b->level() != level_))
            throw InvalidVector("vector level differs from expression level");
    normalize();
}

ModFuncExpr ModFuncExpr::parse(int level, std::string_view text) { return ExprParser(level, text).parse(); }

ModFuncExpr ModFuncExpr::trace(const WVector& a, const std::optional<WVector>& b) {
    return ModFuncExpr(a.level(), 0, {TraceTerm{1, a, b}});
}

void ModFuncExpr::normalize() {
    // W_b == 1 for a degenerate b; merge identical traces keeping first-seen order.
    std::vector<TraceTerm> merged;
    for (auto t : terms_) {
        if (t.b && t.b->is_trivial()) t.b.reset();
        if (t.a.is_trivial() && t.b) std::swap(t.a, *t.b), t.b.reset();
        if (t.a.is_trivial() && !t.b) {
            // T(1) = #lambda classes
            constant_ += t.coeff * static_cast<long>(unit_classes(level_).size());
            continue;
        }
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const TraceTerm& m) { return m.a == t.a && m.b == t.b; });
        if (it == merged.end())
            merged.push_back(t);
        else
            it->coeff += t.coeff;
    }
    std::erase_if(merged, [](const TraceTerm& t) { return sgn(t.coeff) == 0; });
    terms_ = std::move(merged);
}

ModFuncExpr ModFuncExpr::scaled(const Rational& s) const {
    ModFuncExpr r(*this);
    r.constant_ *= s;
    for (auto& t : r.terms_) t.coeff *= s;
    r.normalize();
    return r;
}

ModFuncExpr ModFuncExpr::plus_constant(const Rational& c) const {
    ModFuncExpr r(*this);
    r.constant_ += c;
    return r;
}

ModFuncExpr ModFuncExpr::operator+(const ModFuncExpr& o) const {
    if (o.level_ != level_) throw InvalidVector("adding expressions of different levels");
    ModFuncExpr r(*this);
    r.constant_ += o.constant_;
    r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
    r.normalize();
    return r;
}

std::string ModFuncExpr::to_string() const {
    std::ostringstream os;
    bool first = true;
    auto emit_sign = [&](const Rational& c) {
        if (first)
            os << (sgn(c) < 0 ? "-" : "");
        else
            os << (sgn(c) < 0 ? " - " : " + ");
        first = false;
    };
    if (sgn(constant_) != 0 || terms_.empty()) {
        emit_sign(constant_);
        os << Rational(abs(constant_)).get_str();
    }
    for (const auto& t : terms_) {
        emit_sign(t.coeff);
        Rational mag = abs(t.coeff);
        if (mag != 1) os << mag.get_str() << '*';
        os << 'T' << t.a.to_string();
        if (t.b) os << '*' << t.b->to_string();
    }
    return os.str();
}

}  // namespace x0n
