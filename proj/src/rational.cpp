#include "x0n/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace x0n {

namespace {

bool valid_integer_text(std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!valid_integer_text(num) || !valid_integer_text(den))
        throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    Integer n(num, 10), d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& x) { return x.get_str(10); }
std::string to_string(const Integer& x) { return x.get_str(10); }

}  // namespace x0n
