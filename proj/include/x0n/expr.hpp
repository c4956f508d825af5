#ifndef X0N_EXPR_HPP
#define X0N_EXPR_HPP

#include "x0n/modcurve.hpp"
#include "x0n/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace x0n {

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// coeff * T(W_a) or coeff * T(W_a W_b).
struct TraceTerm {
    Rational coeff;
    WVector a;
    std::optional<WVector> b;

    friend bool operator==(const TraceTerm&, const TraceTerm&) = default;
};

/// alpha + sum_i c_i T(W_{a_i} [W_{b_i}]), a modular function for Gamma_0(N).
///
/// Text grammar (whitespace ignored, the T before '[' optional):
///   EXPR  := ['+'|'-'] TERM { ('+'|'-') TERM }
///   TERM  := RAT | RAT ['*'] TRACE | TRACE
///   TRACE := ['T'] '[' INT ',' INT ',' INT ',' INT ']' [ '*' '[' INT ',' INT ',' INT ',' INT ']' ]
///   RAT   := INT [ '/' INT ]
/// e.g. "-3 + T[5,1,2,1]", "T[4,1,3,1]*[5,1,2,1]", "2 + 1/2*T[6,1,3,1]*[7,1,2,1]".
class ModFuncExpr {
public:
    explicit ModFuncExpr(int level) : level_(level) {}
    ModFuncExpr(int level, Rational constant, std::vector<TraceTerm> terms);

    static ModFuncExpr parse(int level, std::string_view text);
    static ModFuncExpr trace(const WVector& a, const std::optional<WVector>& b = std::nullopt);

    int level() const { return level_; }
    const Rational& constant() const { return constant_; }
    const std::vector<TraceTerm>& terms() const { return terms_; }
    bool is_constant() const { return terms_.empty(); }

    ModFuncExpr scaled(const Rational& s) const;
    ModFuncExpr plus_constant(const Rational& c) const;
    ModFuncExpr operator+(const ModFuncExpr& o) const;
    ModFuncExpr operator-(const ModFuncExpr& o) const { return *this + o.scaled(-1); }

    std::string to_string() const;
    friend bool operator==(const ModFuncExpr&, const ModFuncExpr&) = default;

private:
    void normalize();

    int level_;
    Rational constant_ = 0;
    std::vector<TraceTerm> terms_;
};

}  // namespace x0n

#endif  // X0N_EXPR_HPP
