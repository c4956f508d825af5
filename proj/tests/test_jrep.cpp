#include "doctest.h"
#include "x0n/jrep.hpp"
#include "x0n/weier.hpp"

using namespace x0n;

namespace {

std::vector<ModFuncExpr> parse_all(int N, std::initializer_list<const char*> fs) {
    std::vector<ModFuncExpr> out;
    for (auto f : fs) out.push_back(ModFuncExpr::parse(N, f));
    return out;
}

BivarPoly model_of(const std::vector<ModFuncExpr>& F, int g) {
    const auto P = make_cusp_class(1, 1, F[0].level());
    const int p = minimal_equation_precision(g);
    return minimal_equation(expand_rational(F[0], P, p), expand_rational(F[1], P, p), g);
}

UPoly up(const char* s) { return to_upoly(parse_poly(s, {"X"}), 0); }

// a/b == c/d for univariate rational functions.
bool same_ratio(const UPoly& a, const UPoly& b, const UPoly& c, const UPoly& d) {
    return upoly_mul(a, d) == upoly_mul(b, c);
}

}  // namespace

TEST_CASE("killers at N=14") {
    const auto F = parse_all(14, {"-T[5,1,2,1]", "T[4,1,3,1]*[5,1,2,1]"});
    auto k2 = find_cusp_killer(F, make_cusp_class(1, 2, 14), KillerPolicy::FirstGenerator);
    CHECK(k2.G.to_string(f_names(2)) == "F1 + 1");
    CHECK(k2.zero_order == 2);
    CHECK(k2.pole_j == 7);
    CHECK(k2.m == 4);
    auto k7 = find_cusp_killer(F, make_cusp_class(1, 7, 14), KillerPolicy::FirstGenerator);
    CHECK(k7.G.to_string(f_names(2)) == "F1");
    CHECK(k7.m == 2);
    auto k14 = find_cusp_killer(F, make_cusp_class(1, 14, 14), KillerPolicy::FirstGenerator);
    CHECK(k14.G.to_string(f_names(2)) == "F1 - 7");
    CHECK(k14.m == 1);
    auto km = find_cusp_killer(F, make_cusp_class(1, 2, 14), KillerPolicy::MaxOrder);
    CHECK(km.zero_order >= 2);
    CHECK(km.m * km.zero_order >= km.pole_j);
}

TEST_CASE("J at N=14") {
    const auto F = parse_all(14, {"-T[5,1,2,1]", "T[4,1,3,1]*[5,1,2,1]"});
    const auto model = model_of(F, 1);
    const auto rep = represent_J(F, {}, model);
    REQUIRE(rep.collapsed);
    const auto& c = *rep.collapsed;
    CHECK(c.den == up("(X+1)^4*X^2*(X-7)"));
    CHECK(c.num[1] == up("-7X^12-28X^11+154X^10+1588X^9+5775X^8+11592X^7+14028X^6+10248X^5+4263X^4+980X^3+4410X^2+196X+49"));
    CHECK(c.num[0] == up("X^14+18X^13+62X^12-416X^11-4665X^10-19750X^9-47712X^8-71184X^7-70977X^6-56762X^5-41850X^4-6672X^3+5593X^2-882X-196"));
    auto j = evaluate_j(rep, model, std::nullopt, 0, 4);
    CHECK_FALSE(j.cusp);
    CHECK(j.value == -3375);
    CHECK(evaluate_j(rep, model, std::nullopt, 7, -31).value == 16581375);
    CHECK(evaluate_j(rep, model, std::nullopt, 7, 25).cusp);
    CHECK(evaluate_j(rep, model, std::nullopt, -1, 1).cusp);
    CHECK(evaluate_j(rep, model, std::nullopt, 0, -3).cusp);
    CHECK_THROWS_AS(evaluate_j(rep, model, std::nullopt, 1, 1), JRepError);
}

TEST_CASE("J at genus 0") {
    const auto F = parse_all(6, {"T[1,3,2,3]"});
    const auto rep = represent_J(F, {});
    REQUIRE(rep.collapsed);
    CHECK(same_ratio(rep.collapsed->num[0], rep.collapsed->den, up("(X-3)^3(X^3-9X^2+3X-3)^3"),
                     up("(X-1)^3X^2(X-9)")));
}

TEST_CASE("J at N=11 and the max-order policy") {
    const auto F = parse_all(11, {"T[2,1,5,1]", "T[2,1,3,1]"});
    const auto model = model_of(F, 1);
    JOptions o;
    o.policy = KillerPolicy::MaxOrder;
    const auto rep = represent_J(F, o, model);
    REQUIRE(rep.collapsed);
    CHECK(same_ratio(rep.collapsed->num[1], rep.collapsed->den, up("X^5+13X^4-841X^3+5685X^2-10974X+6049"),
                     up("X-18")));
    CHECK(same_ratio(rep.collapsed->num[0], rep.collapsed->den,
                     up("-(11X^6-278X^5+1523X^4-1514X^3+974X^2-11777X+12992)"), up("X-18")));
}

TEST_CASE("reduction modulo the model") {
    const auto model = parse_poly("Y^2 - X^3 - 1", xy_names());
    CHECK(reduce_mod_model(parse_poly("Y^3", xy_names()), model) == parse_poly("X^3Y + Y", xy_names()));
}
