#include "doctest.h"
#include "x0n/modcurve.hpp"

using namespace x0n;

TEST_CASE("braces") {
    CHECK(braces_mu(5, 1, 14) == Braces{5, 1});
    CHECK(braces_mu(9, 1, 14) == Braces{5, -1});
    CHECK(braces_mu(7, 1, 14) == Braces{7, 1});
    CHECK(braces_mu(5, 2, 14) == Braces{2, -1});
    CHECK(braces_mu(3, 7, 14) == Braces{1, 1});
    CHECK(braces_mu(2, 7, 14) == Braces{0, 1});
    CHECK(braces_mu(-1, 1, 14) == Braces{1, -1});
}

TEST_CASE("vector validation") {
    CHECK_NOTHROW(WVector(14, {5, 1, 2, 1}));
    CHECK_THROWS_AS(WVector(14, {14, 1, 2, 1}), InvalidVector);
    CHECK_THROWS_AS(WVector(14, {5, 9, 2, 1}), InvalidVector);
    CHECK_THROWS_AS(WVector(14, {5, 1, 3, 3}), InvalidVector);
    CHECK(WVector(14, {19, -1, 2, 1}).to_string() == "[5,13,2,1]");
    CHECK(WVector(14, {5, 1, 5, 1}).is_trivial());
    CHECK_THROWS_AS(WVector(14, {5, 1, 2, 1}).scaled(2), InvalidVector);
}

TEST_CASE("level validation") {
    CHECK_THROWS_AS(cusps_gamma1(4), UnsupportedLevel);
    CHECK_THROWS_AS(cusps_gamma0(1), UnsupportedLevel);
}

namespace {
int phi(int n) {
    int c = 0;
    for (int k = 1; k <= n; ++k)
        if (gcd(k, n) == 1) ++c;
    return c;
}
}  // namespace

TEST_CASE("Gamma_1 cusp counts match (1/2) sum phi(d) phi(N/d)") {
    CHECK(cusps_gamma1(6).size() == 4);
    for (int N = 5; N <= 60; ++N) {
        int s = 0;
        for (int d : divisors(N)) s += phi(d) * phi(N / d);
        CHECK_MESSAGE(static_cast<int>(cusps_gamma1(N).size()) == s / 2, "N=" << N);
    }
}

TEST_CASE("Gamma_0 cusps") {
    auto c14 = cusps_gamma0(14);
    REQUIRE(c14.size() == 4);
    CHECK(c14[0].to_string() == "<1/1>");
    CHECK(c14[1].D == 2);
    CHECK(c14[1].d == 1);
    CHECK(cusps_gamma0(25).size() == 6);
    CHECK(cusps_gamma0(52).size() == 6);
    for (const auto& q : cusps_gamma0(36)) CHECK(q.u * q.d - q.c * q.D == 1);
    CHECK(cusp_class_of(1, 14, 14).D == 14);
    CHECK(cusp_class_of(3, 5, 25).u == 3);
    CHECK_THROWS(cusp_class_of(2, 2, 14));
}

TEST_CASE("genus") {
    CHECK(genus0(11) == 1);
    CHECK(genus0(14) == 1);
    CHECK(genus0(22) == 2);
    CHECK(genus0(52) == 5);
    for (int N : {6, 7, 8, 9, 10, 12, 13, 16, 18, 25}) CHECK(genus0(N) == 0);
    CHECK(genus0(37) == 2);
    CHECK(genus0(100) == 7);
}

TEST_CASE("orders") {
    const WVector a(14, {5, 1, 2, 1});
    CHECK(w_order_at_t(a, 1) == 0);
    CHECK(trace_order_bound(a, std::nullopt, 1) == -2);
    CHECK(j_pole_order(make_cusp_class(1, 1, 14), 14) == 14);
    CHECK(j_pole_order(make_cusp_class(1, 4, 16), 16) == 1);
}
