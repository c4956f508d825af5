#include "doctest.h"
#include "x0n/series.hpp"

using namespace x0n;

namespace {
const SeriesTag kTag{7, 1, 1};
QSeries from_ints(int val, int prec, std::vector<long> c) {
    std::vector<Rational> v(c.begin(), c.end());
    return QSeries(kTag, val, prec, std::move(v));
}
}  // namespace

TEST_CASE("normalisation strips leading zeros") {
    auto s = from_ints(-2, 5, {0, 0, 3, 1});
    CHECK(s.valuation() == 0);
    CHECK(s.coeffs().size() == 5);
    CHECK(s.coeff(0) == 3);
    CHECK(s.coeff(-5) == 0);
    CHECK_THROWS_AS(s.coeff(5), SeriesError);
    auto z = from_ints(0, 4, {0, 0});
    CHECK(z.is_zero());
    CHECK(z.valuation() == 4);
}

TEST_CASE("geometric series inverse") {
    auto one_minus_q = from_ints(0, 10, {1, -1});
    auto inv = one_minus_q.inverse();
    CHECK(inv.precision() == 10);
    for (int k = 0; k < 10; ++k) CHECK(inv.coeff(k) == 1);
    auto s = from_ints(-2, 6, {2, 1, 5, 0, 7});
    auto p = s * s.inverse();
    CHECK(p.valuation() == 0);
    CHECK(p.precision() == 8);
    CHECK(p.coeff(0) == 1);
    for (int k = 1; k < 8; ++k) CHECK(p.coeff(k) == 0);
}

TEST_CASE("product precision and pow") {
    auto a = from_ints(-1, 3, {1, 2, 3, 4});
    auto b = from_ints(2, 4, {1, 1});
    auto p = a * b;
    CHECK(p.valuation() == 1);
    CHECK(p.precision() == std::min(3 + 2, 4 - 1));
    auto c = from_ints(0, 6, {1, 1});
    auto c3 = c.pow(3);
    CHECK(c3.coeff(0) == 1);
    CHECK(c3.coeff(1) == 3);
    CHECK(c3.coeff(2) == 3);
    CHECK(c3.coeff(3) == 1);
    CHECK(c3.coeff(4) == 0);
    CHECK(c.pow(0).coeff(0) == 1);
}

TEST_CASE("add, subtract, alias") {
    auto a = from_ints(0, 5, {1, 2, 3});
    auto b = from_ints(-1, 3, {4});
    auto s = a + b;
    CHECK(s.precision() == 3);
    CHECK(s.valuation() == -1);
    a -= a;
    CHECK(a.is_zero());
    CHECK(a.precision() == 5);
}

TEST_CASE("rebase and inflate") {
    auto s = from_ints(-2, 7, {1, 0, 5, 0, 9});
    auto r = s.rebased(2);
    CHECK(r.valuation() == -1);
    CHECK(r.precision() == 4);
    CHECK(r.coeff(0) == 5);
    CHECK(r.coeff(1) == 9);
    CHECK(r.tag().variable() == "q_1^2");
    CHECK_THROWS_AS(from_ints(0, 4, {1, 1}).rebased(2), SeriesError);
    auto i = r.inflated(2);
    CHECK(i.valuation() == -2);
    CHECK(i.precision() == 8);
    CHECK(i.coeff(2) == 9);
    CHECK(i.coeff(1) == 0);
}

TEST_CASE("mismatched variables are rejected") {
    QSeries a(SeriesTag{7, 1, 1}, 0, 3, {1});
    QSeries b(SeriesTag{7, 7, 1}, 0, 3, {1});
    CHECK_THROWS_AS(a + b, SeriesError);
    CHECK_THROWS_AS(a * b, SeriesError);
}

TEST_CASE("cyclotomic series convert exactly") {
    CSeries c(SeriesTag{5, 5, 1}, 0, 2, {CycNum(5, 2), CycNum::root_power(5, 1)});
    CHECK_THROWS_AS(to_rational_series(c), CyclotomicError);
    auto q = to_rational_series(to_cyclotomic_series(from_ints(0, 3, {1, 2})));
    CHECK(q.coeff(1) == 2);
}
