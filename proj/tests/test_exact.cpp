#include "doctest.h"
#include "x0n/cyclotomic.hpp"
#include "x0n/rational.hpp"

using namespace x0n;

namespace {

// Coefficients of a polynomial (constant first) times another.
std::vector<Integer> mul(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    std::vector<Integer> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

}  // namespace

TEST_CASE("parse_rational") {
    CHECK(parse_rational("6461/3") == Rational(6461, 3));
    CHECK(parse_rational(" -4/6 ") == Rational(-2, 3));
    CHECK(parse_rational("+7") == 7);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    Rational h(-5, 10);
    h.canonicalize();
    CHECK(to_string(h) == "-1/2");
}

TEST_CASE("DenominatorLcm") {
    DenominatorLcm l;
    l.add(Rational(1, 4));
    l.add(Rational(5, 6));
    l.add(Rational(7));
    CHECK(l.value() == 12);
}

TEST_CASE("cyclotomic polynomials multiply back to x^n - 1") {
    for (int n : {1, 2, 6, 7, 12, 14, 30, 52}) {
        std::vector<Integer> prod{1};
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) prod = mul(prod, cyclotomic_poly(d));
        std::vector<Integer> expect(static_cast<std::size_t>(n) + 1, 0);
        expect[0] = -1;
        expect[n] = 1;
        CHECK(prod == expect);
        CHECK(static_cast<int>(cyclotomic_poly(n).size()) - 1 == euler_phi(n));
    }
    const std::vector<Integer> phi14{1, -1, 1, -1, 1, -1, 1};
    CHECK(cyclotomic_poly(14) == phi14);
}

TEST_CASE("root powers reduce modulo Phi_N") {
    CHECK(CycNum::root_power(14, 6).to_string() == "z^5 - z^4 + z^3 - z^2 + z - 1");
    CHECK(CycNum::root_power(14, 7) == CycNum(14, -1));
    CHECK(CycNum::root_power(14, 14) == CycNum(14, 1));
    CHECK(CycNum::root_power(14, -1) == CycNum::root_power(14, 13));
    CHECK((CycNum(14, 8) * CycNum::root_power(14, 2)).to_string() == "8*z^2");
    CHECK(CycNum(14).to_string() == "0");
}

TEST_CASE("field arithmetic") {
    const CycNum z = CycNum::root_power(13, 1);
    CycNum sum(13);
    for (int k = 0; k < 13; ++k) sum += CycNum::root_power(13, k);
    CHECK(sum.is_zero());
    const CycNum x = CycNum(13, 3) + z * z - Rational(1, 2) * z;
    CHECK(x * x.inverse() == CycNum(13, 1));
    CHECK((x / x) == CycNum(13, 1));
    CHECK_THROWS_AS(CycNum(13).inverse(), CyclotomicError);
    CHECK_THROWS_AS(z.to_rational(), CyclotomicError);
    CHECK((z * CycNum::root_power(13, 12)).to_rational() == 1);
    CHECK_THROWS(CycNum(13, 1) + CycNum(14, 1));
}
