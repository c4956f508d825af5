#include "doctest.h"
#include "x0n/search.hpp"

using namespace x0n;

TEST_CASE("candidate pool at N=14") {
    const auto pool = candidate_pool(14, {});
    auto has = [&](const char* s) {
        const auto f = ModFuncExpr::parse(14, s);
        for (const auto& c : pool)
            if (c.f == f) return true;
        return false;
    };
    CHECK(has("T[5,1,2,1]"));
    CHECK(has("T[4,1,3,1]*[5,1,2,1]"));
    for (const auto& c : pool) CHECK(c.bound_p <= -2);
}

TEST_CASE("search finds valid systems") {
    for (int N : {11, 14, 20, 22}) {
        CAPTURE(N);
        const auto sys = search_generators(N);
        CHECK(sys.g == genus0(N));
        CHECK(verify_system(sys).ok);
    }
}

TEST_CASE("completion keeps the given functions") {
    const auto F1 = ModFuncExpr::parse(22, "-3+[8,2,3,2]*[3,1,8,1]");
    const auto F2 = ModFuncExpr::parse(22, "6-[4,2,10,2]*[10,1,4,1]-[8,2,3,2]*[3,1,8,1]");
    const auto sys = search_generators(22, {}, {F1, F2});
    REQUIRE(sys.funcs.size() == 3);
    CHECK(sys.funcs[0] == F1);
    CHECK(sys.funcs[1] == F2);
    CHECK(verify_system(sys).ok);
}

TEST_CASE("verify_system flags problems") {
    GeneratorSystem sys{14, 1, {ModFuncExpr::parse(14, "T[5,1,2,1]"), ModFuncExpr::parse(14, "T[4,1,3,1]*[5,1,2,1]")}, "table"};
    auto rep = verify_system(sys);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.issues.size() == 1);
    CHECK(rep.issues[0].find("normalization") != std::string::npos);
    sys.funcs[0] = ModFuncExpr::parse(14, "-T[5,1,2,1]");
    CHECK(verify_system(sys).ok);
    sys.funcs[1] = ModFuncExpr::parse(15, "T[2,1,7,1]");
    CHECK_FALSE(verify_system(sys).ok);
    sys.funcs.pop_back();
    CHECK_FALSE(verify_system(sys).ok);
}

TEST_CASE("bounds parsing") {
    auto b = parse_bounds("entry=7,terms=1,slack=3");
    CHECK(b.max_entry == 7);
    CHECK(b.max_terms == 1);
    CHECK(b.slack == 3);
    CHECK_THROWS(parse_bounds("terms=5"));
    CHECK_THROWS(parse_bounds("foo=1"));
}
