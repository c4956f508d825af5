#include "doctest.h"
#include "j_oracle.hpp"
#include "properties.hpp"

using namespace x0n;
using namespace x0n::checks;

namespace {

void require_ok(const PropResult& r) {
    INFO(r.first_failure);
    CHECK(r.checked > 0);
    CHECK(r.failed == 0);
}

}  // namespace

TEST_CASE("divisor of W_a has degree zero") {
    std::mt19937 rng(20240611);
    for (int N : {11, 14, 15, 21}) {
        CAPTURE(N);
        const auto r = divisor_degree_zero(N, 200, rng);
        CHECK(r.checked == 200);
        require_ok(r);
    }
}

TEST_CASE("predicted order of W_a equals the expansion valuation") {
    std::mt19937 rng(7);
    const auto r = order_matches_expansion({11, 12, 14, 15, 20, 21, 22, 26}, 200, rng);
    CHECK(r.checked == 200);
    require_ok(r);
}

TEST_CASE("trace order bound is a lower bound") {
    std::mt19937 rng(11);
    const auto r = trace_bound_holds({11, 14, 15, 20, 21, 22}, 100, rng);
    CHECK(r.checked == 100);
    require_ok(r);
}

TEST_CASE("determinant of the relation system has pole order g^2 - 1") {
    for (int N : {22, 23, 26, 28, 29, 31}) {
        CAPTURE(N);
        PipelineConfig cfg;
        cfg.N = N;
        cfg.use_paper_generators = true;
        const auto res = run(cfg, Stage::Relations);
        REQUIRE(res.H);
        CHECK(delta_pole_order(res) == 3);
    }
}

TEST_CASE("determinant pole order at N=52") {
    PipelineConfig cfg;
    cfg.N = 52;
    cfg.use_paper_generators = true;
    const auto res = run(cfg, Stage::Relations);
    REQUIRE(res.H);
    CHECK(delta_pole_order(res) == 24);
    require_ok(phi_degrees(*res.equation, 5));
}

TEST_CASE("minimal equations have the expected shape") {
    for (int N : {11, 14, 15, 17, 19, 20, 21, 22, 23, 24, 26, 28, 29, 30, 31, 33, 37}) {
        CAPTURE(N);
        PipelineConfig cfg;
        cfg.N = N;
        const auto res = run(cfg, Stage::Equation);
        REQUIRE(res.equation);
        require_ok(phi_degrees(*res.equation, res.g));
    }
}

TEST_CASE("doubling the precision guard changes nothing") {
    for (int N : {14, 22}) {
        CAPTURE(N);
        require_ok(precision_stability(N));
    }
}

TEST_CASE("j oracle agrees with the fixture") {
    const auto j = naive_j(10);
    const auto& fx = j_fixture();
    REQUIRE(fx.size() == 10);
    for (int k = 0; k < 10; ++k) CHECK(j[k] == Integer(fx[k]));
}
