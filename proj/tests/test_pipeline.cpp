#include "doctest.h"
#include "x0n/pipeline.hpp"
#include "x0n/weier.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>

using namespace x0n;

namespace {

PipelineResult with_table(int N, Stage last = Stage::JRep) {
    PipelineConfig cfg;
    cfg.N = N;
    cfg.use_paper_generators = true;
    return run(cfg, last);
}

DiffReport verify_table(int N) { return verify_against_paper(with_table(N), load_paper_record(N)); }

bool has_diff(const DiffReport& d, const std::string& prefix) {
    return std::any_of(d.diffs.begin(), d.diffs.end(), [&](const std::string& s) { return s.rfind(prefix, 0) == 0; });
}

}  // namespace

TEST_CASE("config validation") {
    PipelineConfig cfg;
    CHECK(cfg.precision_guard == 25);
    cfg.N = 14;
    cfg.precision_guard = 9;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.precision_guard = 10;
    CHECK_NOTHROW(cfg.validate());
    cfg.N = 4;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.N = 14;
    cfg.use_paper_generators = true;
    cfg.generators_file = "x.json";
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("table records load") {
    const auto r = load_paper_record(14);
    CHECK(r.g == 1);
    CHECK(r.functions.size() == 2);
    CHECK(r.expansions.size() == 8);
    CHECK(r.j_values.size() == 2);
    CHECK(r.cusp_points.size() == 3);
    CHECK(!r.J_A.empty());
    const auto r52 = load_paper_record(52);
    CHECK(r52.functions.size() == 6);
    CHECK(r52.relations.size() == 4);
    CHECK(r52.U.size() == 4);
    CHECK(r52.C.count(12) == 1);
    CHECK_FALSE(has_paper_record(27));
    CHECK_THROWS(load_paper_record(27));
}

TEST_CASE("N=14 against the worked example") {
    const auto res = with_table(14);
    REQUIRE(res.notes.size() == 1);
    CHECK(res.notes[0].find("scaled by -1") != std::string::npos);
    CHECK(res.equation->to_string(xy_names()) == "Y^2 + X*Y - Y - X^3 - 6*X^2 - 18*X - 12");
    const auto d = verify_against_paper(res, load_paper_record(14));
    // the printed j([5]P) = 16581380 is 5 more than 255^3
    REQUIRE(d.diffs.size() == 1);
    CHECK(d.diffs[0] == "j(7,-31) = 16581380: computed 16581375");
    CHECK(d.matched.size() == 19);
}

TEST_CASE("N=14 generators exactly as printed") {
    PipelineConfig cfg;
    cfg.N = 14;
    cfg.use_paper_generators = true;
    cfg.normalize_paper_signs = false;
    const auto res = run(cfg);
    CHECK(res.equation->to_string(xy_names()) == "Y^2 - X*Y - Y + X^3 - 6*X^2 + 18*X - 12");
    const auto d = verify_against_paper(res, load_paper_record(14));
    CHECK(has_diff(d, "equation"));
    CHECK(has_diff(d, "expansion F1,1"));
    CHECK_FALSE(has_diff(d, "expansion F2,1"));
}

TEST_CASE("table rows reproduced exactly") {
    for (int N : {6, 7, 8, 9, 11, 12, 13, 15, 17, 18, 19, 20, 22, 24, 25, 36, 49}) {
        CAPTURE(N);
        const auto d = verify_table(N);
        INFO((d.diffs.empty() ? std::string() : d.diffs.front()));
        CHECK(d.ok());
        CHECK(d.matched.size() >= 2);
    }
}

TEST_CASE("higher genus generator lists are valid systems") {
    for (int N : {30, 33, 34, 35, 37, 40, 41, 42, 43, 44, 45, 46, 47, 48, 50}) {
        CAPTURE(N);
        const auto res = with_table(N, Stage::Generators);
        CHECK(verify_system(res.gens).ok);
    }
}

TEST_CASE("misprinted table rows are reported") {
    CHECK(has_diff(verify_table(10), "R_N"));
    CHECK(has_diff(verify_table(16), "R_N"));
    CHECK(has_diff(verify_table(21), "equation"));
    CHECK(has_diff(verify_table(32), "equation"));
    for (int N : {23, 26, 28, 31}) {
        CAPTURE(N);
        CHECK(has_diff(verify_table(N), "equation"));
    }
    const auto d29 = verify_table(29);
    CHECK(d29.diffs == std::vector<std::string>{"R_N: coefficient of Y^1 differs"});
    for (int N : {38, 39}) {
        CAPTURE(N);
        try {
            (void)with_table(N, Stage::Generators);
            FAIL("expected a generator error");
        } catch (const PipelineError& e) {
            CHECK(e.stage() == Stage::Generators);
        }
    }
}

TEST_CASE("N=31 with the first generator sign corrected reproduces R_31") {
    auto rec = load_paper_record(31);
    rec.functions[0] = "10-[4,2,9,2]*[9,1,4,1]";
    std::vector<std::string> notes;
    PipelineResult res;
    res.N = 31;
    res.g = 2;
    res.gens = paper_generators(rec, {}, true, notes);
    PipelineConfig cfg;
    cfg.N = 31;
    const auto path = (std::filesystem::temp_directory_path() / "x0n_test_g31.json").string();
    save_generator_file(res.gens, path);
    cfg.generators_file = path;
    const auto full = run(cfg);
    std::remove(path.c_str());
    const auto d = verify_against_paper(full, rec);
    CHECK(std::find(d.matched.begin(), d.matched.end(), "R_N") != d.matched.end());
    CHECK(has_diff(d, "equation"));
}

TEST_CASE("N=52 against the worked example") {
    const auto res = with_table(52);
    CHECK(res.notes.empty());
    const auto d = verify_against_paper(res, load_paper_record(52));
    INFO((d.diffs.empty() ? std::string() : d.diffs.front()));
    CHECK(d.ok());
    for (const char* item : {"equation", "relation 1", "relation 4", "Delta", "U3", "U6", "killer denominator", "C12",
                             "C11"})
        CHECK(std::find(d.matched.begin(), d.matched.end(), std::string(item)) != d.matched.end());
}

TEST_CASE("staged errors name the stage") {
    PipelineConfig cfg;
    cfg.N = 14;
    cfg.bounds.max_entry = 2;
    cfg.bounds.max_terms = 1;
    try {
        (void)run(cfg);
        FAIL("expected a search failure");
    } catch (const PipelineError& e) {
        CHECK(e.stage() == Stage::Generators);
        CHECK(std::string(e.what()).find("widen") != std::string::npos);
    }
}

TEST_CASE("generator files round trip") {
    const auto res = with_table(14, Stage::Generators);
    const auto path = (std::filesystem::temp_directory_path() / "x0n_test_g14.json").string();
    save_generator_file(res.gens, path);
    const auto back = load_generator_file(path);
    std::remove(path.c_str());
    CHECK(back.N == 14);
    CHECK(back.g == 1);
    CHECK(back.funcs == res.gens.funcs);
    const auto j = nlohmann::json::parse(generator_json(res.gens));
    CHECK(j["functions"][0] == "-T[5,1,2,1]");
    CHECK(j["functions"][1] == "T[4,1,3,1]*[5,1,2,1]");
}

TEST_CASE("JSON output shapes") {
    const auto cusps = nlohmann::json::parse(cusps_json(14));
    REQUIRE(cusps.size() == 4);
    CHECK(cusps[1]["u"] == 1);
    CHECK(cusps[1]["D"] == 2);
    CHECK(cusps[1]["width"] == 1);

    const CSeries s = expand(ModFuncExpr::parse(14, "-T[5,1,2,1]"), make_cusp_class(1, 2, 14), 4);
    const auto js = nlohmann::json::parse(series_json(s, 14, 2));
    CHECK(js["var"] == "q_2");
    CHECK(js["val"] == 0);
    CHECK(js["prec"] == 4);
    CHECK(js["coeffs"] == nlohmann::json::array({"-1", "0", "8*z^2", "8*z^3"}));
    CHECK(series_json(s, 14, 2).rfind("{\"var\":\"q_2\",\"N\":14,\"D\":2,\"val\":0", 0) == 0);

    const auto jr = nlohmann::json::parse(jrep_json(with_table(14)));
    CHECK(jr["killers"][0]["G"] == "X + 1");
    CHECK(jr["killers"][0]["m"] == 4);
    CHECK(jr["R_N"]["den"] == "(X + 1)^4*X^2*(X - 7)");
    CHECK(jr["R_N"]["num"].size() == 2);
}

TEST_CASE("conjugate cusps give a rational denominator") {
    const auto r = with_table(16);
    REQUIRE(r.J);
    const auto j = nlohmann::json::parse(jrep_json(r));
    CHECK(j["R_N"]["den"].get<std::string>().find("X^2 + 8*X + 20") != std::string::npos);
}

TEST_CASE("collapsed form is optional above genus 2") {
    PipelineConfig cfg;
    cfg.N = 30;
    cfg.use_paper_generators = true;
    const auto plain = run(cfg);
    CHECK_FALSE(plain.J->collapsed);
    cfg.emit_collapsed_RN = true;
    const auto full = run(cfg);
    REQUIRE(full.J->collapsed);
    CHECK(full.J->collapsed->num.size() <= 4);
}
