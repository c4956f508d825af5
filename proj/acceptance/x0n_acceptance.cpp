// Acceptance run: one PASS/FAIL line per criterion, details indented below it.
// Exit status is 0 only when every criterion passes.

#include "j_oracle.hpp"
#include "properties.hpp"
#include "x0n/pipeline.hpp"
#include "x0n/search.hpp"
#include "x0n/weier.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

using namespace x0n;
using json = nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string secs(double s) {
    std::ostringstream o;
    o.precision(s < 10 ? 2 : 1);
    o << std::fixed << s << " s";
    return o.str();
}

struct Criterion {
    int id;
    std::string title;
    bool pass = true;
    std::vector<std::string> lines;

    void item(bool ok, const std::string& what) {
        lines.push_back(std::string(ok ? "pass  " : "FAIL  ") + what);
        pass = pass && ok;
    }
    // Reported but not counted toward the verdict.
    void info(const std::string& what) { lines.push_back("      " + what); }
};

int failures = 0;

void report(const Criterion& c, double seconds) {
    std::cout << (c.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " [" << secs(seconds)
              << "]\n";
    for (const auto& l : c.lines) std::cout << "    " << l << "\n";
    std::cout.flush();
    if (!c.pass) ++failures;
}

void timed(Criterion c, const std::function<void(Criterion&)>& body) {
    const auto t0 = Clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.item(false, std::string("exception: ") + e.what());
    }
    report(c, since(t0));
}

struct Cmd {
    int rc = -1;
    std::string out;
};

Cmd shell(const std::string& cmd) {
    Cmd r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int st = pclose(p);
    r.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

const PaperExpansion& expansion(const PaperRecord& rec, int F, int D) {
    for (const auto& e : rec.expansions)
        if (e.F == F && e.D == D) return e;
    throw std::runtime_error("no table expansion F" + std::to_string(F) + "," + std::to_string(D));
}

// Runs the CLI and compares the printed coefficients with the table, up to q^15 at <1/1>.
bool cli_matches(Criterion& c, const std::string& label, const std::string& expr, const PaperExpansion& want,
                 double& worst) {
    const std::string cmd = std::string(X0N_CLI) + " expand 14 --expr \"" + expr + "\" --cusp 1," +
                            std::to_string(want.D) + " 2>&1";
    const auto t0 = Clock::now();
    const Cmd r = shell(cmd);
    const double t = since(t0);
    worst = std::max(worst, t);
    if (r.rc != 0) {
        c.info(label + ": x0n exited " + std::to_string(r.rc) + ": " + r.out);
        return false;
    }
    const json j = json::parse(r.out);
    std::string why;
    if (j["val"].get<int>() != want.val) why = "valuation " + std::to_string(j["val"].get<int>());
    const auto& got = j["coeffs"];
    for (std::size_t k = 0; why.empty() && k < want.coeffs.size(); ++k) {
        if (k >= got.size())
            why = "too few coefficients";
        else if (got[k].get<std::string>() != want.coeffs[k])
            why = "q^" + std::to_string(want.val + static_cast<int>(k)) + " coefficient " + got[k].get<std::string>() +
                  ", table " + want.coeffs[k];
    }
    const int top = want.val + static_cast<int>(want.coeffs.size()) - 1;
    c.info(label + " via `x0n expand 14 --expr \"" + expr + "\" --cusp 1," + std::to_string(want.D) + "` through q^" +
           std::to_string(top) + ": " + (why.empty() ? "exact match" : why) + " (" + secs(t) + ")");
    return why.empty();
}

PipelineConfig table_config(int N, bool normalize) {
    PipelineConfig cfg;
    cfg.N = N;
    cfg.use_paper_generators = true;
    cfg.normalize_paper_signs = normalize;
    return cfg;
}

std::vector<std::pair<BivarPoly, int>> all_equations;

PipelineResult run_and_keep(const PipelineConfig& cfg, Stage last = Stage::JRep) {
    auto r = run(cfg, last);
    if (r.equation) all_equations.emplace_back(*r.equation, r.g);
    return r;
}

void criterion1() {
    timed({1, "expansion golden at N=14 (literal T[5,1,2,1])"}, [](Criterion& c) {
        const auto rec = load_paper_record(14);
        double worst = 0;
        const bool f11 = cli_matches(c, "F1,1", "T[5,1,2,1]", expansion(rec, 1, 1), worst);
        const bool f21 = cli_matches(c, "F2,1", "T[4,1,3,1]*[5,1,2,1]", expansion(rec, 2, 1), worst);
        const bool f12 = cli_matches(c, "F1,2", "T[5,1,2,1]", expansion(rec, 1, 2), worst);
        c.item(f11, "F1,1 literal");
        c.item(f21, "F2,1");
        c.item(f12, "F1,2 = -1 + 8 z^2 q_2^2 + 8 z^3 q_2^3 literal");
        const bool s11 = cli_matches(c, "F1,1 sign-corrected", "-T[5,1,2,1]", expansion(rec, 1, 1), worst);
        const bool s12 = cli_matches(c, "F1,2 sign-corrected", "-T[5,1,2,1]", expansion(rec, 1, 2), worst);
        c.info(std::string("with F1 = -T[5,1,2,1]: F1,1 ") + (s11 ? "match" : "differs") + ", F1,2 " +
               (s12 ? "match" : "differs") + " (the table's F1 is the negative of the literal trace)");
        c.item(worst < 10, "each expansion under 10 s (slowest " + secs(worst) + ")");
    });
}

void criterion2() {
    timed({2, "minimal equations for N=11, 14 with table generators"}, [](Criterion& c) {
        const std::vector<std::pair<int, std::string>> want = {{11, "Y^2-5Y-X^3+7X^2-6X+18"},
                                                               {14, "Y^2-X^3+XY-6X^2-Y-18X-12"}};
        for (const auto& [N, text] : want) {
            const RPoly target = parse_poly(text, xy_names());
            for (const bool normalize : {false, true}) {
                const auto t0 = Clock::now();
                const auto r = run_and_keep(table_config(N, normalize), Stage::Equation);
                const double t = since(t0);
                const bool same = r.equation && *r.equation == target;
                const std::string what = "N=" + std::to_string(N) + (normalize ? " sign-normalized" : " literal") +
                                         ": " + (r.equation ? r.equation->to_string(xy_names()) : "none") + " (" +
                                         secs(t) + ")";
                if (!normalize)
                    c.item(same && t < 30, what);
                else if (!r.notes.empty())
                    c.info(what + (same ? " matches" : " differs") + "; " + r.notes.front());
            }
        }
    });
}

void criterion3() {
    timed({3, "genus 0 R_N against the table records"}, [](Criterion& c) {
        for (int N : {6, 7, 8, 9, 10, 12, 13}) {
            const auto rec = load_paper_record(N);
            const auto t0 = Clock::now();
            const auto r = run_and_keep(table_config(N, false));
            const double t = since(t0);
            const auto d = verify_against_paper(r, rec);
            const bool ok = contains(d.matched, "R_N");
            c.item(ok && t < 60, "N=" + std::to_string(N) + " literal: R_N " + (ok ? "exact match" : "differs") +
                                     " (" + secs(t) + ")");
            if (!ok) {
                const auto rn = run(table_config(N, true));
                const bool okn = contains(verify_against_paper(rn, rec).matched, "R_N");
                c.info("N=" + std::to_string(N) + " with F1 sign-normalized: R_N " + (okn ? "matches" : "differs"));
            }
        }
    });
}

// Pole of J at O = <1/1>, and J agrees with j there.
void check_O(Criterion& c, const PipelineResult& r) {
    const CuspClass P = make_cusp_class(1, 1, r.N);
    const int prec = 40;
    std::vector<QSeries> B;
    for (const auto& f : r.gens.funcs) B.push_back(expand_rational(f, P, prec));
    const QSeries num = eval_on_series(r.J->P_N, B);
    const QSeries den = eval_on_series(r.J->denominator, B);
    const int order = num.valuation() - den.valuation();
    const QSeries diff = num - j_at_cusp(P, r.N, prec) * den;
    c.item(order < 0 && diff.is_zero(), "O = <1/1>: J has a pole of order " + std::to_string(-order) +
                                            (diff.is_zero() ? " and equals j there" : ", J != j"));
}

void criterion4() {
    timed({4, "N=14 J representation"}, [](Criterion& c) {
        const auto t0 = Clock::now();
        const auto rec = load_paper_record(14);
        const auto lit = run_and_keep(table_config(14, false));
        const auto dl = verify_against_paper(lit, rec);
        c.info("literal T[5,1,2,1]: " + std::to_string(dl.matched.size()) + " items match, " +
               std::to_string(dl.diffs.size()) + " differ (A, B, points are for the negated F1)");
        const auto r = run_and_keep(table_config(14, true));
        c.info(r.notes.empty() ? std::string("no normalization") : r.notes.front());
        const auto d = verify_against_paper(r, rec);
        for (const std::string item : {"A", "B", "denominator"}) c.item(contains(d.matched, item), item);
        c.info("denominator " + nlohmann::json::parse(jrep_json(r))["R_N"]["den"].get<std::string>());
        for (const auto& p : rec.j_values) {
            const JValue v = evaluate_j(*r.J, r.equation, r.H, parse_rational(p.x), parse_rational(p.y));
            const std::string got = v.cusp ? "cusp" : to_string(v.value);
            c.item(!v.cusp && v.value == parse_rational(p.j),
                   "j(" + p.x + "," + p.y + ") = " + p.j + ": computed " + got);
            if (p.j == "16581380") c.info("computed value 16581375 = 255^3, the CM value for discriminant -28");
        }
        for (const auto& p : rec.cusp_points) {
            const JValue v = evaluate_j(*r.J, r.equation, r.H, parse_rational(p.x), parse_rational(p.y));
            c.item(v.cusp, "(" + p.x + "," + p.y + ") gives " + (v.cusp ? "the cusp marker" : to_string(v.value)));
        }
        check_O(c, r);
        const double t = since(t0);
        c.item(t < 120, "runtime " + secs(t));
    });
}

void criterion5() {
    timed({5, "N=52 with the six table generators"}, [](Criterion& c) {
        const auto rec = load_paper_record(52);
        const auto t0 = Clock::now();
        const auto r = run_and_keep(table_config(52, false));
        const double t = since(t0);
        const auto d = verify_against_paper(r, rec);
        for (const std::string item : {"equation", "Delta", "U3", "U4", "U5", "U6"})
            c.item(contains(d.matched, item), item + " (up to the integer clearing scalar)");
        c.item(contains(d.matched, "C12"), "C12 = " + rec.C.at(12));
        for (const auto& s : d.diffs) c.info("diff: " + s);
        c.item(t < 1800, "runtime " + secs(t));
    });
}

void criterion6() {
    timed({6, "property suite"}, [](Criterion& c) {
        using namespace checks;
        auto prop = [&](const std::string& what, const PropResult& r) {
            c.item(r.ok(), what + ": " + std::to_string(r.checked) + " checked, " + std::to_string(r.failed) +
                               " failed" + (r.first_failure.empty() ? "" : " (" + r.first_failure + ")"));
        };
        std::mt19937 rng(20240611);
        for (int N : {11, 14, 15, 21})
            prop("(a) divisor degree 0, N=" + std::to_string(N), divisor_degree_zero(N, 200, rng));
        std::mt19937 rng_b(7);
        prop("(b) order = expansion valuation", order_matches_expansion({11, 12, 14, 15, 20, 21, 22, 26}, 200, rng_b));
        std::mt19937 rng_c(11);
        prop("(c) trace bound <= valuation", trace_bound_holds({11, 14, 15, 20, 21, 22}, 100, rng_c));

        // every g = 2 level in 22..31 (N=23, 26, 28, 31 use sign-normalized rows)
        for (int N : {22, 23, 26, 28, 29, 31}) {
            const auto r = run_and_keep(table_config(N, true), Stage::Relations);
            const int d = delta_pole_order(r);
            c.item(d == 3, "(d) N=" + std::to_string(N) + " d_P(Delta) = " + std::to_string(d) + ", want 3");
        }
        const auto r52 = run(table_config(52, false), Stage::Relations);
        const int d52 = delta_pole_order(r52);
        c.item(d52 == 24, "(d) N=52 d_P(Delta) = " + std::to_string(d52) + ", want 24");

        for (int N : {11, 15, 17, 19, 20, 21, 24, 30, 33, 37})
            (void)run_and_keep([N] {
                PipelineConfig cfg;
                cfg.N = N;
                return cfg;
            }(), Stage::Equation);
        PropResult shape;
        for (const auto& [eq, g] : all_equations) {
            const auto p = phi_degrees(eq, g);
            shape.checked += p.checked;
            if (!p.ok()) shape.fail(p.first_failure);
        }
        prop("(e) deg Phi_j <= g+1-j on every equation of this run", shape);
        for (int N : {14, 22}) prop("(f) precision doubling, N=" + std::to_string(N), precision_stability(N));
    });
}

void criterion7() {
    timed({7, "j series against the E4^3/Delta oracle"}, [](Criterion& c) {
        const auto oracle = checks::naive_j(10);
        const auto& fx = checks::j_fixture();
        bool fixture = true;
        for (int k = 0; k < 10; ++k) fixture = fixture && oracle[k] == Integer(fx[k]);
        c.item(fixture, "oracle reproduces the fixture");
        const QSeries j = j_series(9);
        bool same = j.valuation() == -1;
        for (int k = 0; k < 10; ++k) same = same && j.coeff(k - 1) == Rational(oracle[k]);
        c.item(same, "j_series q^-1..q^8 equals the oracle");
    });
}

void criterion8() {
    timed({8, "generator search"}, [](Criterion& c) {
        for (int N : {11, 14, 20, 22}) {
            const auto t0 = Clock::now();
            const auto sys = search_generators(N);
            const double t = since(t0);
            const auto v = verify_system(sys);
            std::string fs;
            for (const auto& f : sys.funcs) fs += (fs.empty() ? "" : ", ") + f.to_string();
            c.item(v.ok && t < 600, "N=" + std::to_string(N) + ": " + fs + " (" + secs(t) + ")");
        }
    });
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::cout << "\n" << (8 - failures) << " of 8 criteria pass [" << secs(since(t0)) << "]\n";
    return failures == 0 ? 0 : 1;
}
