#include "x0n/pipeline.hpp"

#include "x0n/weier.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef X0N_DATA_DIR
#define X0N_DATA_DIR "data/tables"
#endif

namespace x0n {

using json = nlohmann::ordered_json;

std::string to_string(Stage s) {
    switch (s) {
        case Stage::Generators: return "generators";
        case Stage::Equation: return "equation";
        case Stage::Relations: return "relations";
        case Stage::Killers: return "killers";
        case Stage::JRep: return "jrep";
    }
    return "?";
}

PipelineError::PipelineError(Stage stage, const std::string& what, const std::string& remedy)
    : std::runtime_error("[" + to_string(stage) + "] " + what + (remedy.empty() ? "" : " (" + remedy + ")")),
      stage_(stage),
      remedy_(remedy) {}

void PipelineConfig::validate() const {
    if (N < 5) throw std::invalid_argument("N must be at least 5");
    if (precision_guard < 10) throw std::invalid_argument("precision_guard must be at least 10");
    if (use_paper_generators && !generators_file.empty())
        throw std::invalid_argument("use_paper_generators and a generator file are exclusive");
}

std::vector<std::string> output_names(int count) {
    std::vector<std::string> n;
    for (int i = 1; i <= count; ++i) n.push_back(i == 1 ? "X" : i == 2 ? "Y" : "F" + std::to_string(i));
    return n;
}

// ---- table records ----

std::string default_data_dir() {
    if (const char* env = std::getenv("X0N_DATA_DIR"); env && *env) return env;
    return X0N_DATA_DIR;
}

namespace {

std::string record_path(int N, const std::string& dir) {
    char name[32];
    std::snprintf(name, sizeof name, "N%02d.json", N);
    return (std::filesystem::path(dir.empty() ? default_data_dir() : dir) / name).string();
}

std::string str_or(const json& j, const char* key) { return j.contains(key) ? j[key].get<std::string>() : ""; }

std::vector<PaperPoint> points(const json& j, const char* key) {
    std::vector<PaperPoint> out;
    if (!j.contains(key)) return out;
    for (const auto& p : j[key]) out.push_back({p["x"], p["y"], p.contains("j") ? p["j"].get<std::string>() : ""});
    return out;
}

std::map<int, std::string> indexed(const json& j, const char* key) {
    std::map<int, std::string> out;
    if (!j.contains(key)) return out;
    for (const auto& [k, v] : j[key].items()) out[std::stoi(k)] = v.get<std::string>();
    return out;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Rational leading_at_p(const ModFuncExpr& f) {
    const QSeries s = expand_rational(f, make_cusp_class(1, 1, f.level()), 1);
    return s.is_zero() ? Rational(0) : s.leading();
}

bool only_normalization(const VerifyReport& rep) {
    for (const auto& s : rep.issues)
        if (s.find("(normalization)") == std::string::npos) return false;
    return true;
}

UPoly upoly_of(const std::string& text, const std::string& var = "X") {
    return to_upoly(parse_poly(text, {var}), 0);
}

bool upoly_equal(UPoly a, UPoly b) {
    upoly_trim(a);
    upoly_trim(b);
    return a == b;
}

// a/b == c/d
bool same_ratio(const UPoly& a, const UPoly& b, const UPoly& c, const UPoly& d) {
    return upoly_equal(upoly_mul(a, d), upoly_mul(c, b));
}

// Text over z (a primitive N-th root of unity) to a cyclotomic number.
CycNum cyc_of(const std::string& text, int N) {
    const RPoly p = parse_poly(text, {"z"});
    CycNum out(N);
    for (const auto& [e, c] : p.terms()) out += CycNum::root_power(N, e[0]) * c;
    return out;
}

RPoly rename(const RPoly& p, int nvars) {
    RPoly out(nvars);
    for (const auto& [e, c] : p.terms()) {
        Exponent f(static_cast<std::size_t>(nvars), 0);
        for (std::size_t i = 0; i < e.size(); ++i) f[i] = e[i];
        out.add_term(f, c);
    }
    return out;
}

}  // namespace

bool has_paper_record(int N, const std::string& dir) { return std::filesystem::exists(record_path(N, dir)); }

PaperRecord load_paper_record(int N, const std::string& dir) {
    const std::string path = record_path(N, dir);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("no table record for N=" + std::to_string(N) + " (" + path + ")");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    PaperRecord r;
    r.N = j.at("N");
    r.g = j.at("g");
    r.functions = j.at("functions").get<std::vector<std::string>>();
    r.equation = str_or(j, "equation");
    if (j.contains("R")) {
        r.R_num = j["R"]["num"].get<std::vector<std::string>>();
        r.R_den = j["R"]["den"];
    }
    if (j.contains("worked_functions")) r.worked_functions = j["worked_functions"].get<std::vector<std::string>>();
    r.worked_equation = str_or(j, "worked_equation");
    if (j.contains("expansions"))
        for (const auto& e : j["expansions"]) r.expansions.push_back({e["F"], e["D"], e["val"], e["coeffs"]});
    r.j_values = points(j, "j_values");
    r.cusp_points = points(j, "cusp_points");
    if (j.contains("J")) {
        r.J_A = j["J"]["A"];
        r.J_B = j["J"]["B"];
        r.J_den = j["J"]["den"];
    }
    if (j.contains("relations")) r.relations = j["relations"].get<std::vector<std::string>>();
    r.Delta = str_or(j, "Delta");
    r.U = indexed(j, "U");
    r.C = indexed(j, "C");
    r.killer_denominator = str_or(j, "killer_denominator");
    if (r.N != N) throw std::runtime_error(path + ": level mismatch");
    return r;
}

// ---- generators ----

GeneratorSystem paper_generators(const PaperRecord& rec, const SearchBounds& bounds, bool normalize,
                                 std::vector<std::string>& notes) {
    GeneratorSystem sys;
    sys.N = rec.N;
    sys.g = rec.g;
    sys.provenance = "table";
    for (std::size_t i = 0; i < rec.functions.size(); ++i) {
        ModFuncExpr f = ModFuncExpr::parse(rec.N, rec.functions[i]);
        if (normalize) {
            const Rational l = leading_at_p(f);
            if (sgn(l) != 0 && l != 1) {
                f = f.scaled(1 / l);
                notes.push_back("F" + std::to_string(i + 1) + " scaled by " + to_string(1 / l) +
                                " (table leading coefficient " + to_string(l) + ")");
            }
        }
        sys.funcs.push_back(f);
    }
    if (static_cast<int>(sys.funcs.size()) < rec.g + 1) {
        const int given = static_cast<int>(sys.funcs.size());
        sys = search_generators(rec.N, bounds, sys.funcs);
        sys.provenance = "table+search";
        for (int i = given; i <= rec.g; ++i)
            notes.push_back("F" + std::to_string(i + 1) + " = " + sys.funcs[i].to_string() + " (search completion)");
    }
    return sys;
}

// ---- pipeline ----

PipelineResult run(const PipelineConfig& cfg, Stage last) {
    cfg.validate();
    require_supported_level(cfg.N);
    const int N = cfg.N;
    PipelineResult r;
    r.N = N;
    r.g = genus0(N);
    const int g = r.g;

    auto t0 = std::chrono::steady_clock::now();
    try {
        if (cfg.use_paper_generators)
            r.gens = paper_generators(load_paper_record(N, cfg.data_dir), cfg.bounds, cfg.normalize_paper_signs, r.notes);
        else if (!cfg.generators_file.empty())
            r.gens = load_generator_file(cfg.generators_file);
        else
            r.gens = search_generators(N, cfg.bounds);
    } catch (const SearchError& e) {
        throw PipelineError(Stage::Generators, e.what(), "widen the search bounds");
    } catch (const ParseError& e) {
        throw PipelineError(Stage::Generators, e.what(), "check the generator expressions");
    }
    if (r.gens.N != N) throw PipelineError(Stage::Generators, "generator level " + std::to_string(r.gens.N), "");
    const VerifyReport rep = verify_system(r.gens);
    if (!rep.ok) {
        if (!only_normalization(rep))
            throw PipelineError(Stage::Generators, rep.issues.front(), "choose functions with the required pole orders");
        for (const auto& s : rep.issues) r.notes.push_back(s);
    }
    r.seconds.emplace_back(Stage::Generators, elapsed(t0));
    if (last == Stage::Generators) return r;

    // One precision for every solve at P.
    const int prec = std::max(minimal_equation_precision(g, cfg.precision_guard), cfg.precision_guard + 4 * g + 6);
    const CuspClass P = make_cusp_class(1, 1, N);
    std::vector<QSeries> B;
    for (const auto& f : r.gens.funcs) B.push_back(expand_rational(f, P, prec));

    t0 = std::chrono::steady_clock::now();
    if (g >= 1) {
        try {
            r.equation = minimal_equation(B[0], B[1], g, cfg.precision_guard);
        } catch (const RelationError& e) {
            throw PipelineError(Stage::Equation, e.what(), "raise the precision guard");
        }
    }
    r.seconds.emplace_back(Stage::Equation, elapsed(t0));
    if (last == Stage::Equation) return r;

    t0 = std::chrono::steady_clock::now();
    if (g >= 2) {
        try {
            for (int i = 1; i <= g - 1; ++i) r.rows.push_back(relation_coeffs(B, i, cfg.precision_guard));
            r.H = solve_Hi(r.rows, g);
        } catch (const RelationError& e) {
            throw PipelineError(Stage::Relations, e.what(),
                                "raise the precision guard or normalize the generators to leading coefficient 1");
        }
    }
    r.seconds.emplace_back(Stage::Relations, elapsed(t0));
    if (last == Stage::Relations) return r;

    t0 = std::chrono::steady_clock::now();
    try {
        for (const auto& Q : cusps_gamma0(N))
            if (Q.D != 1) (void)find_cusp_killer(r.gens.funcs, Q, cfg.policy);
    } catch (const JRepError& e) {
        throw PipelineError(Stage::Killers, e.what(), "try the max-order killer policy");
    }
    r.seconds.emplace_back(Stage::Killers, elapsed(t0));
    if (last == Stage::Killers) return r;

    t0 = std::chrono::steady_clock::now();
    try {
        JOptions opt;
        opt.policy = cfg.policy;
        opt.guard = cfg.precision_guard;
        opt.collapse = cfg.emit_collapsed_RN;
        r.J = represent_J(r.gens.funcs, opt, r.equation, r.H);
    } catch (const JRepError& e) {
        throw PipelineError(Stage::JRep, e.what(), "raise the precision guard");
    } catch (const RelationError& e) {
        throw PipelineError(Stage::JRep, e.what(), "raise the precision guard");
    }
    r.seconds.emplace_back(Stage::JRep, elapsed(t0));
    return r;
}

// ---- comparison ----

DiffReport verify_against_paper(const PipelineResult& res, const PaperRecord& rec) {
    DiffReport d;
    auto check = [&](bool ok, const std::string& what, const std::string& detail = "") {
        if (ok)
            d.matched.push_back(what);
        else
            d.diffs.push_back(what + (detail.empty() ? "" : ": " + detail));
    };
    auto guarded = [&](const std::string& what, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            d.diffs.push_back(what + ": " + e.what());
        }
    };
    const int N = res.N, g = res.g;
    if (rec.g != g) check(false, "genus", "table " + std::to_string(rec.g) + ", computed " + std::to_string(g));

    const VerifyReport vr = verify_system(res.gens);
    check(vr.ok, "generator system", vr.ok ? "" : vr.issues.front());

    if (!rec.equation.empty() && res.equation)
        guarded("equation", [&] {
            const auto names = rec.equation.find("F1") != std::string::npos ? std::vector<std::string>{"F1", "F2"}
                                                                            : xy_names();
            const RPoly want = parse_poly(rec.equation, names);
            check(proportional(want, *res.equation), "equation",
                  "table " + want.to_string(xy_names()) + ", computed " + res.equation->to_string(xy_names()));
        });
    if (!rec.worked_equation.empty() && res.equation)
        guarded("worked equation", [&] {
            check(proportional(parse_poly(rec.worked_equation, xy_names()), *res.equation), "worked equation",
                  "computed " + res.equation->to_string(xy_names()));
        });

    const CollapsedJ* cj = res.J && res.J->collapsed ? &*res.J->collapsed : nullptr;
    if (!rec.R_num.empty()) {
        if (!cj)
            check(false, "R_N", "no collapsed representation computed");
        else
            guarded("R_N", [&] {
                const UPoly den = upoly_of(rec.R_den);
                std::size_t k = 0;
                bool ok = true;
                for (; k < std::max(rec.R_num.size(), cj->num.size()); ++k) {
                    const UPoly a = k < rec.R_num.size() ? upoly_of(rec.R_num[k]) : UPoly{};
                    const UPoly b = k < cj->num.size() ? cj->num[k] : UPoly{};
                    if (!same_ratio(a, den, b, cj->den)) {
                        ok = false;
                        break;
                    }
                }
                check(ok, "R_N", ok ? "" : "coefficient of Y^" + std::to_string(k) + " differs");
            });
    }
    if (!rec.J_A.empty()) {
        if (!cj)
            check(false, "J = (AY+B)/den", "no collapsed representation computed");
        else
            guarded("J = (AY+B)/den", [&] {
                const UPoly den = upoly_of(rec.J_den);
                check(upoly_equal(den, cj->den), "denominator", "computed " + upoly_to_string(cj->den));
                check(cj->num.size() > 1 && same_ratio(upoly_of(rec.J_A), den, cj->num[1], cj->den), "A");
                check(!cj->num.empty() && same_ratio(upoly_of(rec.J_B), den, cj->num[0], cj->den), "B");
            });
    }

    for (const auto& e : rec.expansions)
        guarded("expansion F" + std::to_string(e.F) + "," + std::to_string(e.D), [&] {
            const std::string what = "expansion F" + std::to_string(e.F) + "," + std::to_string(e.D);
            if (e.F > static_cast<int>(res.gens.funcs.size())) return check(false, what, "no such generator");
            const int count = static_cast<int>(e.coeffs.size());
            const CSeries s = expand(res.gens.funcs[e.F - 1], make_cusp_class(1, e.D, N), e.val + count);
            std::string bad;
            for (int k = 0; k < count && bad.empty(); ++k)
                if (s.coeff(e.val + k) != cyc_of(e.coeffs[k], N))
                    bad = "coefficient of q^" + std::to_string(e.val + k) + ": table " + e.coeffs[k] + ", computed " +
                          s.coeff(e.val + k).to_string();
            check(bad.empty(), what, bad);
        });

    if (res.J) {
        for (const auto& p : rec.j_values)
            guarded("j(" + p.x + "," + p.y + ")", [&] {
                const JValue v = evaluate_j(*res.J, res.equation, res.H, parse_rational(p.x), parse_rational(p.y));
                const std::string what = "j(" + p.x + "," + p.y + ") = " + p.j;
                check(!v.cusp && v.value == parse_rational(p.j), what, v.cusp ? "cusp" : "computed " + to_string(v.value));
            });
        for (const auto& p : rec.cusp_points)
            guarded("cusp (" + p.x + "," + p.y + ")", [&] {
                const JValue v = evaluate_j(*res.J, res.equation, res.H, parse_rational(p.x), parse_rational(p.y));
                check(v.cusp, "cusp (" + p.x + "," + p.y + ")", "computed j = " + to_string(v.value));
            });
    }

    const auto fn = f_names(g + 1);
    if (!rec.relations.empty())
        for (std::size_t i = 0; i < rec.relations.size(); ++i)
            guarded("relation " + std::to_string(i + 1), [&] {
                const std::string what = "relation " + std::to_string(i + 1);
                if (i >= res.rows.size()) return check(false, what, "not computed");
                const RPoly ours = relation_poly(res.rows[i], g);
                check(proportional(parse_poly(rec.relations[i], fn), ours), what, "computed " + ours.to_string(fn));
            });
    if (!rec.Delta.empty() || !rec.U.empty()) {
        const std::vector<std::string> f12 = {"F1", "F2"};
        if (!res.H)
            check(false, "Delta", "not computed");
        else
            guarded("Delta/U", [&] {
                const RPoly delta = parse_poly(rec.Delta, f12);
                check(proportional(delta, res.H->delta), "Delta", "computed " + res.H->delta.to_string(xy_names()));
                for (const auto& [k, u] : rec.U) {
                    const std::string what = "U" + std::to_string(k);
                    if (k < 3 || k - 3 >= static_cast<int>(res.H->numerators.size())) {
                        check(false, what, "no such numerator");
                        continue;
                    }
                    const RPoly lhs = parse_poly(u, f12) * res.H->delta;
                    const RPoly rhs = res.H->numerators[k - 3] * delta;
                    check(lhs == rhs, what, "U/Delta differs");
                }
            });
    }
    if (!rec.killer_denominator.empty()) {
        if (!res.J)
            check(false, "killer denominator", "not computed");
        else
            guarded("killer denominator", [&] {
                const RPoly want = rename(parse_poly(rec.killer_denominator, fn), g + 1);
                check(want == res.J->denominator, "killer denominator",
                      "computed " + res.J->denominator.to_string(fn));
            });
    }
    if (!rec.C.empty() && res.J) {
        const int last = g + 1;
        for (const auto& [k, text] : rec.C)
            guarded("C" + std::to_string(k), [&] {
                RPoly ours(last);
                for (const auto& [e, c] : res.J->P_N.terms())
                    if (e[last - 1] == k) {
                        Exponent f = e;
                        f[last - 1] = 0;
                        ours.add_term(f, c);
                    }
                check(ours == parse_poly(text, fn), "C" + std::to_string(k), "computed " + ours.to_string(fn));
            });
    }
    return d;
}

// ---- JSON ----

GeneratorSystem load_generator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open generator file " + path);
    json j;
    try {
        j = json::parse(in);
        GeneratorSystem sys;
        sys.N = j.at("N");
        sys.g = j.at("g");
        sys.provenance = "file";
        for (const auto& f : j.at("functions")) sys.funcs.push_back(ModFuncExpr::parse(sys.N, f.get<std::string>()));
        return sys;
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string generator_json(const GeneratorSystem& sys) {
    json j;
    j["N"] = sys.N;
    j["g"] = sys.g;
    j["functions"] = json::array();
    for (const auto& f : sys.funcs) j["functions"].push_back(f.to_string());
    return j.dump();
}

void save_generator_file(const GeneratorSystem& sys, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << generator_json(sys) << "\n";
}

std::string series_json(const CSeries& s, int N, int D) {
    json j;
    j["var"] = "q_" + std::to_string(D);
    j["N"] = N;
    j["D"] = D;
    j["val"] = s.is_zero() ? s.precision() : s.valuation();
    j["prec"] = s.precision();
    j["coeffs"] = json::array();
    if (!s.is_zero())
        for (int k = s.valuation(); k < s.precision(); ++k) j["coeffs"].push_back(s.coeff(k).to_string());
    return j.dump();
}

std::string cusps_json(int N) {
    json j = json::array();
    for (const auto& q : cusps_gamma0(N)) j.push_back({{"u", q.u}, {"D", q.D}, {"width", q.width}, {"d", q.d}});
    return j.dump();
}

namespace {

// Writes den as a product of the killer factors when they divide it exactly.
// Factors with irrational coefficients (conjugate cusps) are grouped.
std::string factored_den(const UPoly& den, const JRepresentation& J) {
    std::vector<UPoly> candidates;
    CPoly irrational = CPoly::constant(J.g + 1, CycNum(J.N, 1), J.N);
    bool any_irrational = false;
    for (const auto& f : J.factors) {
        bool rational = true;
        for (const auto& [e, c] : f.G.terms())
            if (!c.is_rational()) rational = false;
        if (rational) {
            candidates.push_back(to_upoly(to_rational_poly(f.G), 0));
        } else {
            irrational *= f.G;
            any_irrational = true;
        }
    }
    if (any_irrational) {
        try {
            candidates.push_back(to_upoly(to_rational_poly(irrational), 0));
        } catch (const std::exception&) {
            return upoly_to_string(den);
        }
    }
    for (const auto& f : J.factors)
        for (const auto& [e, c] : f.G.terms())
            for (std::size_t i = 1; i < e.size(); ++i)
                if (e[i] != 0) return upoly_to_string(den);

    std::vector<std::pair<UPoly, int>> parts;
    UPoly rest = den;
    for (UPoly u : candidates) {
        upoly_trim(u);
        if (u.size() < 2) continue;
        const Rational lc = u.back();
        for (auto& c : u) c /= lc;
        int m = 0;
        while (true) {
            UPoly rem;
            UPoly q = upoly_divmod(rest, u, rem);
            upoly_trim(rem);
            if (!rem.empty()) break;
            rest = q;
            ++m;
        }
        if (m > 0) parts.emplace_back(u, m);
    }
    upoly_trim(rest);
    if (rest.size() != 1 || rest[0] != 1) return upoly_to_string(den);
    std::string out;
    for (const auto& [u, m] : parts) {
        const std::string t = upoly_to_string(u);
        out += (out.empty() ? "" : "*") + (u.size() == 2 && sgn(u[0]) == 0 ? t : "(" + t + ")");
        if (m > 1) out += "^" + std::to_string(m);
    }
    return out.empty() ? "1" : out;
}

}  // namespace

std::string jrep_json(const PipelineResult& r) {
    if (!r.J) throw std::logic_error("jrep_json: J not computed");
    const auto names = output_names(r.g + 1);
    json j;
    j["N"] = r.N;
    j["g"] = r.g;
    j["killers"] = json::array();
    for (const auto& k : r.J->killers)
        j["killers"].push_back({{"cusp", {{"u", k.cusp.u}, {"D", k.cusp.D}}},
                                {"G", k.G.to_string(names)},
                                {"m", k.m}});
    j["denominator"] = r.J->denominator.to_string(names);
    j["P_N"] = r.J->P_N.to_string(names);
    if (r.J->collapsed) {
        json num = json::array();
        for (const auto& c : r.J->collapsed->num) num.push_back(upoly_to_string(c));
        j["R_N"] = {{"num", num}, {"den", factored_den(r.J->collapsed->den, *r.J)}};
    }
    return j.dump();
}

}  // namespace x0n
