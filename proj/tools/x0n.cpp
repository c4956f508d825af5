#include "x0n/pipeline.hpp"
#include "x0n/weier.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

using namespace x0n;

namespace {

std::vector<long> split_ints(const std::string& s, std::size_t n, const char* what) {
    std::vector<long> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            v.push_back(std::stol(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
        }
    }
    if (v.size() != n) throw std::invalid_argument(std::string(what) + " needs " + std::to_string(n) + " integers");
    return v;
}

std::pair<Rational, Rational> split_point(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("point must be x,y");
    return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
}

struct Common {
    int N = 0;
    int guard = kDefaultGuard;
    std::string generators;
    std::string bounds;
    std::string data;
    bool paper = false;
    bool literal = false;
    bool max_order = false;

    void attach(CLI::App* c, bool gens = true) {
        c->add_option("N", N, "level")->required();
        c->add_option("--guard", guard, "precision guard (>= 10)");
        c->add_option("--data", data, "directory of table records");
        if (!gens) return;
        c->add_option("--generators", generators, "generator file (JSON)");
        c->add_option("--bounds", bounds, "search bounds, e.g. entry=7,terms=2,slack=3,candidates=500");
        c->add_flag("--use-paper-generators,--paper", paper, "use the table generators for N");
        c->add_flag("--literal", literal, "keep table generators exactly as printed (no sign normalization)");
        c->add_flag("--max-order", max_order, "cusp killers of maximal zero order");
    }
    PipelineConfig config() const {
        PipelineConfig cfg;
        cfg.N = N;
        cfg.precision_guard = guard;
        cfg.generators_file = generators;
        cfg.use_paper_generators = paper;
        cfg.normalize_paper_signs = !literal;
        cfg.data_dir = data;
        if (!bounds.empty()) cfg.bounds = parse_bounds(bounds);
        if (max_order) cfg.policy = KillerPolicy::MaxOrder;
        return cfg;
    }
};

void print_notes(const PipelineResult& r) {
    for (const auto& n : r.notes) std::cerr << "note: " << n << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Modular curves X0(N): expansions, generators, plane models and j"};
    app.require_subcommand(1);

    Common genus_o, cusps_o, order_o, expand_o, gen_o, eq_o, jrep_o, eval_o, verify_o;

    auto* genus = app.add_subcommand("genus", "genus of X0(N)");
    genus_o.attach(genus, false);

    auto* cusps = app.add_subcommand("cusps", "cusps of Gamma0(N)");
    cusps_o.attach(cusps, false);
    bool cusps_json_flag = false;
    cusps->add_flag("--json", cusps_json_flag, "JSON output");

    auto* order = app.add_subcommand("order", "order of W_a at the Gamma1 cusp (u:t), in q_D units");
    order_o.attach(order, false);
    std::string vec, order_cusp;
    order->add_option("--vec", vec, "a1,a2,a3,a4")->required();
    order->add_option("--cusp", order_cusp, "u,t")->required();

    auto* expandc = app.add_subcommand("expand", "expansion of an expression at the cusp <u/D>");
    expand_o.attach(expandc, false);
    std::string expr, exp_cusp = "1,1";
    int prec = 40;
    expandc->add_option("--expr", expr, "expression, e.g. \"T[5,1,2,1]\"")->required();
    expandc->add_option("--cusp", exp_cusp, "u,D (default 1,1)");
    expandc->add_option("--prec", prec, "exponent bound in the local parameter");

    auto* gens = app.add_subcommand("generators", "find F1..F_{g+1}");
    gen_o.attach(gens);
    std::string save;
    gens->add_option("--save", save, "write the generator file");

    auto* equation = app.add_subcommand("equation", "plane model F_N(X,Y)");
    eq_o.attach(equation);

    auto* jrep = app.add_subcommand("jrep", "representation of J");
    jrep_o.attach(jrep);
    bool collapse_flag = false;
    jrep->add_flag("--collapse", collapse_flag, "also emit R_N(X,Y) for g >= 3");

    auto* eval = app.add_subcommand("eval", "j at a point of the plane model");
    eval_o.attach(eval);
    std::string point;
    eval->add_option("--point", point, "x,y (x only for genus 0)")->required();

    auto* verify = app.add_subcommand("verify", "compare against the table record for N");
    verify_o.attach(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*genus) {
            require_supported_level(genus_o.N);
            std::cout << genus0(genus_o.N) << "\n";
        } else if (*cusps) {
            require_supported_level(cusps_o.N);
            if (cusps_json_flag) {
                std::cout << cusps_json(cusps_o.N) << "\n";
            } else {
                for (const auto& q : cusps_gamma0(cusps_o.N))
                    std::cout << q.to_string() << "  width " << q.width << "  j pole " << j_pole_order(q, cusps_o.N)
                              << "\n";
            }
        } else if (*order) {
            const int N = order_o.N;
            require_supported_level(N);
            const auto v = split_ints(vec, 4, "vector");
            const auto c = split_ints(order_cusp, 2, "cusp");
            const WVector a(N, {v[0], v[1], v[2], v[3]});
            std::cout << w_order_at_t(a, static_cast<int>(mod(c[1], N))) << "\n";
        } else if (*expandc) {
            const int N = expand_o.N;
            require_supported_level(N);
            const auto c = split_ints(exp_cusp, 2, "cusp");
            const CuspClass q = make_cusp_class(static_cast<int>(c[0]), static_cast<int>(c[1]), N);
            const CSeries s = expand(ModFuncExpr::parse(N, expr), q, prec);
            std::cout << series_json(s, N, q.D) << "\n";
        } else if (*gens) {
            auto cfg = gen_o.config();
            const auto r = run(cfg, Stage::Generators);
            print_notes(r);
            if (!save.empty()) save_generator_file(r.gens, save);
            std::cout << generator_json(r.gens) << "\n";
        } else if (*equation) {
            const auto r = run(eq_o.config(), Stage::Equation);
            print_notes(r);
            if (!r.equation) {
                std::cout << "genus 0: X0(" << r.N << ") is rational, generator " << r.gens.funcs[0].to_string() << "\n";
            } else {
                std::cout << r.equation->to_string(xy_names()) << "\n";
            }
        } else if (*jrep) {
            auto cfg = jrep_o.config();
            cfg.emit_collapsed_RN = collapse_flag;
            const auto r = run(cfg);
            print_notes(r);
            std::cout << jrep_json(r) << "\n";
        } else if (*eval) {
            const auto r = run(eval_o.config());
            print_notes(r);
            Rational x, y;
            if (r.g == 0 && point.find(',') == std::string::npos)
                x = parse_rational(point);
            else
                std::tie(x, y) = split_point(point);
            const JValue v = evaluate_j(*r.J, r.equation, r.H, x, y);
            std::cout << (v.cusp ? std::string("cusp") : to_string(v.value)) << "\n";
        } else if (*verify) {
            auto cfg = verify_o.config();
            cfg.use_paper_generators = cfg.generators_file.empty();
            const PaperRecord rec = load_paper_record(cfg.N, cfg.data_dir);
            PipelineResult r;
            try {
                r = run(cfg);
            } catch (const PipelineError& e) {
                std::cout << "DIFF pipeline " << e.what() << "\n";
                return 2;
            }
            for (const auto& n : r.notes) std::cout << "note " << n << "\n";
            const DiffReport d = verify_against_paper(r, rec);
            for (const auto& m : d.matched) std::cout << "ok   " << m << "\n";
            for (const auto& m : d.diffs) std::cout << "DIFF " << m << "\n";
            return d.ok() ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
