#ifndef X0N_SEARCH_HPP
#define X0N_SEARCH_HPP

#include "x0n/expr.hpp"
#include "x0n/modcurve.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace x0n {

class SearchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SearchBounds {
    int max_entry = 0;       // vector entries 1..max_entry (0: N/2)
    int max_terms = 2;       // 1: single traces only; 2: also products W_a W_b
    int slack = -1;          // extra pole order allowed at P beyond 2g+1 (-1: 2g)
    int max_candidates = 4000;
};

/// Parses "entry=7,terms=2,slack=3,candidates=500" (any subset, any order).
SearchBounds parse_bounds(const std::string& text);
std::string to_string(const SearchBounds& b);

struct Candidate {
    ModFuncExpr f;
    int bound_p = 0;    // lower bound of the order at <1/1>
    bool regular = false;  // bounds alone show no pole away from <1/1>
};

/// T(W_a) with a = [x,k,y,k] and T(W_a W_b) with b = [y',1,x',1], filtered by
/// the order bounds: pole at <1/1> between g+1 and 2g+1+slack, and at most a
/// simple pole (in the local parameter) elsewhere. Deduplicated under lambda.
std::vector<Candidate> candidate_pool(int N, const SearchBounds& bounds);

struct GeneratorSystem {
    int N = 0;
    int g = 0;
    std::vector<ModFuncExpr> funcs;
    std::string provenance;  // "searched", "completed", "file", "table", "table+search"
};

/// Picks F_1..F_{g+1} by exact elimination over the pool. Functions in `fixed`
/// (already valid F_1..F_k) are kept verbatim and the rest are searched.
GeneratorSystem assemble_generators(int N, const std::vector<Candidate>& pool,
                                    const std::vector<ModFuncExpr>& fixed = {});

GeneratorSystem search_generators(int N, const SearchBounds& bounds = {},
                                  const std::vector<ModFuncExpr>& fixed = {});

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> issues;
    void flag(std::string s) {
        ok = false;
        issues.push_back(std::move(s));
    }
};

/// Level, count, pole orders g+i with leading coefficient 1 at <1/1>, and
/// regularity at every other cusp, all on exact expansions.
VerifyReport verify_system(const GeneratorSystem& sys);

}  // namespace x0n

#endif  // X0N_SEARCH_HPP
