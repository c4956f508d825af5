#ifndef X0N_JREP_HPP
#define X0N_JREP_HPP

#include "x0n/expr.hpp"
#include "x0n/modcurve.hpp"
#include "x0n/poly.hpp"
#include "x0n/relations.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace x0n {

class JRepError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// FirstGenerator: G = F1 - F1(Q). MaxOrder: the affine form in 1, F1..F_{g+1}
/// with the largest zero order at Q (F1 - F1(Q) preferred on ties).
enum class KillerPolicy { FirstGenerator, MaxOrder };

struct CuspKiller {
    CuspClass cusp;
    CPoly G;  // affine in F1..F_{g+1}
    int zero_order = 0;
    int pole_j = 0;
    int m = 0;
};

/// Killers with identical G merged (exponent = max over their cusps).
struct KillerFactor {
    CPoly G;
    int m = 0;
    std::vector<CuspClass> cusps;
};

/// J = (sum_k num[k](X) Y^k) / den(X) with Y-degree <= g (no Y for g = 0).
struct CollapsedJ {
    std::vector<UPoly> num;
    UPoly den;
};

struct JOptions {
    KillerPolicy policy = KillerPolicy::FirstGenerator;
    int guard = kDefaultGuard;
    bool collapse = false;
};

struct JRepresentation {
    int N = 0;
    int g = 0;
    std::vector<CuspKiller> killers;
    std::vector<KillerFactor> factors;
    RPoly denominator;  // prod G^m over F1..F_{g+1}
    RPoly P_N;          // J * denominator as a polynomial in F1..F_{g+1}
    std::optional<CollapsedJ> collapsed;
};

CuspKiller find_cusp_killer(const std::vector<ModFuncExpr>& F, const CuspClass& Q, KillerPolicy policy);

/// `model` and `H` (g >= 2) are needed only for the collapsed form.
JRepresentation represent_J(const std::vector<ModFuncExpr>& F, const JOptions& opt,
                            const std::optional<BivarPoly>& model = std::nullopt,
                            const std::optional<RationalRep>& H = std::nullopt);

/// Reduces the Y-degree below that of the model (Y^{g+1} has constant coefficient).
RPoly reduce_mod_model(const RPoly& p, const BivarPoly& model);

/// Collapses P_N / denominator to (sum C_k(X) Y^k) / D(X).
CollapsedJ collapse(const RPoly& P_N, const RPoly& denominator, int g, const std::optional<BivarPoly>& model,
                    const std::optional<RationalRep>& H);

/// Text of a univariate polynomial in X.
std::string upoly_to_string(const UPoly& u, const std::string& var = "X");

/// Value of J at an affine point of the plane model, or a cusp marker when J
/// has a pole there. For g = 0 only x is used.
struct JValue {
    bool cusp = false;
    Rational value;
};
JValue evaluate_j(const JRepresentation& rep, const std::optional<BivarPoly>& model,
                  const std::optional<RationalRep>& H, const Rational& x, const Rational& y);

}  // namespace x0n

#endif  // X0N_JREP_HPP
