#ifndef X0N_WEIER_HPP
#define X0N_WEIER_HPP

#include "x0n/expr.hpp"
#include "x0n/modcurve.hpp"
#include "x0n/series.hpp"

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>

namespace x0n {

/// wp(r/N) - wp(s/N) (normalised, constant factor dropped) at the cusp <u/D>,
/// as a power series in q_D = exp(2 pi i tau D / N) with precision `prec`.
template <class R>
LaurentSeries<R> wp_diff(long r, long s, const CuspClass& q, int N, int prec);

/// W_a = (wp_{a1} - wp_{a2}) / (wp_{a3} - wp_{a4}) at <u/D>, in q_D, exactly to `prec`.
template <class R>
LaurentSeries<R> w_expansion(const WVector& a, const CuspClass& q, int prec);

/// T(W_a W_b) = sum_lambda W_{lambda a} W_{lambda b} at <u/D>, in q_D, exactly to `prec`.
template <class R>
LaurentSeries<R> trace_term_expansion(const WVector& a, const std::optional<WVector>& b, const CuspClass& q,
                                      int prec);

/// Expansion of Gamma_0(N) functions at cusps, with a cache of the W and
/// trace pieces at the highest precision requested so far.
class ExpansionEngine {
public:
    /// Expansion in the local parameter q_D^width with precision `local_prec`.
    CSeries expand(const ModFuncExpr& f, const CuspClass& q, int local_prec);
    /// Same, with rational coefficients; throws CyclotomicError if some
    /// coefficient is irrational. Computed over Q directly at D = 1.
    QSeries expand_rational(const ModFuncExpr& f, const CuspClass& q, int local_prec);

    void clear();

private:
    using Key = std::tuple<int, std::array<int, 4>, std::array<int, 4>, int, int>;
    static Key key(const WVector& a, const std::optional<WVector>& b, const CuspClass& q);

    template <class R>
    LaurentSeries<R> term(const TraceTerm& t, const CuspClass& q, int prec);
    template <class R>
    LaurentSeries<R> combine(const ModFuncExpr& f, const CuspClass& q, int local_prec);

    std::mutex mu_;
    std::map<Key, QSeries> qcache_;
    std::map<Key, CSeries> ccache_;
};

/// Process-wide engine used by the free functions below.
ExpansionEngine& default_engine();

inline CSeries expand(const ModFuncExpr& f, const CuspClass& q, int local_prec) {
    return default_engine().expand(f, q, local_prec);
}
inline QSeries expand_rational(const ModFuncExpr& f, const CuspClass& q, int local_prec) {
    return default_engine().expand_rational(f, q, local_prec);
}

/// j(q) = E4^3 / Delta = q^-1 + 744 + 196884 q + ..., exponents below `prec`.
QSeries j_series(int prec);

/// j at <u/D> in the local parameter q_D^width, exponents below `local_prec`.
QSeries j_at_cusp(const CuspClass& q, int N, int local_prec);

}  // namespace x0n

#endif  // X0N_WEIER_HPP
