#ifndef X0N_CHECKS_J_ORACLE_HPP
#define X0N_CHECKS_J_ORACLE_HPP

#include "x0n/rational.hpp"

#include <vector>

namespace x0n::checks {

// j = E4^3 / (q prod (1-q^n)^24), E4 from direct divisor sums, no series code.
// Entry k is the coefficient of q^(k-1).
inline std::vector<Integer> naive_j(int count) {
    const int n = count + 1;
    std::vector<Integer> e4(n, 0), prod(n, 0);
    e4[0] = 1;
    for (int k = 1; k < n; ++k) {
        Integer s = 0;
        for (int d = 1; d <= k; ++d)
            if (k % d == 0) s += Integer(d) * d * d;
        e4[k] = 240 * s;
    }
    prod[0] = 1;
    for (int m = 1; m < n; ++m)
        for (int r = 0; r < 24; ++r)
            for (int k = n - 1; k >= m; --k) prod[k] -= prod[k - m];
    std::vector<Integer> e12(n, 0), tmp(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) tmp[i + j] += e4[i] * e4[j];
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) e12[i + j] += tmp[i] * e4[j];
    std::vector<Integer> out(n, 0);
    for (int k = 0; k < n; ++k) {
        Integer s = e12[k];
        for (int i = 1; i <= k; ++i) s -= prod[i] * out[k - i];
        out[k] = s;
    }
    out.resize(count);
    return out;
}

// Fixture: q^-1 .. q^8 of j, from tables of the modular invariant.
inline const std::vector<const char*>& j_fixture() {
    static const std::vector<const char*> v = {"1",
                                               "744",
                                               "196884",
                                               "21493760",
                                               "864299970",
                                               "20245856256",
                                               "333202640600",
                                               "4252023300096",
                                               "44656994071935",
                                               "401490886656000"};
    return v;
}

}  // namespace x0n::checks

#endif  // X0N_CHECKS_J_ORACLE_HPP
