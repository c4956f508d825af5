#ifndef X0N_RATIONAL_HPP
#define X0N_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace x0n {

// GMP rationals canonicalize after every arithmetic operation, so a
// Rational is always stored with gcd(num, den) = 1 and den > 0.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "a", "-a", "a/b". Throws std::invalid_argument on junk or b = 0.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

/// Least positive common multiple of the denominators seen so far.
class DenominatorLcm {
public:
    void add(const Rational& x) { mpz_lcm(lcm_.get_mpz_t(), lcm_.get_mpz_t(), x.get_den_mpz_t()); }
    const Integer& value() const { return lcm_; }

private:
    Integer lcm_ = 1;
};

}  // namespace x0n

#endif  // X0N_RATIONAL_HPP
