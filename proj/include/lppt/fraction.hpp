#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace lppt {

// Exact rational scalar used everywhere; no floating point touches a result.
// mpq_class keeps values canonical (positive denominator, reduced), which is
// the Fraction contract.
using Fraction = mpq_class;

Fraction frac(long num, long den = 1);

inline int sign_of(const Fraction& f) { return mpq_sgn(f.get_mpq_t()); }
inline bool is_zero(const Fraction& f) { return sign_of(f) == 0; }

// Lowest-terms "p/q", or "p" when the denominator is 1.
std::string to_string(const Fraction& f);
Fraction parse_fraction(const std::string& text);

// Best rational with denominator <= max_den near x (continued fractions).
// Lifts floating simplex output back into exact arithmetic; callers must
// re-verify the result exactly.
Fraction rationalize(double x, std::uint64_t max_den);

}  // namespace lppt
