#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace siegel {

using Int = mpz_class;
using Rat = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws
/// std::invalid_argument on malformed text or a zero denominator.
Rat parse_rational(std::string_view text);

/// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rat& value);
std::string to_string(const Int& value);

Int floor_of(const Rat& value);
Int ceil_of(const Rat& value);

/// floor(sqrt(x)) for x >= 0.
Int floor_sqrt(const Rat& x);

Int lcm_of(const Int& a, const Int& b);
Int binomial(unsigned long n, unsigned long k);

inline Int abs_of(const Int& a) { return a < 0 ? Int(-a) : a; }
inline Rat abs_of(const Rat& a) { return a < 0 ? Rat(-a) : a; }

/// Integer power of a rational, negative exponents allowed for nonzero bases.
Rat pow_of(const Rat& base, long exponent);

/// All k-subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets_lex(std::size_t n, std::size_t k);

}  // namespace siegel
