#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace permlab {

/// Exact rational scalar. Always kept in canonical (reduced) form.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "-p/q" or an integer token. Rejects zero denominators,
/// decimals and stray characters.
Rational parse_rational(std::string_view token);

/// "p/q", or "p" when the value is an integer.
std::string to_string(const Rational& q);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

/// 2^k for k >= 0.
Rational pow2(long k);

/// p/q in canonical form. Prefer this to the two-argument mpq_class
/// constructor, which leaves the fraction unreduced.
inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

/// Nearest multiple of 2^-bits (ties toward +inf).
Rational rationalize(double x, unsigned bits);

}  // namespace permlab
