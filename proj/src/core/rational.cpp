#include "permlab/rational.hpp"

#include <cmath>

#include "permlab/errors.hpp"

namespace permlab {

namespace {

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view token) {
  const auto slash = token.find('/');
  std::string_view num = token.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : token.substr(slash + 1);
  if (!is_integer_token(num) || (slash != std::string_view::npos && !is_integer_token(den)) ||
      (!den.empty() && (den[0] == '-' || den[0] == '+')))
    fail(ErrorKind::Parse, "malformed rational token '" + std::string(token) + "'");

  // mpz rejects a leading '+'
  auto strip = [](std::string_view s) { return std::string(s[0] == '+' ? s.substr(1) : s); };
  Integer p(strip(num), 10);
  Integer q = den.empty() ? Integer(1) : Integer(strip(den), 10);
  if (q == 0) fail(ErrorKind::Parse, "zero denominator in '" + std::string(token) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational pow2(long k) {
  Integer p(1);
  p <<= static_cast<mp_bitcnt_t>(k);
  return Rational(p);
}

Rational rationalize(double x, unsigned bits) {
  require(std::isfinite(x), ErrorKind::Precondition, "cannot rationalize a non-finite value");
  const double scaled = std::floor(std::ldexp(x, static_cast<int>(bits)) + 0.5);
  Integer den(1);
  den <<= bits;
  Rational r(Integer(scaled), den);
  r.canonicalize();
  return r;
}

}  // namespace permlab
