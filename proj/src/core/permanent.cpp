#include "permlab/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "permlab/errors.hpp"

namespace permlab {

namespace {

void guard(std::size_t n, std::size_t limit, const char* what) {
  require(n <= limit, ErrorKind::Guard,
          std::string(what) + " refuses order " + std::to_string(n) + " (limit " + std::to_string(limit) + ")");
}

/// Common denominator D and the integer matrix D*A.
struct Scaled {
  Integer denom;
  std::vector<Integer> b;
};

Scaled clear_denominators(const Matrix& a) {
  Scaled s{Integer(1), {}};
  for (const auto& x : a.entries()) mpz_lcm(s.denom.get_mpz_t(), s.denom.get_mpz_t(), x.get_den_mpz_t());
  s.b.reserve(a.entries().size());
  for (const auto& x : a.entries()) s.b.push_back(x.get_num() * (s.denom / x.get_den()));
  return s;
}

Rational pow_denom(const Integer& d, std::size_t n) {
  Integer p;
  mpz_pow_ui(p.get_mpz_t(), d.get_mpz_t(), n);
  return Rational(p);
}

}  // namespace

Rational permanent_naive(const Matrix& a, const EngineLimits& limits) {
  const std::size_t n = a.order();
  guard(n, limits.naive_max, "permanent_naive");
  std::vector<std::size_t> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  Rational total = 0, term;
  do {
    term = 1;
    for (std::size_t i = 0; i < n && sgn(term) != 0; ++i) term *= a(i, pi[i]);
    total += term;
  } while (std::next_permutation(pi.begin(), pi.end()));
  return total;
}

RyserTrace permanent_ryser(const Matrix& a, const EngineLimits& limits) {
  const std::size_t n = a.order();
  guard(n, limits.exact_max, "permanent_ryser");
  const Scaled s = clear_denominators(a);

  // Row sums of B(J) for the current zeroed-column set J, starting from J = {}.
  std::vector<Integer> r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i] += s.b[i * n + j];

  std::vector<Integer> level(n);
  Integer prod;
  std::uint64_t gray = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t k = 0; k < count; ++k) {
    if (k > 0) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(k));
      gray ^= std::uint64_t{1} << bit;
      const bool zeroed = (gray >> bit) & 1U;
      for (std::size_t i = 0; i < n; ++i) {
        if (zeroed)
          r[i] -= s.b[i * n + bit];
        else
          r[i] += s.b[i * n + bit];
      }
    }
    const auto m = static_cast<std::size_t>(std::popcount(gray));
    if (m == n) continue;  // every row sum is zero
    prod = 1;
    for (std::size_t i = 0; i < n && prod != 0; ++i) prod *= r[i];
    level[m] += prod;
  }

  RyserTrace t;
  t.per_level_sums.resize(n);
  const Rational scale = pow_denom(s.denom, n);
  t.total = 0;
  for (std::size_t m = 0; m < n; ++m) {
    Rational v(m % 2 ? Integer(-level[m]) : level[m]);
    v /= scale;
    t.per_level_sums[m] = v;
    t.total += v;
  }
  return t;
}

Rational permanent(const Matrix& a, const EngineLimits& limits) { return permanent_ryser(a, limits).total; }

Rational per_i_minus(const Matrix& a, const EngineLimits& limits) { return permanent(i_minus(a), limits); }

double permanent_gray(const RealMatrix& a, const EngineLimits& limits) {
  const std::size_t n = a.n;
  require(n >= 1 && a.a.size() == n * n, ErrorKind::Dimension, "permanent_gray needs a square matrix");
  guard(n, limits.float_max, "permanent_gray");
  for (double x : a.a) require(std::isfinite(x), ErrorKind::Precondition, "permanent_gray: non-finite entry");

  // Centred row sums: x_i = a_{i,n-1} - (1/2) sum_j a_ij. The last column is
  // never toggled; the walk covers subsets of the first n-1 columns.
  std::vector<long double> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    long double sum = 0;
    for (std::size_t j = 0; j < n; ++j) sum += a(i, j);
    row[i] = a(i, n - 1) - sum / 2;
  }
  auto product = [&] {
    long double p = 1;
    for (long double v : row) p *= v;
    return p;
  };

  long double total = product();
  int sign = 1;
  std::uint64_t gray = 0;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t k = 1; k < count; ++k) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(k));
    gray ^= std::uint64_t{1} << bit;
    const long double dir = ((gray >> bit) & 1U) ? 1.0L : -1.0L;
    for (std::size_t i = 0; i < n; ++i) row[i] += dir * a(i, bit);
    sign = -sign;
    total += sign * product();
  }
  const long double per = 2 * total * ((n - 1) % 2 ? -1 : 1);
  return static_cast<double>(per);
}

Rational determinant(const Matrix& a) {
  const std::size_t n = a.order();
  Scaled s = clear_denominators(a);
  auto& m = s.b;
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return m[i * n + j]; };

  int sign = 1;
  Integer prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return Rational(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  Rational det(at(n - 1, n - 1));
  if (sign < 0) det = -det;
  return det / pow_denom(s.denom, n);
}

bool SignStructureReport::all_ok() const {
  auto ok = [](bool b) { return b; };
  return std::all_of(row_sum_nonneg.begin(), row_sum_nonneg.end(), ok) &&
         std::all_of(level_sign_ok.begin(), level_sign_ok.end(), ok) &&
         std::all_of(replaced_row_nonpos.begin(), replaced_row_nonpos.end(),
                     [](const ReplacedRowCheck& c) { return c.nonpositive; });
}

SignStructureReport check_sign_structure(const Matrix& a, std::size_t subset_samples) {
  require(is_doubly_substochastic(a), ErrorKind::Precondition,
          "check_sign_structure requires a doubly substochastic matrix");
  const std::size_t n = a.order();
  require(n <= 63, ErrorKind::Guard, "check_sign_structure supports n <= 63");
  // Scaling by the positive common denominator preserves every sign.
  const Scaled s = clear_denominators(i_minus(a));

  SignStructureReport rep;
  rep.level_sign_ok.assign(n, true);
  std::vector<Integer> full(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) full[i] += s.b[i * n + j];
    rep.row_sum_nonneg.push_back(sgn(full[i]) >= 0);
  }

  std::vector<Integer> r(n);
  auto examine = [&](std::uint64_t cols) {
    const auto m = static_cast<std::size_t>(std::popcount(cols));
    if (m >= n) return;
    int prod_sign = 1;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = full[i];
      for (std::size_t j = 0; j < n; ++j)
        if ((cols >> j) & 1U) r[i] -= s.b[i * n + j];
      if ((cols >> i) & 1U) rep.replaced_row_nonpos.push_back({cols, i, sgn(r[i]) <= 0});
      prod_sign *= sgn(r[i]);
    }
    const bool ok = prod_sign == 0 || prod_sign == (m % 2 ? -1 : 1);
    rep.level_sign_ok[m] = rep.level_sign_ok[m] && ok;
    ++rep.subsets_checked;
  };

  if (n <= 16) {
    rep.exhaustive = true;
    for (std::uint64_t cols = 0; cols < (std::uint64_t{1} << n); ++cols) examine(cols);
  } else {
    std::mt19937_64 rng(kSignStructureSeed);
    const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    examine(0);
    for (std::size_t k = 0; k < subset_samples; ++k) examine(rng() & mask);
  }
  return rep;
}

}  // namespace permlab
