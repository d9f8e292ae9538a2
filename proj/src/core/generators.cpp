#include "permlab/generators.hpp"

#include <algorithm>
#include <numeric>

#include "permlab/errors.hpp"

namespace permlab::gen {

namespace {

std::uint64_t below(Rng& rng, std::uint64_t bound) { return rng() % bound; }

Matrix zero_diag(const Matrix& a) {
  std::vector<Rational> e(a.entries().begin(), a.entries().end());
  for (std::size_t i = 0; i < a.order(); ++i) e[i * a.order() + i] = 0;
  return Matrix(a.order(), std::move(e));
}

Matrix permutation_matrix(const std::vector<std::size_t>& p) {
  std::vector<Rational> e(p.size() * p.size());
  for (std::size_t i = 0; i < p.size(); ++i) e[i * p.size() + p[i]] = 1;
  return Matrix(p.size(), std::move(e));
}

Rational max_line_sum(const Matrix& a) {
  Rational m = 0;
  for (const auto& r : row_sums(a)) m = std::max(m, r);
  for (const auto& c : col_sums(a)) m = std::max(m, c);
  return m;
}

// Mixes `base` (sigma below s) with `top` (sigma above s) so the result has sigma exactly s.
Matrix mix_to(const Matrix& base, const Matrix& top, const Rational& s) {
  const Rational lo = sigma(base), hi = sigma(top);
  if (lo == hi) return base;
  const Rational t = (s - lo) / (hi - lo);
  return (1 - t) * base + t * top;
}

}  // namespace

Rational grid_value(Rng& rng, long denom, long lo, long hi) {
  const long span = (hi - lo) * denom;
  return ratio(static_cast<long>(below(rng, static_cast<std::uint64_t>(span) + 1)) + lo * denom, denom);
}

Matrix nonnegative(Rng& rng, std::size_t n, long denom, long max_entry) {
  std::vector<Rational> e(n * n);
  for (auto& x : e) x = grid_value(rng, denom, 0, max_entry);
  return Matrix(n, std::move(e));
}

Matrix row_substochastic(Rng& rng, std::size_t n, bool zero_diagonal, long denom) {
  Matrix w = nonnegative(rng, n, denom);
  if (zero_diagonal) w = zero_diag(w);
  std::vector<Rational> e(w.entries().begin(), w.entries().end());
  for (std::size_t i = 0; i < n; ++i) {
    Rational total = 0;
    for (std::size_t j = 0; j < n; ++j) total += w(i, j);
    if (total == 0) continue;
    const Rational target = grid_value(rng, denom);
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = w(i, j) * target / total;
  }
  return Matrix(n, std::move(e));
}

Matrix omega(Rng& rng, std::size_t n, bool zero_diagonal, long denom) {
  Matrix b = nonnegative(rng, n, denom);
  if (zero_diagonal) b = zero_diag(b);
  const Rational m = max_line_sum(b);
  if (m == 0) return b;
  // A random shrink keeps samples away from the boundary some of the time.
  const Rational shrink = ratio(static_cast<long>(below(rng, 4)) + 1, 4);
  return (shrink / m) * b;
}

std::vector<std::size_t> permutation(Rng& rng, std::size_t n, bool derangement) {
  require(!derangement || n >= 2, ErrorKind::Precondition, "no derangement of order 1");
  std::vector<std::size_t> p(n);
  for (;;) {
    std::iota(p.begin(), p.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[below(rng, i)]);
    bool ok = true;
    for (std::size_t i = 0; derangement && i < n; ++i) ok = ok && p[i] != i;
    if (ok) return p;
  }
}

Matrix birkhoff(Rng& rng, std::size_t n, bool zero_diagonal) {
  const std::size_t k = 1 + below(rng, n);
  std::vector<long> w(k);
  long total = 0;
  for (auto& x : w) total += (x = static_cast<long>(below(rng, 8)) + 1);
  Matrix out(n);
  for (std::size_t t = 0; t < k; ++t)
    out = out + ratio(w[t], total) * permutation_matrix(permutation(rng, n, zero_diagonal));
  return out;
}

Matrix omega_s(Rng& rng, std::size_t n, const Rational& s, bool zero_diagonal) {
  require(s >= 0 && s <= static_cast<long>(n), ErrorKind::Precondition, "omega_s: need 0 <= s <= n");
  require(!zero_diagonal || n >= 2 || s == 0, ErrorKind::Precondition, "omega_s: zero diagonal forces sigma 0 at n = 1");
  if (zero_diagonal && n == 1) return Matrix(1);
  const Matrix b = omega(rng, n, zero_diagonal);
  const Rational sb = sigma(b);
  if (sb >= s) return sb == 0 ? b : (s / sb) * b;
  return mix_to(b, permutation_matrix(permutation(rng, n, zero_diagonal)), s);
}

Matrix row_substochastic_s(Rng& rng, std::size_t n, const Rational& s, bool zero_diagonal) {
  require(s >= 0 && s <= static_cast<long>(n), ErrorKind::Precondition, "row_substochastic_s: need 0 <= s <= n");
  if (zero_diagonal && n == 1) {
    require(s == 0, ErrorKind::Precondition, "row_substochastic_s: zero diagonal forces sigma 0 at n = 1");
    return Matrix(1);
  }
  const Matrix b = row_substochastic(rng, n, zero_diagonal);
  const Rational sb = sigma(b);
  if (sb >= s) return sb == 0 ? b : (s / sb) * b;
  // A row stochastic top: each row sends all its mass to one random admissible column.
  std::vector<Rational> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = below(rng, zero_diagonal ? n - 1 : n);
    if (zero_diagonal && j >= i) ++j;
    e[i * n + j] = 1;
  }
  return mix_to(b, Matrix(n, std::move(e)), s);
}

Matrix functional(Rng& rng, std::size_t n, std::span<const Rational> weights) {
  require(!weights.empty(), ErrorKind::Precondition, "functional: empty weight set");
  std::vector<Rational> e(n * n);
  for (std::size_t i = 0; i < n && n > 1; ++i) {
    const std::size_t pick = below(rng, n);  // pick == i leaves the row empty
    if (pick != i) e[i * n + pick] = weights[below(rng, weights.size())];
  }
  return Matrix(n, std::move(e));
}

Matrix functional01(Rng& rng, std::size_t n) {
  const Rational one = 1;
  return functional(rng, n, std::span(&one, 1));
}

}  // namespace permlab::gen
