#include "permlab/transforms.hpp"

#include <algorithm>
#include <numeric>

#include "permlab/cycles.hpp"
#include "permlab/errors.hpp"

namespace permlab {

namespace {

std::vector<Rational> copy_entries(const Matrix& a) { return {a.entries().begin(), a.entries().end()}; }

/// Applies mass moves and records per(I - A) around each one when the order
/// allows exact evaluation.
class StepRecorder {
public:
  StepRecorder(const Matrix& a, const EngineLimits& limits)
      : n_(a.order()), e_(copy_entries(a)), exact_(a.order() <= limits.exact_max), limits_(limits) {}

  const Rational& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

  void move(StepKind kind, std::size_t row, std::size_t from, std::size_t to, Rational eps) {
    TransformStep s{kind, {{row, from}, {row, to}}, eps, std::nullopt, std::nullopt};
    if (exact_) s.per_before = per_i_minus(current(), limits_);
    e_[row * n_ + from] -= eps;
    e_[row * n_ + to] += eps;
    if (exact_) s.per_after = per_i_minus(current(), limits_);
    steps_.push_back(std::move(s));
  }

  Matrix current() const { return Matrix(n_, e_); }
  TransformResult finish() && { return {Matrix(n_, std::move(e_)), std::move(steps_)}; }

private:
  std::size_t n_;
  std::vector<Rational> e_;
  bool exact_;
  EngineLimits limits_;
  std::vector<TransformStep> steps_;
};

}  // namespace

Matrix epsilon_shift(const Matrix& a, std::size_t i, std::size_t j, const Rational& eps) {
  const std::size_t n = a.order();
  require(i < n && j < n, ErrorKind::Precondition, "epsilon_shift: index out of range");
  require(i != j, ErrorKind::Precondition, "epsilon_shift: target must be off the diagonal");
  require(is_nonnegative(a), ErrorKind::Precondition, "epsilon_shift: matrix must be nonnegative");
  require(sgn(eps) > 0, ErrorKind::Precondition, "epsilon_shift: eps must be positive");
  require(eps <= a(i, i), ErrorKind::Precondition, "epsilon_shift: eps exceeds the diagonal entry");
  auto e = copy_entries(a);
  e[i * n + i] -= eps;
  e[i * n + j] += eps;
  return Matrix(n, std::move(e));
}

TransformResult zero_diagonalize(const Matrix& a, Preserve preserve, const EngineLimits& limits) {
  const std::size_t n = a.order();
  if (preserve == Preserve::RowSubstochastic)
    require(is_row_substochastic(a), ErrorKind::Precondition, "zero_diagonalize: input is not row substochastic");
  else
    require(is_doubly_substochastic(a), ErrorKind::Precondition,
            "zero_diagonalize: input is not doubly substochastic");

  StepRecorder rec(a, limits);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational mass = rec.at(i, i);
    if (sgn(mass) == 0) continue;
    require(n > 1, ErrorKind::Infeasible, "zero_diagonalize: row 0 has no off-diagonal column");

    if (preserve == Preserve::RowSubstochastic) {
      std::size_t target = i == 0 ? 1 : 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && rec.at(i, j) > rec.at(i, target)) target = j;
      rec.move(StepKind::EpsilonShift, i, i, target, mass);
      continue;
    }

    std::vector<Rational> slack(n);
    for (std::size_t j = 0; j < n; ++j) {
      slack[j] = 1;
      for (std::size_t r = 0; r < n; ++r) slack[j] -= rec.at(r, j);
    }
    std::vector<std::size_t> cols;
    Rational available = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || sgn(slack[j]) <= 0) continue;
      cols.push_back(j);
      available += slack[j];
    }
    require(available >= mass, ErrorKind::Infeasible,
            "zero_diagonalize: row " + std::to_string(i) + " diagonal mass " + to_string(mass) +
                " exceeds the available column slack " + to_string(available));
    std::stable_sort(cols.begin(), cols.end(), [&](std::size_t x, std::size_t y) { return slack[x] > slack[y]; });
    Rational remaining = mass;
    for (auto j : cols) {
      if (sgn(remaining) == 0) break;
      const Rational eps = std::min(remaining, slack[j]);
      rec.move(StepKind::EpsilonShift, i, i, j, eps);
      remaining -= eps;
    }
  }
  return std::move(rec).finish();
}

TransformResult concentrate_rows(const Matrix& a, const EngineLimits& limits) {
  const std::size_t n = a.order();
  require(n <= limits.exact_max, ErrorKind::Guard,
          "concentrate_rows refuses order " + std::to_string(n) + " (limit " + std::to_string(limits.exact_max) + ")");
  require(is_row_substochastic(a), ErrorKind::Precondition, "concentrate_rows: input is not row substochastic");
  require(has_zero_diagonal(a), ErrorKind::Precondition, "concentrate_rows: input must have a zero diagonal");

  StepRecorder rec(a, limits);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::size_t> positive;
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(rec.at(k, j)) > 0) positive.push_back(j);
    if (positive.size() < 2) continue;

    // per(I - A) = per(P(k|k)) - sum_c a_kc per(P(k|c)) with P = I - A. The
    // minors do not involve row k, so they stay fixed while mass moves within
    // the row, and the smallest one is the best destination.
    const Matrix p = i_minus(rec.current());
    const std::size_t drop_row[] = {k};
    std::size_t target = positive.front();
    Rational best;
    for (std::size_t idx = 0; idx < positive.size(); ++idx) {
      const std::size_t drop_col[] = {positive[idx]};
      Rational minor = permanent(submatrix_without(p, drop_row, drop_col), limits);
      if (idx == 0 || minor < best) {
        best = minor;
        target = positive[idx];
      }
    }
    for (auto c : positive)
      if (c != target) rec.move(StepKind::RowConcentrate, k, c, target, rec.at(k, c));
  }
  return std::move(rec).finish();
}

Matrix pair_up(const Matrix& a) {
  require(is_functional(a), ErrorKind::Precondition,
          "pair_up: needs a zero-diagonal row substochastic matrix with at most one positive entry per row");
  const std::size_t n = a.order();
  const WeightedDigraph g = build_graph(a);
  const CycleDecomposition d = find_cycles(g);

  std::vector<std::pair<Rational, Rational>> pairs;
  std::vector<Rational> pool;
  std::vector<bool> on_cycle(n, false);
  for (const auto& c : d.cycles) {
    std::vector<Rational> w;
    for (auto v : c.vertices) {
      w.push_back(g.out_edge[v]->weight);
      on_cycle[v] = true;
    }
    std::size_t t = 0;
    for (; t + 1 < w.size(); t += 2) pairs.emplace_back(w[t], w[t + 1]);
    if (t < w.size()) pool.push_back(w[t]);
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!on_cycle[v] && g.out_edge[v]) pool.push_back(g.out_edge[v]->weight);
  std::size_t t = 0;
  for (; t + 1 < pool.size(); t += 2) pairs.emplace_back(pool[t], pool[t + 1]);
  const bool odd = t < pool.size();

  const std::size_t needed = 2 * pairs.size() + (odd ? 2 : 0);
  require(needed <= n, ErrorKind::Precondition,
          "pair_up: " + std::to_string(2 * pairs.size() + 1) + " positive entries leave no room for the split block at order " +
              std::to_string(n));

  std::vector<Rational> e(n * n);
  std::size_t off = 0;
  auto place = [&](const Rational& x, const Rational& y) {
    e[off * n + off + 1] = x;
    e[(off + 1) * n + off] = y;
    off += 2;
  };
  for (const auto& [x, y] : pairs) place(x, y);
  if (odd) {
    const Rational half = pool.back() / 2;
    place(half, half);
  }
  return Matrix(n, std::move(e));
}

}  // namespace permlab
