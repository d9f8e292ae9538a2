#include "permlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <random>
#include <thread>

#include "permlab/bounds.hpp"
#include "permlab/errors.hpp"
#include "permlab/permanent.hpp"

namespace permlab {

SearchConfig default_config(std::size_t n, double s) {
  SearchConfig c;
  c.n = n;
  c.s = s;
  c.cls = s == static_cast<double>(n) ? SearchClass::DoublyStochastic : SearchClass::DoublySubstochasticFixedSum;
  c.restarts = n <= 6 ? 64 : 16;
  c.steps_per_restart = 20000;
  return c;
}

void validate(const SearchConfig& c) {
  require(c.n >= 2, ErrorKind::Precondition, "search: n must be at least 2 (zero diagonal)");
  require(c.n <= kSearchMaxOrder, ErrorKind::Guard,
          "search refuses order " + std::to_string(c.n) + " (limit " + std::to_string(kSearchMaxOrder) + ")");
  require(std::isfinite(c.s) && c.s >= 0 && c.s <= static_cast<double>(c.n), ErrorKind::Precondition,
          "search: s must lie in [0, n]");
  require(c.cls != SearchClass::DoublyStochastic || c.s == static_cast<double>(c.n), ErrorKind::Precondition,
          "search: the doubly stochastic class needs s = n");
  require(c.restarts >= 1, ErrorKind::Precondition, "search: restarts must be at least 1");
  require(c.tolerance > 0 && std::isfinite(c.tolerance), ErrorKind::Precondition, "search: tolerance must be positive");
  require(c.initial_step > 0 && std::isfinite(c.initial_step), ErrorKind::Precondition,
          "search: initial_step must be positive");
  require(c.step_decay > 0 && c.step_decay < 1, ErrorKind::Precondition, "search: step_decay must lie in (0, 1)");
}

namespace {

struct LineSums {
  std::vector<double> rows, cols;
  double total = 0;
};

LineSums line_sums(const RealMatrix& m) {
  LineSums l{std::vector<double>(m.n, 0.0), std::vector<double>(m.n, 0.0), 0.0};
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) {
      l.rows[i] += m(i, j);
      l.cols[j] += m(i, j);
    }
  for (double r : l.rows) l.total += r;
  return l;
}

void clamp_and_clear_diagonal(RealMatrix& m) {
  for (auto& x : m.a) x = std::max(x, 0.0);
  for (std::size_t i = 0; i < m.n; ++i) m(i, i) = 0.0;
}

void scale_all(RealMatrix& m, double f) {
  for (auto& x : m.a) x *= f;
}

void restore_total(RealMatrix& m, double s) {
  const std::size_t n = m.n;
  LineSums l = line_sums(m);
  if (l.total > s) {
    scale_all(m, s / l.total);
    return;
  }
  if (l.total >= s) return;
  double max_line = 0;
  for (double r : l.rows) max_line = std::max(max_line, r);
  for (double c : l.cols) max_line = std::max(max_line, c);
  if (l.total > 0 && max_line * (s / l.total) <= 1.0) {
    scale_all(m, s / l.total);
    return;
  }
  // Slack fill: w_ij = min(row slack, column slack); the 1/(n-1) cap keeps
  // every line within 1.
  double weight = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) weight += std::max(0.0, std::min(1.0 - l.rows[i], 1.0 - l.cols[j]));
  if (weight <= 0) return;
  const double t = std::min((s - l.total) / weight, 1.0 / static_cast<double>(n - 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) m(i, j) += t * std::max(0.0, std::min(1.0 - l.rows[i], 1.0 - l.cols[j]));
}

void fixed_sum_round(RealMatrix& m, double s) {
  const std::size_t n = m.n;
  clamp_and_clear_diagonal(m);
  LineSums l = line_sums(m);
  for (std::size_t i = 0; i < n; ++i)
    if (l.rows[i] > 1.0)
      for (std::size_t j = 0; j < n; ++j) m(i, j) /= l.rows[i];
  l = line_sums(m);
  for (std::size_t j = 0; j < n; ++j)
    if (l.cols[j] > 1.0)
      for (std::size_t i = 0; i < n; ++i) m(i, j) /= l.cols[j];
  restore_total(m, s);
}

void sinkhorn_round(RealMatrix& m) {
  const std::size_t n = m.n;
  clamp_and_clear_diagonal(m);
  LineSums l = line_sums(m);
  for (std::size_t i = 0; i < n; ++i) {
    if (l.rows[i] <= 0) {
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) m(i, j) = 1.0 / static_cast<double>(n - 1);
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) m(i, j) /= l.rows[i];
  }
  l = line_sums(m);
  for (std::size_t j = 0; j < n; ++j) {
    if (l.cols[j] <= 0) continue;
    for (std::size_t i = 0; i < n; ++i) m(i, j) /= l.cols[j];
  }
}

}  // namespace

double feasibility_violation(const RealMatrix& m, double s, SearchClass cls) {
  double v = 0;
  for (double x : m.a) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
    v = std::max(v, -x);
  }
  for (std::size_t i = 0; i < m.n; ++i) v = std::max(v, std::abs(m(i, i)));
  const LineSums l = line_sums(m);
  for (std::size_t i = 0; i < m.n; ++i) {
    if (cls == SearchClass::DoublyStochastic) {
      v = std::max(v, std::abs(l.rows[i] - 1.0));
      v = std::max(v, std::abs(l.cols[i] - 1.0));
    } else {
      v = std::max(v, l.rows[i] - 1.0);
      v = std::max(v, l.cols[i] - 1.0);
    }
  }
  return std::max(v, std::abs(l.total - s));
}

RepairResult repair(const RealMatrix& m, double s, SearchClass cls) {
  require(m.n >= 1 && m.a.size() == m.n * m.n, ErrorKind::Dimension, "repair: malformed matrix");
  for (double x : m.a) require(std::isfinite(x), ErrorKind::Precondition, "repair: non-finite entry");
  RepairResult r{m, false, 0, feasibility_violation(m, s, cls)};
  if (m.n == 1) {
    r.matrix(0, 0) = 0.0;
    r.violation = feasibility_violation(r.matrix, s, cls);
    r.feasible = r.violation <= kRepairThreshold;
    return r;
  }
  while (r.violation > kRepairThreshold && r.rounds < kRepairMaxRounds) {
    if (cls == SearchClass::DoublyStochastic)
      sinkhorn_round(r.matrix);
    else
      fixed_sum_round(r.matrix, s);
    ++r.rounds;
    r.violation = feasibility_violation(r.matrix, s, cls);
  }
  r.feasible = r.violation <= kRepairThreshold;
  return r;
}

std::optional<std::pair<double, std::string>> formula_for(const SearchConfig& c) {
  const std::size_t n = c.n;
  const bool odd = n % 2 == 1;
  if (c.cls == SearchClass::DoublyStochastic || c.s == static_cast<double>(n)) {
    if (!odd) return std::pair{std::ldexp(1.0, static_cast<int>(n / 2)), std::string("fixed_sum_theorem")};
    if (n == 3) return std::pair{1.5, std::string("omega3_lemma")};
    if (n >= 5)
      return std::pair{std::ldexp(1.5, static_cast<int>((n - 3) / 2)),
                       std::string("conjecture_odd_stochastic (consistent reading)")};
    return std::nullopt;
  }
  if (!odd || c.s <= static_cast<double>(n) - 1)
    return std::pair{to_double(fixed_sum_value(Rational(c.s))), std::string("fixed_sum_theorem")};
  if (n >= 3) {
    const double s3 = c.s - static_cast<double>(n) + 3;
    const double env = std::max((s3 * s3 - 5 * s3 + 12) / 4, 6 - 2 * s3);
    return std::pair{std::ldexp(env, static_cast<int>((n - 3) / 2)),
                     std::string("conjecture_odd_substochastic (consistent reading)")};
  }
  return std::nullopt;
}

namespace {

struct RestartOutcome {
  RealMatrix matrix;
  double value = -std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
};

double objective(const RealMatrix& m) { return permanent_gray(i_minus(m)); }

std::vector<std::size_t> random_derangement(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> p(n);
  for (;;) {
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::shuffle(p.begin(), p.end(), rng);
    bool fixed = false;
    for (std::size_t i = 0; i < n && !fixed; ++i) fixed = p[i] == i;
    if (!fixed) return p;
  }
}

/// Perfect matching row -> column on the positive entries, found by
/// augmenting paths over a shuffled column order.
std::optional<std::vector<std::size_t>> support_matching(const RealMatrix& m, std::mt19937_64& rng) {
  const std::size_t n = m.n, none = n;
  std::vector<std::size_t> order(n), col_owner(n, none), row_col(n, none);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<bool> seen;
  auto augment = [&](auto&& self, std::size_t i) -> bool {
    for (std::size_t j : order) {
      if (m(i, j) <= 0 || seen[j]) continue;
      seen[j] = true;
      if (col_owner[j] == none || self(self, col_owner[j])) {
        col_owner[j] = i;
        row_col[i] = j;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    seen.assign(n, false);
    if (!augment(augment, i)) return std::nullopt;
  }
  return row_col;
}

RestartOutcome run_restart(const SearchConfig& c, std::size_t r) {
  const std::size_t n = c.n;
  std::mt19937_64 rng(c.seed + r);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> index(0, n - 1);

  RealMatrix start(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) start(i, j) = unit(rng);
  RestartOutcome out;
  out.matrix = repair(start, c.s, c.cls).matrix;
  out.value = objective(out.matrix);
  out.evaluations = 1;
  if (c.s == 0) return out;

  auto off_diagonal = [&] {
    while (true) {
      const std::size_t i = index(rng), j = index(rng);
      if (i != j) return std::pair{i, j};
    }
  };

  double step = c.initial_step;
  RealMatrix cand;
  for (std::size_t t = 0; t < c.steps_per_restart; ++t, step *= c.step_decay) {
    cand = out.matrix;
    if (c.cls == SearchClass::DoublyStochastic) {
      // A + delta (P - Q) keeps every line sum; Q must sit inside the support.
      const auto q = support_matching(out.matrix, rng);
      if (!q) continue;
      const auto p = random_derangement(n, rng);
      if (p == *q) continue;
      double room = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) room = std::min(room, out.matrix(i, (*q)[i]));
      const double delta = std::min(unit(rng) * step, room);
      for (std::size_t i = 0; i < n; ++i) {
        cand(i, (*q)[i]) -= delta;
        cand(i, p[i]) += delta;
      }
    } else {
      std::pair<std::size_t, std::size_t> src;
      bool found = false;
      for (std::size_t tries = 0; tries < n * n && !found; ++tries) {
        src = off_diagonal();
        found = out.matrix(src.first, src.second) > 0;
      }
      if (!found) continue;
      const auto dst = off_diagonal();
      if (dst == src) continue;
      const double delta = std::min(unit(rng) * step, out.matrix(src.first, src.second));
      cand(src.first, src.second) -= delta;
      cand(dst.first, dst.second) += delta;
    }
    RepairResult rep = repair(cand, c.s, c.cls);
    if (!rep.feasible) continue;
    const double v = objective(rep.matrix);
    ++out.evaluations;
    if (v > out.value + c.tolerance) {
      out.matrix = std::move(rep.matrix);
      out.value = v;
    }
  }
  return out;
}

}  // namespace

SearchResult maximize(const SearchConfig& config, unsigned threads) {
  validate(config);
  std::vector<RestartOutcome> outcomes(config.restarts);
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.restarts));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r; (r = next.fetch_add(1)) < config.restarts;) outcomes[r] = run_restart(config, r);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SearchResult res;
  res.config = config;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    res.per_restart_bests.push_back(outcomes[r].value);
    res.evaluations += outcomes[r].evaluations;
    if (r == 0 || outcomes[r].value > outcomes[res.best_restart].value) res.best_restart = r;
  }
  res.best_matrix = outcomes[res.best_restart].matrix;
  res.best_value = objective(res.best_matrix);
  res.feasible = feasibility_violation(res.best_matrix, config.s, config.cls) <= std::max(config.tolerance, kRepairThreshold);
  if (auto f = formula_for(config)) {
    res.formula_value = f->first;
    res.formula_source = f->second;
    res.gap = res.best_value - f->first;
  }
  res.rationalized_value = per_i_minus(rationalize(res.best_matrix, 20));
  return res;
}

Omega3GridResult exhaustive_omega3(double s, double grid_step) {
  require(std::isfinite(grid_step) && grid_step >= 1.0 / 16.0, ErrorKind::Guard,
          "exhaustive_omega3: grid step below the 1/16 floor");
  const double inv = 1.0 / grid_step;
  const long m = std::lround(inv);
  require(std::abs(inv - static_cast<double>(m)) < 1e-9, ErrorKind::Precondition,
          "exhaustive_omega3: 1/grid_step must be an integer");
  require(std::isfinite(s) && s >= 2.0 && s <= 3.0, ErrorKind::Precondition, "exhaustive_omega3: s outside [2, 3]");

  Omega3GridResult res;
  res.s = s;
  res.grid_step = grid_step;
  res.candidate_quadratic = (s * s - 5 * s + 12) / 4;
  res.candidate_linear = 6 - 2 * s;
  res.envelope = std::max(res.candidate_quadratic, res.candidate_linear);

  // Work in units of the grid: entries k/m, per(I - A) = per(mI - K)/m^3.
  const double target = s * static_cast<double>(m);
  long long best = std::numeric_limits<long long>::min();
  long best_k[6] = {};
  for (long a01 = 0; a01 <= m; ++a01)
    for (long a02 = 0; a01 + a02 <= m; ++a02)
      for (long a10 = 0; a10 <= m; ++a10)
        for (long a12 = 0; a10 + a12 <= m; ++a12)
          for (long a20 = 0; a20 <= m && a10 + a20 <= m; ++a20)
            for (long a21 = 0; a20 + a21 <= m && a01 + a21 <= m; ++a21) {
              if (a02 + a12 > m) continue;
              const long total = a01 + a02 + a10 + a12 + a20 + a21;
              if (std::abs(static_cast<double>(total) - target) > 0.5) continue;
              ++res.points_feasible;
              const long long p00 = m, p01 = -a01, p02 = -a02, p10 = -a10, p11 = m, p12 = -a12, p20 = -a20,
                              p21 = -a21, p22 = m;
              const long long per = p00 * (p11 * p22 + p12 * p21) + p01 * (p10 * p22 + p12 * p20) +
                                    p02 * (p10 * p21 + p11 * p20);
              if (per > best) {
                best = per;
                const long k[6] = {a01, a02, a10, a12, a20, a21};
                std::copy(k, k + 6, best_k);
              }
            }
  if (res.points_feasible > 0) {
    const Rational u(1, m);
    const auto e = [&](int idx) -> Rational { return Rational(best_k[idx]) * u; };
    res.best_matrix = make_matrix(3, {{0, e(0), e(1)}, {e(2), 0, e(3)}, {e(4), e(5), 0}});
    res.best_value = ratio(static_cast<long>(best), static_cast<long>(m) * m * m);
    const double excess = to_double(*res.best_value) - res.envelope;
    if (excess > 1e-12) {
      std::ostringstream os;
      os.precision(17);
      os << "grid maximum exceeds the two-candidate envelope by " << excess;
      res.notes.push_back(os.str());
    }
  } else {
    res.notes.push_back("no grid point satisfies the sum window");
  }
  res.notes.push_back("grid restricted to zero-diagonal matrices; evidence only");
  return res;
}

EvidenceReport evidence_report(std::size_t n, const std::vector<double>& s_grid, const std::optional<SearchConfig>& base,
                               unsigned threads) {
  require(n == 3 || n == 5 || n == 7, ErrorKind::Precondition, "evidence_report: n must be 3, 5 or 7");
  EvidenceReport rep;
  rep.n = n;
  const double scale = std::ldexp(1.0, static_cast<int>((n - 3) / 2));
  for (double s : s_grid) {
    require(s > static_cast<double>(n) - 1 && s <= static_cast<double>(n), ErrorKind::Precondition,
            "evidence_report: s outside (n-1, n]");
    SearchConfig c = base ? *base : default_config(n, s);
    c.n = n;
    c.s = s;
    c.cls = s == static_cast<double>(n) ? SearchClass::DoublyStochastic : SearchClass::DoublySubstochasticFixedSum;
    const SearchResult found = maximize(c, threads);
    const double s3 = s - static_cast<double>(n) + 3;
    const Omega3GridResult grid = exhaustive_omega3(s3);
    EvidenceRow row;
    row.s = s;
    row.observed = found.best_value;
    row.feasible = found.feasible;
    row.conjectured_grid = grid.best_value ? scale * to_double(*grid.best_value) : 0.0;
    row.conjectured_formula = scale * grid.envelope;
    row.difference = row.observed - row.conjectured_grid;
    rep.rows.push_back(row);
  }
  rep.notes = {
      "conjectured values use the consistent reading: (n-3)/2 copies of M2 and factor 2^((n-3)/2)",
      "observed values are numerical maxima, not certificates",
  };
  return rep;
}

std::string to_string(SearchClass c) {
  return c == SearchClass::DoublyStochastic ? "doubly_stochastic" : "doubly_substochastic_fixed_sum";
}

SearchClass parse_search_class(const std::string& s) {
  if (s == "doubly_stochastic") return SearchClass::DoublyStochastic;
  if (s == "doubly_substochastic_fixed_sum") return SearchClass::DoublySubstochasticFixedSum;
  fail(ErrorKind::Parse, "unknown search class '" + s + "'");
}

}  // namespace permlab
