#include "permlab/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "permlab/errors.hpp"
#include "permlab/permanent.hpp"

namespace permlab {

long greatest_even_at_most(const Rational& s) {
  const Rational half = s / 2;
  return 2 * floor_of(half).get_si();
}

Rational fixed_sum_value(const Rational& s) {
  const long e = greatest_even_at_most(s);
  const Rational h = (s - e) / 2;
  return pow2(e / 2) * (1 + h * h);
}

Rational malek_bound(std::size_t n) {
  require(n >= 1, ErrorKind::Precondition, "malek_bound: n must be positive");
  return pow2(static_cast<long>(n / 2));
}

BoundReport malek_report(std::size_t n) {
  BoundReport r;
  r.n = n;
  r.s = static_cast<long>(n);
  r.e = greatest_even_at_most(r.s);
  r.value = malek_bound(n);
  r.source = BoundSource::Malek;
  r.hypotheses_met = true;
  return r;
}

namespace {

void check_sum_range(std::size_t n, const Rational& s, const char* what) {
  require(n >= 1, ErrorKind::Precondition, std::string(what) + ": n must be positive");
  require(sgn(s) >= 0 && s <= static_cast<long>(n), ErrorKind::Precondition,
          std::string(what) + ": s = " + to_string(s) + " outside [0, " + std::to_string(n) + "]");
}

bool fixed_sum_hypotheses(std::size_t n, const Rational& s) {
  return n % 2 == 0 || s <= static_cast<long>(n) - 1;
}

std::vector<Matrix> swap_blocks(std::size_t copies) { return std::vector<Matrix>(copies, swap_block()); }

Matrix assemble(std::vector<Matrix> blocks) { return direct_sum(std::span<const Matrix>(blocks)); }

}  // namespace

BoundReport theorem_bound(std::size_t n, const Rational& s) {
  check_sum_range(n, s, "theorem_bound");
  BoundReport r;
  r.n = n;
  r.s = s;
  r.e = greatest_even_at_most(s);
  r.value = fixed_sum_value(s);
  r.source = BoundSource::FixedSumTheorem;
  r.hypotheses_met = fixed_sum_hypotheses(n, s);
  if (r.hypotheses_met)
    r.witness = construct_extremal(n, s);
  else
    r.notes.push_back("odd n with s > n-1 is not covered; the value is the formula only");
  return r;
}

BoundReport subdefect_bound(std::size_t n, long k) {
  require(n >= 1, ErrorKind::Precondition, "subdefect_bound: n must be positive");
  const long lo = n % 2 ? 1 : 0;
  require(k >= lo && k <= static_cast<long>(n), ErrorKind::Precondition,
          "subdefect_bound: k = " + std::to_string(k) + " outside [" + std::to_string(lo) + ", " + std::to_string(n) +
              "]");
  BoundReport r;
  r.n = n;
  // Sub-defect 0 means sigma = n; the sum cannot reach n - k + 1 = n + 1.
  r.s = std::min<long>(static_cast<long>(n) - k + 1, static_cast<long>(n));
  r.e = greatest_even_at_most(r.s);
  r.value = fixed_sum_value(r.s);
  r.source = BoundSource::SubDefectCorollary;
  r.hypotheses_met = n % 2 == 0 || k > 1;
  r.supremum = true;
  if (k == 0) r.notes.push_back("k = 0: s clipped to n, the value is attained");
  return r;
}

Matrix construct_extremal(std::size_t n, const Rational& s) {
  check_sum_range(n, s, "construct_extremal");
  require(fixed_sum_hypotheses(n, s), ErrorKind::Precondition,
          "construct_extremal: odd n = " + std::to_string(n) + " with s > n-1 has no closed-form maximizer; "
          "use the numerical search");
  const long e = greatest_even_at_most(s);
  std::vector<Matrix> blocks = swap_blocks(static_cast<std::size_t>(e / 2));
  std::size_t used = static_cast<std::size_t>(e);
  if (s > e) {
    blocks.push_back(Rational((s - e) / 2) * swap_block());
    used += 2;
  }
  if (used < n) blocks.emplace_back(n - used);
  return assemble(std::move(blocks));
}

namespace {

void check_rowsub_odd(std::size_t n, const Rational& s) {
  require(n % 2 == 1 && n >= 3, ErrorKind::Precondition, "construct_rowsub_odd: n must be odd and at least 3");
  const long n1 = static_cast<long>(n) - 1;
  require(s > n1 && s <= n1 + 1, ErrorKind::Precondition,
          "construct_rowsub_odd: s = " + to_string(s) + " outside (n-1, n]");
}

}  // namespace

Matrix construct_rowsub_odd(std::size_t n, const Rational& s) {
  check_rowsub_odd(n, s);
  std::vector<Matrix> blocks = swap_blocks((n - 3) / 2);
  blocks.push_back(make_matrix(3, {{0, 1, 0}, {1, 0, 0}, {0, Rational(s - static_cast<long>(n - 1)), 0}}));
  return assemble(std::move(blocks));
}

BoundReport rowsub_odd_bound(std::size_t n, const Rational& s) {
  check_rowsub_odd(n, s);
  BoundReport r;
  r.n = n;
  r.s = s;
  r.e = greatest_even_at_most(s);
  r.value = pow2(static_cast<long>((n - 1) / 2));
  r.source = BoundSource::RowSubstochasticOddTheorem;
  r.hypotheses_met = true;
  r.witness = construct_rowsub_odd(n, s);
  r.notes.push_back("maximum over row substochastic matrices; the witness is not doubly substochastic");
  return r;
}

Omega3Candidates omega3_candidates(const Rational& s) {
  require(s > 2 && s <= 3, ErrorKind::Precondition, "omega3_candidates: s = " + to_string(s) + " outside (2, 3]");
  const Rational h(1, 2);
  const Rational c = s / 2 - 1;
  Omega3Candidates out{
      make_matrix(3, {{0, h, c}, {h, 0, h}, {c, h, 0}}),
      make_matrix(3, {{0, 1, 0}, {1, 0, 0}, {0, 0, Rational(s - 2)}}),
      (s * s - 5 * s + 12) / 4,
      6 - 2 * s,
  };
  return out;
}

Rational omega3_envelope(const Rational& s) {
  require(s >= 2 && s <= 3, ErrorKind::Precondition, "omega3_envelope: s outside [2, 3]");
  const Rational q = (s * s - 5 * s + 12) / 4;
  const Rational l = 6 - 2 * s;
  return std::max(q, l);
}

Matrix circulant3(const Rational& x) {
  require(sgn(x) >= 0 && x <= 1, ErrorKind::Precondition, "circulant3: x outside [0, 1]");
  const Rational y = 1 - x;
  return make_matrix(3, {{0, x, y}, {y, 0, x}, {x, y, 0}});
}

SequenceProfile::SequenceProfile(std::vector<Rational> values) : values_(std::move(values)), total_(0) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    require(sgn(values_[i]) >= 0 && values_[i] <= 1, ErrorKind::Precondition,
            "sequence profile entry " + std::to_string(i) + " outside [0, 1]");
    require(i == 0 || values_[i] <= values_[i - 1], ErrorKind::Precondition, "sequence profile must be nonincreasing");
    total_ += values_[i];
  }
}

Rational sequence_objective(const SequenceProfile& z) {
  // esym[k] = e_k(z_1^2, ..., z_m^2)
  std::vector<Rational> esym(z.values().size() + 1);
  esym[0] = 1;
  std::size_t m = 0;
  for (const auto& v : z.values()) {
    const Rational sq = v * v;
    ++m;
    for (std::size_t k = m; k >= 1; --k) esym[k] += esym[k - 1] * sq;
  }
  Rational total = 0;
  for (const auto& x : esym) total += x;
  return total;
}

Rational sequence_product(const SequenceProfile& z) {
  Rational p = 1;
  for (const auto& v : z.values()) p *= 1 + v * v;
  return p;
}

SequenceProfile sequence_shift(const SequenceProfile& z) {
  const auto& v = z.values();
  require(v.size() >= 2, ErrorKind::Precondition, "sequence_shift: needs at least two entries");
  require(sgn(v.back()) > 0 && v.front() < 1, ErrorKind::Precondition,
          "sequence_shift: needs 0 < z_last and z_first < 1");
  const Rational eps = std::min(Rational(1 - v.front()), v.back());
  std::vector<Rational> y = v;
  y.front() += eps;
  y.back() -= eps;
  std::stable_sort(y.begin(), y.end(), [](const Rational& a, const Rational& b) { return a > b; });
  return SequenceProfile(std::move(y));
}

std::vector<SequenceProfile> sequence_ascend(const SequenceProfile& z) {
  std::vector<SequenceProfile> trace{z};
  while (true) {
    const auto& v = trace.back().values();
    // Entries strictly inside (0, 1) form a contiguous run of a sorted profile.
    auto first = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x < 1; });
    auto last = std::find_if(first, v.end(), [](const Rational& x) { return sgn(x) == 0; });
    if (last - first < 2) break;
    SequenceProfile open(std::vector<Rational>(first, last));
    const SequenceProfile shifted = sequence_shift(open);
    std::vector<Rational> next(v.begin(), first);
    next.insert(next.end(), shifted.values().begin(), shifted.values().end());
    next.insert(next.end(), last, v.end());
    std::stable_sort(next.begin(), next.end(), [](const Rational& a, const Rational& b) { return a > b; });
    trace.emplace_back(std::move(next));
  }
  return trace;
}

std::pair<Rational, SequenceProfile> sequence_max(const Rational& s_bar, std::size_t length) {
  require(sgn(s_bar) >= 0, ErrorKind::Precondition, "sequence_max: negative total");
  require(s_bar <= static_cast<long>(length), ErrorKind::Precondition,
          "sequence_max: total " + to_string(s_bar) + " exceeds length " + std::to_string(length));
  const Integer fl = floor_of(s_bar);
  const Rational frac = s_bar - Rational(fl);
  const long whole = fl.get_si();
  std::vector<Rational> v(length);
  for (long i = 0; i < whole; ++i) v[static_cast<std::size_t>(i)] = 1;
  if (sgn(frac) > 0) v[static_cast<std::size_t>(whole)] = frac;
  return {pow2(whole) * (1 + frac * frac), SequenceProfile(std::move(v))};
}

namespace {

using Pairing = std::vector<std::pair<std::size_t, std::size_t>>;

Rational pairing_value(const std::vector<Rational>& x, const Pairing& p) {
  Rational v = 1;
  for (auto [a, b] : p) v *= 1 + x[a] * x[b];
  return v;
}

void best_matching(const std::vector<Rational>& x, std::vector<bool>& used, Pairing& cur, Rational& best,
                   Pairing& best_p, bool& have) {
  const auto first = std::find(used.begin(), used.end(), false);
  if (first == used.end()) {
    Rational v = pairing_value(x, cur);
    if (!have || v > best) {
      best = v;
      best_p = cur;
      have = true;
    }
    return;
  }
  const auto i = static_cast<std::size_t>(first - used.begin());
  used[i] = true;
  for (std::size_t j = i + 1; j < used.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    cur.emplace_back(i, j);
    best_matching(x, used, cur, best, best_p, have);
    cur.pop_back();
    used[j] = false;
  }
  used[i] = false;
}

}  // namespace

LabelingBound labeling_bound(const Matrix& a, const std::optional<Pairing>& pairing) {
  const std::size_t n = a.order();
  require(n % 2 == 0, ErrorKind::Precondition, "labeling_bound: n must be even");
  require(is_row_substochastic(a), ErrorKind::Precondition, "labeling_bound: input is not row substochastic");
  const auto x = row_sums(a);

  LabelingBound out;
  if (pairing) {
    std::vector<bool> seen(n, false);
    require(pairing->size() == n / 2, ErrorKind::Dimension, "labeling_bound: pairing must have n/2 pairs");
    for (auto [p, q] : *pairing) {
      require(p < n && q < n && p != q && !seen[p] && !seen[q], ErrorKind::Dimension,
              "labeling_bound: pairing is not a perfect matching");
      seen[p] = seen[q] = true;
    }
    out.pairing = *pairing;
    out.value = pairing_value(x, out.pairing);
    return out;
  }
  if (n <= 10) {
    std::vector<bool> used(n, false);
    Pairing cur;
    bool have = false;
    best_matching(x, used, cur, out.value, out.pairing, have);
    out.exhaustive = true;
    return out;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return x[p] > x[q]; });
  for (std::size_t i = 0; i < n; i += 2) out.pairing.emplace_back(order[i], order[i + 1]);
  out.value = pairing_value(x, out.pairing);
  return out;
}

bool above_omega3_threshold(const Rational& s) {
  // s > (-3 + sqrt 57)/2  <=>  (2s + 3)^2 > 57 for 2s + 3 > 0
  const Rational t = 2 * s + 3;
  return sgn(t) > 0 && t * t > 57;
}

double omega3_threshold() { return (-3.0 + std::sqrt(57.0)) / 2.0; }

namespace {

BoundReport conjecture_base(std::size_t n, const Rational& s, BoundSource src, Reading reading) {
  BoundReport r;
  r.n = n;
  r.s = s;
  r.e = greatest_even_at_most(s);
  r.source = src;
  r.hypotheses_met = false;
  r.reading = reading;
  return r;
}

/// Conjectured 3x3 maximizer at sum s in (2, 3] (consistent reading).
std::pair<Rational, Matrix> omega3_consistent(const Rational& s) {
  auto c = omega3_candidates(s);
  if (above_omega3_threshold(s)) return {c.value0, c.a0};
  return {c.value1, c.a1};
}

// "(a b; c d)" on one line.
std::string format_inline(const Matrix& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < a.order(); ++i) {
    if (i > 0) out += "; ";
    for (std::size_t j = 0; j < a.order(); ++j) out += (j > 0 ? " " : "") + to_string(a(i, j));
  }
  return out + ")";
}

Matrix padded(std::size_t copies, const Matrix& tail) {
  std::vector<Matrix> blocks = swap_blocks(copies);
  blocks.push_back(tail);
  return assemble(std::move(blocks));
}

}  // namespace

ConjectureReport conjecture_values(ConjectureKind kind, std::size_t n, const Rational& s) {
  switch (kind) {
    case ConjectureKind::OddStochastic: {
      require(n % 2 == 1 && n >= 3, ErrorKind::Precondition, "odd_stochastic: n must be odd and at least 3");
      const Rational sn(static_cast<long>(n));
      const Matrix half = circulant3(Rational(1, 2));
      const Rational c(3, 2);
      ConjectureReport r{conjecture_base(n, sn, BoundSource::ConjectureOddStochastic, Reading::Literal),
                         conjecture_base(n, sn, BoundSource::ConjectureOddStochastic, Reading::Consistent)};
      r.literal.value = pow2(static_cast<long>((n - 1) / 2)) * 3;
      r.literal.witness = padded((n - 1) / 2, half);
      r.literal.notes = {
          "literal block count (n-1)/2 of M2 plus a 3x3 block gives order n+2",
          "literal value 2^((n-1)/2)*3 is twice per(I-W) = 2^((n-1)/2)*3/2 of its own witness",
      };
      if (n == 3) r.literal.notes.push_back("at n = 3 the literal value 6 contradicts the proven Omega_3 maximum 3/2");
      r.consistent.value = pow2(static_cast<long>((n - 3) / 2)) * c;
      r.consistent.witness = padded((n - 3) / 2, half);
      r.consistent.notes = {"(n-3)/2 copies of M2 plus the half circulant; value 2^((n-3)/2)*3/2"};
      return r;
    }
    case ConjectureKind::Omega3: {
      require(s > 2 && s <= 3, ErrorKind::Precondition, "omega3: s = " + to_string(s) + " outside (2, 3]");
      const auto cand = omega3_candidates(s);
      const bool above = above_omega3_threshold(s);
      const Rational linear_literal = 6 - 4 * s;
      ConjectureReport r{conjecture_base(3, s, BoundSource::ConjectureOmega3, Reading::Literal),
                         conjecture_base(3, s, BoundSource::ConjectureOmega3, Reading::Consistent)};
      r.literal.value = above ? cand.value0 : linear_literal;
      if (above) r.literal.witness = cand.a0;
      r.literal.notes = {
          "linear branch 6-4s evaluates to " + to_string(linear_literal) + " here (negative on (2,3])",
          "the candidate matrix A1 attains 6-2s, and the threshold (-3+sqrt57)/2 solves s^2+3s-12=0, the "
          "crossing of (s^2-5s+12)/4 with 6-2s",
      };
      if (!above) r.literal.notes.push_back("no witness attains the literal linear branch");
      r.consistent.value = above ? cand.value0 : cand.value1;
      r.consistent.witness = above ? cand.a0 : cand.a1;
      r.consistent.notes = {above ? "quadratic branch (s^2-5s+12)/4 via A0" : "linear branch 6-2s via A1"};
      // (0 a a; a 0 1-a; a 1-a 0) with a = (s-2)/2 is in omega_3 with sum s and
      // per(I - A) = 1 + (1-a)^2 + 2a^3, above both candidates for s < 3.
      const Rational a = (s - 2) / 2;
      const Matrix beat = make_matrix(3, {{0, a, a}, {a, 0, 1 - a}, {a, 1 - a, 0}});
      const Rational beat_value = per_i_minus(beat);
      if (beat_value > r.consistent.value)
        for (auto* rep : {&r.literal, &r.consistent})
          rep->notes.push_back("counterexample: " + format_inline(beat) + " is doubly substochastic with sum " +
                               to_string(s) + " and per(I-A) = " + to_string(beat_value) +
                               ", above the conjectured value");
      return r;
    }
    case ConjectureKind::OddSubstochastic: {
      require(n % 2 == 1 && n >= 3, ErrorKind::Precondition, "odd_substochastic: n must be odd and at least 3");
      const long n1 = static_cast<long>(n) - 1;
      require(s > n1 && s <= n1 + 1, ErrorKind::Precondition,
              "odd_substochastic: s = " + to_string(s) + " outside (n-1, n]");
      const Rational s3 = s - static_cast<long>(n) + 3;
      const auto [c, block] = omega3_consistent(s3);
      ConjectureReport r{conjecture_base(n, s, BoundSource::ConjectureOddSubstochastic, Reading::Literal),
                         conjecture_base(n, s, BoundSource::ConjectureOddSubstochastic, Reading::Consistent)};
      const std::string cnote = "c = " + to_string(c) + " is itself the conjectured 3x3 maximum at s' = " +
                                to_string(s3) + " (consistent omega3 reading)";
      r.literal.value = pow2(static_cast<long>((n - 1) / 2)) * c;
      r.literal.witness = padded((n - 1) / 2, block);
      r.literal.notes = {"literal block count (n-1)/2 of M2 plus a 3x3 block gives order n+2 and sum s+2", cnote};
      r.consistent.value = pow2(static_cast<long>((n - 3) / 2)) * c;
      r.consistent.witness = padded((n - 3) / 2, block);
      r.consistent.notes = {"(n-3)/2 copies of M2 plus the 3x3 block at s' = s-n+3", cnote};
      return r;
    }
  }
  fail(ErrorKind::Precondition, "unknown conjecture kind");
}

std::string to_string(BoundSource s) {
  switch (s) {
    case BoundSource::Malek: return "malek";
    case BoundSource::FixedSumTheorem: return "fixed_sum_theorem";
    case BoundSource::SubDefectCorollary: return "subdefect_corollary";
    case BoundSource::RowSubstochasticOddTheorem: return "rowsub_odd_theorem";
    case BoundSource::ConjectureOddStochastic: return "conjecture_odd_stochastic";
    case BoundSource::ConjectureOmega3: return "conjecture_omega3";
    case BoundSource::ConjectureOddSubstochastic: return "conjecture_odd_substochastic";
  }
  return "unknown";
}

std::string to_string(Reading r) { return r == Reading::Literal ? "literal" : "consistent"; }

}  // namespace permlab
