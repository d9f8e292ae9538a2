#include "permlab/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "permlab/bounds.hpp"
#include "permlab/cycles.hpp"
#include "permlab/errors.hpp"
#include "permlab/generators.hpp"
#include "permlab/json_io.hpp"
#include "permlab/permanent.hpp"
#include "permlab/search.hpp"
#include "permlab/transforms.hpp"

namespace permlab {

namespace {

constexpr std::uint64_t kVerifySeed = 0x7e51f1ed;

class Check {
public:
  explicit Check(std::string name) { out_.name = std::move(name); }

  // Runs one case; a thrown exception counts as a failure.
  void run(const std::function<bool(std::string&)>& body) {
    ++out_.cases;
    std::string why;
    bool ok = false;
    try {
      ok = body(why);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    if (ok) return;
    if (out_.failures++ == 0) out_.first_failure = why.empty() ? "case " + std::to_string(out_.cases) : why;
  }

  CheckOutcome done() { return std::move(out_); }

private:
  CheckOutcome out_;
};

std::string show(const Matrix& a) {
  std::string s = format_matrix(a);
  for (auto& c : s)
    if (c == '\n') c = ';';
  return s;
}

Matrix worked_example() {
  return direct_sum({swap_block(), swap_block(), ratio(1, 2) * swap_block(), Matrix::zero(3)});
}

template <typename T>
bool round_trips(const T& x) {
  const auto j = json::encode(x);
  return json::encode(json::decode<T>(json::parse(j.dump()))) == j;
}

}  // namespace

std::vector<CheckOutcome> run_verification() {
  std::vector<CheckOutcome> all;
  gen::Rng rng(kVerifySeed);

  {
    Check c("ryser_equals_naive");
    for (int t = 0; t < 60; ++t)
      c.run([&](std::string& why) {
        const Matrix a = gen::nonnegative(rng, 1 + rng() % 6, 8, 2);
        why = show(a);
        return permanent_ryser(a).total == permanent_naive(a);
      });
    all.push_back(c.done());
  }
  {
    Check c("ryser_levels_sum_to_total");
    for (int t = 0; t < 30; ++t)
      c.run([&](std::string& why) {
        const Matrix a = gen::nonnegative(rng, 1 + rng() % 6);
        why = show(a);
        const auto tr = permanent_ryser(a);
        Rational s = 0;
        for (const auto& x : tr.per_level_sums) s += x;
        return tr.per_level_sums.size() == a.order() && s == tr.total;
      });
    all.push_back(c.done());
  }
  {
    Check c("gray_matches_exact");
    for (int t = 0; t < 30; ++t)
      c.run([&](std::string& why) {
        const Matrix a = gen::nonnegative(rng, 1 + rng() % 8);
        why = show(a);
        const double exact = to_double(permanent(a));
        const double approx = permanent_gray(to_real(a));
        return std::abs(approx - exact) <= 1e-10 * std::max(1.0, std::abs(exact));
      });
    all.push_back(c.done());
  }
  {
    Check c("example_value_five");
    c.run([&](std::string& why) {
      const Matrix a = worked_example();
      const Matrix p = i_minus(a);
      why = "per(I - A) of the 9x9 block example";
      return permanent_naive(p) == 5 && permanent_ryser(p).total == 5 &&
             std::abs(permanent_gray(to_real(p)) - 5.0) < 1e-9 && per_via_cycles(a) == 5;
    });
    all.push_back(c.done());
  }
  {
    Check c("classical_bounds_row_substochastic");
    for (int t = 0; t < 80; ++t)
      c.run([&](std::string& why) {
        const std::size_t n = 1 + rng() % 7;
        const Matrix a = gen::row_substochastic(rng, n);
        why = show(a);
        const Rational per = per_i_minus(a), det = determinant(i_minus(a));
        return per >= det && det >= 0 && per <= malek_bound(n);
      });
    all.push_back(c.done());
  }
  {
    Check c("sign_structure");
    for (int t = 0; t < 20; ++t)
      c.run([&](std::string& why) {
        const Matrix a = gen::omega(rng, 1 + rng() % 6);
        why = show(a);
        return check_sign_structure(a).all_ok();
      });
    all.push_back(c.done());
  }
  {
    Check c("classification_partition");
    for (int t = 0; t < 60; ++t)
      c.run([&](std::string& why) {
        const std::size_t n = 1 + rng() % 6;
        const Matrix a = t % 3 == 0 ? gen::birkhoff(rng, n) : gen::omega(rng, n);
        why = show(a);
        const auto r = classify(a);
        const bool chain = (!r.doubly_stochastic || r.doubly_substochastic) &&
                           (!r.doubly_substochastic || r.row_substochastic) && (!r.row_substochastic || r.nonnegative);
        if (!chain || !r.sub_defect) return false;
        std::size_t hits = 0;
        for (long k = 0; k <= static_cast<long>(n); ++k) {
          const Rational lo = k == 0 ? Rational(n) : Rational(static_cast<long>(n) - k);
          const Rational hi = Rational(static_cast<long>(n) - k + 1);
          const bool in = k == 0 ? r.sigma == lo : (r.sigma >= lo && r.sigma < hi);
          hits += in ? 1 : 0;
        }
        return hits == 1 && *r.sub_defect >= 0 && *r.sub_defect <= static_cast<long>(n) &&
               (*r.sub_defect == 0) == r.doubly_stochastic;
      });
    all.push_back(c.done());
  }
  {
    Check c("extremal_witness_values");
    for (std::size_t n : {2, 4, 6})
      for (long twice = 0; twice <= 2 * static_cast<long>(n); ++twice)
        c.run([&](std::string& why) {
          const Rational s = ratio(twice, 2);
          why = "n=" + std::to_string(n) + " s=" + to_string(s);
          const Matrix w = construct_extremal(n, s);
          return is_doubly_substochastic(w) && sigma(w) == s && per_i_minus(w) == fixed_sum_value(s);
        });
    all.push_back(c.done());
  }
  {
    Check c("fixed_sum_dominance");
    for (std::size_t n : {2, 4, 5})
      for (long twice = 0; twice <= 2 * static_cast<long>(n) - (n % 2 ? 2 : 0); ++twice)
        for (int t = 0; t < 4; ++t)
          c.run([&](std::string& why) {
            const Rational s = ratio(twice, 2);
            const Matrix a = gen::omega_s(rng, n, s);
            why = show(a);
            return sigma(a) == s && is_doubly_substochastic(a) && per_i_minus(a) <= theorem_bound(n, s).value;
          });
    all.push_back(c.done());
  }
  {
    Check c("epsilon_shift_monotone");
    for (int t = 0; t < 60; ++t)
      c.run([&](std::string& why) {
        const std::size_t n = 2 + rng() % 5;
        const Matrix a = gen::row_substochastic(rng, n);
        const std::size_t i = rng() % n, j = (i + 1 + rng() % (n - 1)) % n;
        why = show(a);
        if (a(i, i) == 0) return true;
        const Rational eps = a(i, i) * ratio(static_cast<long>(1 + rng() % 4), 4);
        return per_i_minus(epsilon_shift(a, i, j, eps)) >= per_i_minus(a);
      });
    all.push_back(c.done());
  }
  {
    Check c("concentrate_rows_monotone");
    for (int t = 0; t < 20; ++t)
      c.run([&](std::string& why) {
        const std::size_t n = 2 + rng() % 4;
        const Matrix a = gen::row_substochastic(rng, n, true);
        why = show(a);
        const auto r = concentrate_rows(a);
        return sigma(r.matrix) == sigma(a) && at_most_one_positive_per_row(r.matrix) &&
               per_i_minus(r.matrix) >= per_i_minus(a);
      });
    all.push_back(c.done());
  }
  {
    Check c("sequence_shift_increases");
    for (int t = 0; t < 60; ++t)
      c.run([&](std::string& why) {
        const std::size_t len = 2 + rng() % 7;
        std::vector<Rational> z(len);
        for (auto& x : z) x = gen::grid_value(rng, 16, 0, 1);
        std::sort(z.begin(), z.end(), std::greater<>());
        // shift needs z_first < 1 and z_last > 0
        if (z.front() == 1 || z.back() == 0) return true;
        const SequenceProfile p(z);
        why = "profile of length " + std::to_string(len);
        return sequence_objective(sequence_shift(p)) > sequence_objective(p) &&
               sequence_objective(p) == sequence_product(p);
      });
    all.push_back(c.done());
  }
  {
    Check c("cycle_formula");
    const std::vector<Rational> w = {ratio(1, 4), ratio(1, 2), ratio(3, 4), Rational(1)};
    for (int t = 0; t < 60; ++t)
      c.run([&](std::string& why) {
        const std::size_t n = 1 + rng() % 9;
        const Matrix a = t % 2 ? gen::functional(rng, n, w) : gen::functional01(rng, n);
        why = show(a);
        return per_via_cycles(a) == per_i_minus(a);
      });
    all.push_back(c.done());
  }
  {
    Check c("rowsub_odd_witness");
    for (std::size_t n : {3, 5, 7})
      for (const Rational& s : {ratio(2 * static_cast<long>(n) - 1, 2), Rational(static_cast<long>(n))})
        c.run([&](std::string& why) {
          why = "n=" + std::to_string(n) + " s=" + to_string(s);
          const Matrix w = construct_rowsub_odd(n, s);
          return per_i_minus(w) == pow2(static_cast<long>(n - 1) / 2) && is_row_substochastic(w) &&
                 !is_doubly_substochastic(w);
        });
    all.push_back(c.done());
  }
  {
    Check c("omega3_candidates");
    c.run([&](std::string& why) {
      why = "circulant3(1/2)";
      return per_i_minus(circulant3(ratio(1, 2))) == ratio(3, 2);
    });
    for (long k = 1; k <= 8; ++k)
      c.run([&](std::string& why) {
        const Rational s = 2 + ratio(k, 8);
        why = "s=" + to_string(s);
        const auto cand = omega3_candidates(s);
        return per_i_minus(cand.a0) == cand.value0 && per_i_minus(cand.a1) == cand.value1 &&
               is_doubly_substochastic(cand.a0) && is_doubly_substochastic(cand.a1);
      });
    for (long k = 1; k <= 4; ++k)
      c.run([&](std::string& why) {
        // Both 6 - 2s and 2 - t - t^2 (t = s - 2) have witnesses on the quarter grid.
        const Rational t = ratio(k, 4), s = 2 + t;
        why = "grid s=" + to_string(s);
        const auto g = exhaustive_omega3(to_double(s), 0.25);
        return g.best_value && *g.best_value >= 6 - 2 * s && *g.best_value >= 2 - t - t * t;
      });
    all.push_back(c.done());
  }
  {
    Check c("json_round_trip");
    const Matrix a = worked_example();
    c.run([&](std::string&) { return round_trips(a) && round_trips(classify(a)); });
    c.run([&](std::string&) { return round_trips(permanent_ryser(i_minus(a))); });
    c.run([&](std::string&) { return round_trips(check_sign_structure(ratio(1, 2) * swap_block())); });
    c.run([&](std::string&) { return round_trips(zero_diagonalize(ratio(1, 2) * Matrix::identity(3) + ratio(1, 4) * direct_sum({swap_block(), Matrix(1)}), Preserve::RowSubstochastic)); });
    c.run([&](std::string&) { return round_trips(build_graph(a)) && round_trips(find_cycles(build_graph(a))); });
    c.run([&](std::string&) { return round_trips(theorem_bound(9, 5)) && round_trips(subdefect_bound(4, 0)); });
    c.run([&](std::string&) { return round_trips(conjecture_values(ConjectureKind::OddSubstochastic, 5, ratio(9, 2))); });
    c.run([&](std::string&) { return round_trips(labeling_bound(direct_sum({swap_block(), ratio(1, 3) * swap_block()}))); });
    c.run([&](std::string&) { return round_trips(exhaustive_omega3(2.5, 0.25)); });
    c.run([&](std::string&) {
      SearchConfig cfg = default_config(3, 3);
      cfg.restarts = 2;
      cfg.steps_per_restart = 50;
      return round_trips(cfg) && round_trips(maximize(cfg, 1));
    });
    all.push_back(c.done());
  }
  return all;
}

nlohmann::ordered_json verification_report(const std::vector<CheckOutcome>& outcomes) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  std::size_t failures = 0, cases = 0;
  for (const auto& o : outcomes) {
    failures += o.failures;
    cases += o.cases;
    nlohmann::ordered_json j{{"name", o.name}, {"cases", o.cases}, {"failures", o.failures}, {"passed", o.failures == 0}};
    if (o.failures) j["first_failure"] = o.first_failure;
    checks.push_back(std::move(j));
  }
  return {{"checks", std::move(checks)}, {"cases", cases}, {"failures", failures}, {"passed", failures == 0}};
}

}  // namespace permlab
