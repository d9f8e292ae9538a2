#include <doctest.h>

#include <cmath>
#include <optional>

#include "permlab/bounds.hpp"
#include "permlab/errors.hpp"
#include "permlab/generators.hpp"
#include "permlab/permanent.hpp"
#include "permlab/search.hpp"

using namespace permlab;

namespace {

std::optional<ErrorKind> kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

RealMatrix filled(std::size_t n, double x) {
  RealMatrix m(n);
  for (auto& v : m.a) v = x;
  return m;
}

SearchConfig budget(std::size_t n, double s, std::size_t restarts, std::size_t steps) {
  SearchConfig c = default_config(n, s);
  c.restarts = restarts;
  c.steps_per_restart = steps;
  return c;
}

}  // namespace

TEST_CASE("default config") {
  const auto c = default_config(3, 3);
  CHECK(c.cls == SearchClass::DoublyStochastic);
  CHECK(c.restarts == 64);
  CHECK(c.steps_per_restart == 20000);
  CHECK(default_config(9, 5).cls == SearchClass::DoublySubstochasticFixedSum);
  CHECK(default_config(9, 5).restarts == 16);
  CHECK(parse_search_class(to_string(SearchClass::DoublyStochastic)) == SearchClass::DoublyStochastic);
  CHECK_THROWS(parse_search_class("birkhoff"));
}

TEST_CASE("validate") {
  auto c = default_config(4, 3);
  CHECK_NOTHROW(validate(c));
  c.restarts = 0;
  CHECK(kind_of([&] { validate(c); }) == ErrorKind::Precondition);
  c = default_config(4, 3);
  c.tolerance = 0;
  CHECK(kind_of([&] { validate(c); }));
  c = default_config(4, 3);
  c.s = 5;
  CHECK(kind_of([&] { validate(c); }));
  c = default_config(4, 3);
  c.step_decay = 1.5;
  CHECK(kind_of([&] { validate(c); }));
  c = default_config(4, 3);
  c.cls = SearchClass::DoublyStochastic;
  CHECK(kind_of([&] { validate(c); }));
  CHECK(kind_of([] { maximize(default_config(13, 5)); }));
}

TEST_CASE("repair") {
  const RealMatrix m2 = to_real(swap_block());
  const auto same = repair(m2, 2, SearchClass::DoublySubstochasticFixedSum);
  CHECK(same.feasible);
  CHECK(same.matrix.a == m2.a);

  const auto ones = repair(filled(2, 1.0), 2, SearchClass::DoublySubstochasticFixedSum);
  CHECK(ones.feasible);
  CHECK(ones.matrix.a == m2.a);
  const auto stoch = repair(filled(2, 1.0), 2, SearchClass::DoublyStochastic);
  CHECK(stoch.feasible);
  CHECK(stoch.matrix.a == m2.a);

  RealMatrix nan = filled(2, 0.5);
  nan.a[1] = std::nan("");
  CHECK(kind_of([&] { repair(nan, 1, SearchClass::DoublySubstochasticFixedSum); }));

  gen::Rng rng(61);
  std::uniform_real_distribution<double> noise(-0.05, 0.05);
  RealMatrix p = to_real(construct_extremal(6, 4));
  for (auto& v : p.a) v += noise(rng);
  const auto fixed = repair(p, 4, SearchClass::DoublySubstochasticFixedSum);
  CHECK(fixed.feasible);
  CHECK(fixed.violation <= 1e-12);
  CHECK(feasibility_violation(fixed.matrix, 4, SearchClass::DoublySubstochasticFixedSum) <= 1e-12);
}

TEST_CASE("maximize on Omega_3 reaches 3/2") {
  const auto r = maximize(default_config(3, 3));
  CHECK(r.feasible);
  CHECK(r.best_value >= 1.5 - 1e-6);
  CHECK(r.best_value <= 1.5 + 1e-9);
  REQUIRE(r.formula_value);
  CHECK(*r.formula_value == 1.5);
  CHECK(r.per_restart_bests.size() == 64);
  CHECK(r.best_value == permanent_gray(i_minus(r.best_matrix)));
  REQUIRE(r.rationalized_value);
  CHECK(std::abs(to_double(*r.rationalized_value) - r.best_value) < 1e-4);
}

TEST_CASE("maximize recovers the even construction") {
  const auto r = maximize(default_config(4, 4));
  CHECK(r.best_value >= 4 - 1e-5);
  CHECK(r.best_value <= 4 + 1e-9);
}

TEST_CASE("maximize approaches the fixed-sum value") {
  for (auto [n, s] : {std::pair<std::size_t, double>{4, 3}, {6, 5}}) {
    const auto r = maximize(default_config(n, s));
    const double bound = to_double(theorem_bound(n, Rational(static_cast<long>(s))).value);
    CAPTURE(n);
    CHECK(r.feasible);
    CHECK(r.best_value <= bound + 1e-9);
    CHECK(r.best_value >= bound - 1e-4);
    REQUIRE(r.gap);
    CHECK(*r.gap <= 1e-9);
  }
}

TEST_CASE("search results do not depend on the worker count") {
  for (const auto& c : {budget(5, 4, 6, 3000), budget(5, 5, 6, 3000)}) {
    const auto one = maximize(c, 1);
    const auto four = maximize(c, 4);
    CHECK(one == four);
  }
}

TEST_CASE("formula_for") {
  CHECK(formula_for(default_config(9, 5))->first == 5);
  CHECK(formula_for(default_config(3, 3))->first == 1.5);
  CHECK(formula_for(default_config(4, 3))->first == to_double(theorem_bound(4, 3).value));
}

TEST_CASE("exhaustive omega3") {
  const auto top = exhaustive_omega3(3, 0.125);
  REQUIRE(top.best_value);
  CHECK(*top.best_value == ratio(3, 2));
  CHECK(per_i_minus(*top.best_matrix) == ratio(3, 2));
  CHECK(top.candidate_quadratic == 1.5);
  CHECK(top.candidate_linear == 0);

  // the grid finds (0 1/8 1/8; 1/8 0 7/8; 1/8 7/8 0), above both candidates
  const auto low = exhaustive_omega3(2.25, 0.125);
  CHECK(*low.best_value == ratio(453, 256));
  CHECK(low.envelope == 1.5);
  CHECK(to_double(*low.best_value) > low.envelope + 0.02);
  CHECK_FALSE(low.notes.empty());

  const auto edge = exhaustive_omega3(2, 0.125);
  CHECK(edge.candidate_quadratic == 1.5);
  CHECK(edge.candidate_linear == 2);
  CHECK(edge.envelope == 2);

  CHECK(kind_of([] { exhaustive_omega3(2.5, 1.0 / 32); }));
  CHECK(kind_of([] { exhaustive_omega3(3.5, 0.125); }));
}

TEST_CASE("evidence report") {
  const auto r = evidence_report(5, {5.0}, budget(5, 5, 8, 4000));
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].conjectured_grid == 3);
  CHECK(r.rows[0].conjectured_formula == 3);
  CHECK(r.rows[0].feasible);
  CHECK(r.rows[0].difference == doctest::Approx(r.rows[0].observed - 3));
  CHECK(kind_of([] { evidence_report(4, {4.0}); }));
  CHECK(kind_of([] { evidence_report(5, {3.0}); }));
}

// ---- properties ----

TEST_CASE("property: repair terminates and reports feasibility honestly") {
  gen::Rng rng(62);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 6;
    RealMatrix m(n);
    for (auto& v : m.a) v = u(rng);
    const bool stoch = t % 4 == 0;
    const double s = stoch ? static_cast<double>(n) : std::uniform_real_distribution<double>(0, n - 1)(rng);
    const auto cls = stoch ? SearchClass::DoublyStochastic : SearchClass::DoublySubstochasticFixedSum;
    const auto r = repair(m, s, cls);
    REQUIRE(r.rounds <= kRepairMaxRounds);
    REQUIRE(r.feasible == (feasibility_violation(r.matrix, s, cls) <= kRepairThreshold));
    if (!r.feasible) continue;
    // independent exact check on the 2^-30 rationalization
    const Matrix q = rationalize(r.matrix, 30);
    REQUIRE(has_zero_diagonal(q));
    for (auto x : row_sums(q)) REQUIRE(to_double(x) <= 1 + 1e-8);
    for (auto x : col_sums(q)) REQUIRE(to_double(x) <= 1 + 1e-8);
    REQUIRE(std::abs(to_double(sigma(q)) - s) <= 1e-7);
  }
}

TEST_CASE("property: search never beats a proven bound") {
  for (std::size_t n = 2; n <= 6; ++n)
    for (double s : {0.5, 1.0, 1.5, 2.0, 3.0}) {
      if (s > n || (n % 2 && s > n - 1)) continue;
      const auto r = maximize(budget(n, s, 3, 1500));
      REQUIRE(r.formula_value);
      REQUIRE(r.best_value <= *r.formula_value + 1e-9);
    }
}
