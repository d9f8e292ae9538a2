#include <doctest.h>

#include <optional>

#include "../support/bridge.hpp"
#include "permlab/cycles.hpp"
#include "permlab/errors.hpp"
#include "permlab/generators.hpp"
#include "permlab/permanent.hpp"
#include "permlab/transforms.hpp"

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

void check_steps(const TransformResult& r) {
  for (const auto& s : r.steps) {
    REQUIRE(sgn(s.epsilon) > 0);
    if (s.per_before && s.per_after) REQUIRE(*s.per_after >= *s.per_before);
  }
}

}  // namespace

TEST_CASE("epsilon_shift") {
  const Rational h = ratio(1, 2);
  const Matrix a = make_matrix(2, {{h, 0}, {0, 0}});
  const Matrix b = epsilon_shift(a, 0, 1, h);
  CHECK(b == make_matrix(2, {{0, h}, {0, 0}}));
  CHECK(per_i_minus(b) >= per_i_minus(a));
  CHECK(per_i_minus(a) == h);
  CHECK(per_i_minus(b) == 1);
  CHECK(row_sums(b) == row_sums(a));

  const Matrix d = make_matrix(2, {{h, 0}, {0, h}});
  const Matrix both = epsilon_shift(epsilon_shift(d, 0, 1, h), 1, 0, h);
  CHECK(both == h * swap_block());
  CHECK(sigma(both) == sigma(d));

  CHECK(kind_of([&] { epsilon_shift(a, 0, 1, 0); }) == ErrorKind::Precondition);
  CHECK(kind_of([&] { epsilon_shift(a, 0, 1, 1); }) == ErrorKind::Precondition);
  CHECK(kind_of([&] { epsilon_shift(a, 0, 0, h); }) == ErrorKind::Precondition);
  CHECK(kind_of([&] { epsilon_shift(a, 0, 2, h); }) == ErrorKind::Precondition);
  CHECK(kind_of([&] { epsilon_shift(make_matrix(2, {{h, -1}, {0, 0}}), 0, 1, h); }) == ErrorKind::Precondition);
}

TEST_CASE("zero_diagonalize") {
  const Matrix z = direct_sum({swap_block(), ratio(1, 3) * swap_block()});
  for (auto mode : {Preserve::RowSubstochastic, Preserve::DoublySubstochastic}) {
    const auto r = zero_diagonalize(z, mode);
    CHECK(r.matrix == z);
    CHECK(r.steps.empty());
  }

  const Matrix half = ratio(1, 2) * Matrix::identity(4);
  const auto row = zero_diagonalize(half, Preserve::RowSubstochastic);
  CHECK(has_zero_diagonal(row.matrix));
  CHECK(sigma(row.matrix) == 2);
  CHECK(row_sums(row.matrix) == row_sums(half));
  CHECK(row.steps.size() == 4);
  // row 0 has no off-diagonal mass, so it lands in column 1
  CHECK(row.matrix(0, 1) == ratio(1, 2));
  check_steps(row);

  const auto dbl = zero_diagonalize(half, Preserve::DoublySubstochastic);
  CHECK(has_zero_diagonal(dbl.matrix));
  CHECK(is_doubly_substochastic(dbl.matrix));
  CHECK(sigma(dbl.matrix) == 2);
  CHECK(row_sums(dbl.matrix) == row_sums(half));
  CHECK(per_i_minus(dbl.matrix) >= per_i_minus(half));
  check_steps(dbl);

  try {
    zero_diagonalize(Matrix::identity(3), Preserve::DoublySubstochastic);
    FAIL("expected infeasibility");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Infeasible);
    CHECK(std::string(e.what()).find("row 0") != std::string::npos);
  }
  CHECK(kind_of([] { zero_diagonalize(Matrix::identity(1), Preserve::RowSubstochastic); }) == ErrorKind::Infeasible);
  CHECK(kind_of([] { zero_diagonalize(make_matrix(2, {{1, 1}, {0, 0}}), Preserve::RowSubstochastic); }) ==
        ErrorKind::Precondition);
  CHECK(kind_of([] { zero_diagonalize(make_matrix(2, {{0, 1}, {0, 1}}), Preserve::DoublySubstochastic); }) ==
        ErrorKind::Precondition);
}

TEST_CASE("concentrate_rows") {
  const Rational q = ratio(1, 4);
  // row 0 splits evenly between columns 1 and 2 whose minors agree
  const Matrix sym = make_matrix(3, {{0, q, q}, {ratio(1, 2), 0, 0}, {ratio(1, 2), 0, 0}});
  const auto r = concentrate_rows(sym);
  CHECK(r.steps.size() == 1);
  CHECK(r.matrix == make_matrix(3, {{0, ratio(1, 2), 0}, {ratio(1, 2), 0, 0}, {ratio(1, 2), 0, 0}}));
  CHECK(*r.steps[0].per_before == *r.steps[0].per_after);
  CHECK(per_i_minus(r.matrix) == per_i_minus(sym));

  // a01 = a02 = 1/4, a10 = 1: the merge must go to column 1
  const Matrix skew = make_matrix(3, {{0, q, q}, {1, 0, 0}, {0, 0, 0}});
  const auto s = concentrate_rows(skew);
  CHECK(s.matrix == make_matrix(3, {{0, ratio(1, 2), 0}, {1, 0, 0}, {0, 0, 0}}));
  CHECK(per_i_minus(skew) == ratio(5, 4));
  CHECK(per_i_minus(s.matrix) == ratio(3, 2));
  CHECK(per_i_minus(make_matrix(3, {{0, 0, ratio(1, 2)}, {1, 0, 0}, {0, 0, 0}})) == 1);
  check_steps(s);

  const Matrix done = direct_sum({swap_block(), Matrix::zero(1)});
  const auto d = concentrate_rows(done);
  CHECK(d.matrix == done);
  CHECK(d.steps.empty());

  CHECK(kind_of([] { concentrate_rows(Matrix::zero(15)); }) == ErrorKind::Guard);
  CHECK(kind_of([] { concentrate_rows(Matrix::identity(3)); }) == ErrorKind::Precondition);
}

// ---- properties ----

TEST_CASE("property: epsilon shifts never lower the value") {
  gen::Rng rng(41);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 2 + rng() % 5;
    const Matrix a = gen::row_substochastic(rng, n, false, 8);
    const std::size_t i = rng() % n;
    if (sgn(a(i, i)) == 0) continue;
    std::size_t j = rng() % (n - 1);
    if (j >= i) ++j;
    const Rational eps = a(i, i) * ratio(1 + static_cast<long>(rng() % 4), 4);
    const Matrix b = epsilon_shift(a, i, j, eps);
    REQUIRE(sigma(b) == sigma(a));
    REQUIRE(row_sums(b) == row_sums(a));
    REQUIRE(per_i_minus(b) >= per_i_minus(a));
    REQUIRE(oracle_per_i_minus(b) == per_i_minus(b));
  }
}

TEST_CASE("property: zero_diagonalize keeps the class and never lowers the value") {
  gen::Rng rng(42);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng() % 6;
    const bool doubly = t % 2;
    const Matrix a = doubly ? gen::omega(rng, n) : gen::row_substochastic(rng, n);
    const Preserve mode = doubly ? Preserve::DoublySubstochastic : Preserve::RowSubstochastic;
    if (const auto k = kind_of([&] { zero_diagonalize(a, mode); })) {
      REQUIRE(*k == ErrorKind::Infeasible);
      continue;
    }
    const auto r = zero_diagonalize(a, mode);
    REQUIRE(has_zero_diagonal(r.matrix));
    REQUIRE(sigma(r.matrix) == sigma(a));
    REQUIRE(row_sums(r.matrix) == row_sums(a));
    REQUIRE(doubly ? is_doubly_substochastic(r.matrix) : is_row_substochastic(r.matrix));
    REQUIRE(per_i_minus(r.matrix) >= per_i_minus(a));
    check_steps(r);
    REQUIRE(zero_diagonalize(r.matrix, Preserve::RowSubstochastic).steps.empty());
  }
}

TEST_CASE("property: concentrate_rows leaves one entry per row and never lowers the value") {
  gen::Rng rng(43);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng() % 5;
    const Matrix a = gen::row_substochastic(rng, n, true, 8);
    const auto r = concentrate_rows(a);
    REQUIRE(at_most_one_positive_per_row(r.matrix));
    REQUIRE(has_zero_diagonal(r.matrix));
    REQUIRE(sigma(r.matrix) == sigma(a));
    REQUIRE(row_sums(r.matrix) == row_sums(a));
    REQUIRE(per_i_minus(r.matrix) >= per_i_minus(a));
    REQUIRE(oracle_per_i_minus(r.matrix) == per_i_minus(r.matrix));
    check_steps(r);
    const auto again = concentrate_rows(r.matrix);
    REQUIRE(again.matrix == r.matrix);
    REQUIRE(again.steps.empty());
  }
}

TEST_CASE("property: the full chain ends at or above the input value") {
  gen::Rng rng(44);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + rng() % 5;
    const Matrix a = gen::row_substochastic(rng, n);
    const Matrix z = zero_diagonalize(a, Preserve::RowSubstochastic).matrix;
    const Matrix c = concentrate_rows(z).matrix;
    REQUIRE(per_i_minus(c) >= per_i_minus(a));
    REQUIRE(per_via_cycles(c) == per_i_minus(c));
    if (kind_of([&] { pair_up(c); })) continue;
    REQUIRE(per_i_minus(pair_up(c)) >= per_i_minus(c));
  }
}
