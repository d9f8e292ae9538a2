#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "permlab/errors.hpp"
#include "permlab/generators.hpp"
#include "permlab/matrix.hpp"

using namespace permlab;

namespace {

Matrix example9() { return direct_sum({swap_block(), swap_block(), ratio(1, 2) * swap_block(), Matrix::zero(3)}); }

bool throws_kind(ErrorKind k, auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == k;
  }
  return false;
}

}  // namespace

TEST_CASE("parse_rational accepts integers and fractions only") {
  CHECK(parse_rational("3/6") == ratio(1, 2));
  CHECK(to_string(parse_rational("3/6")) == "1/2");
  CHECK(parse_rational("-7") == -7);
  CHECK(parse_rational("+2/4") == ratio(1, 2));
  for (const char* bad : {"", "1/0", "0.5", "1/2x", "/3", "3/", "--1", "1 /2"})
    CHECK_MESSAGE(throws_kind(ErrorKind::Parse, [&] { parse_rational(bad); }), bad);
}

TEST_CASE("floor, ceil and pow2") {
  CHECK(floor_of(ratio(-1, 2)) == -1);
  CHECK(ceil_of(ratio(-1, 2)) == 0);
  CHECK(ceil_of(ratio(9, 2)) == 5);
  CHECK(pow2(0) == 1);
  CHECK(pow2(10) == 1024);
  CHECK(rationalize(0.75, 20) == ratio(3, 4));
  CHECK(rationalize(1.0 / 3.0, 4) == ratio(5, 16));
}

TEST_CASE("make_matrix shapes") {
  const Matrix z = make_matrix(1, {{0}});
  CHECK(z.order() == 1);
  CHECK(z(0, 0) == 0);
  const Matrix m2 = make_matrix(2, {{0, 1}, {1, 0}});
  CHECK(m2 == swap_block());
  CHECK(throws_kind(ErrorKind::Dimension, [] { make_matrix(2, {{0, 1, 0}, {1, 0, 0}}); }));
  CHECK(throws_kind(ErrorKind::Dimension, [] { Matrix(0); }));
  CHECK(throws_kind(ErrorKind::Dimension, [] { Matrix(2, std::vector<Rational>(3)); }));
}

TEST_CASE("entries are stored reduced") {
  const Matrix a(1, {Rational(2, 4)});
  CHECK(to_string(a(0, 0)) == "1/2");
}

TEST_CASE("sigma") {
  CHECK(sigma(Matrix::identity(3)) == 3);
  CHECK(sigma(example9()) == 5);
  CHECK(sigma(Matrix::zero(4)) == 0);
}

TEST_CASE("row and column sums") {
  CHECK(row_sums(swap_block()) == std::vector<Rational>{1, 1});
  CHECK(col_sums(swap_block()) == std::vector<Rational>{1, 1});
  const Rational s = ratio(5, 2);
  const Matrix m3 = make_matrix(3, {{0, 1, 0}, {1, 0, 0}, {0, s - 2, 0}});
  CHECK(row_sums(m3) == std::vector<Rational>{1, 1, s - 2});
  CHECK(col_sums(m3) == std::vector<Rational>{1, s - 1, 0});
  CHECK(row_sums(Matrix::zero(3)) == std::vector<Rational>(3, 0));
  CHECK(col_sums(Matrix::zero(3)) == std::vector<Rational>(3, 0));
}

TEST_CASE("classify") {
  SUBCASE("sum 5 in order 9 has sub-defect 4") {
    const auto r = classify(example9());
    CHECK(r.doubly_substochastic);
    REQUIRE(r.sub_defect);
    CHECK(*r.sub_defect == 4);
  }
  SUBCASE("doubly stochastic has sub-defect 0") {
    const auto r = classify(direct_sum({swap_block(), Matrix::identity(1)}));
    CHECK(r.doubly_stochastic);
    CHECK(*r.sub_defect == 0);
  }
  SUBCASE("negative entry clears every class flag") {
    const auto r = classify(make_matrix(2, {{0, -1}, {0, 0}}));
    CHECK_FALSE(r.nonnegative);
    CHECK_FALSE(r.row_substochastic);
    CHECK_FALSE(r.doubly_substochastic);
    CHECK_FALSE(r.doubly_stochastic);
    CHECK_FALSE(r.sub_defect);
  }
  SUBCASE("row substochastic only") {
    const auto r = classify(make_matrix(2, {{1, 0}, {1, 0}}));
    CHECK(r.row_substochastic);
    CHECK_FALSE(r.doubly_substochastic);
    CHECK_FALSE(r.sub_defect);
  }
}

TEST_CASE("direct_sum") {
  const Matrix two = direct_sum({swap_block(), swap_block()});
  CHECK(two == make_matrix(4, {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}));
  const Matrix e = example9();
  CHECK(e.order() == 9);
  CHECK(e(4, 5) == ratio(1, 2));
  CHECK(e(5, 4) == ratio(1, 2));
  const Matrix a = make_matrix(2, {{1, 2}, {3, 4}});
  CHECK(direct_sum({a}) == a);
  CHECK_THROWS_AS(direct_sum(std::span<const Matrix>{}), Error);
}

TEST_CASE("permute") {
  const Matrix a = make_matrix(2, {{0, 1}, {0, 0}});
  const std::size_t id[] = {0, 1}, sw[] = {1, 0};
  CHECK(permute(a, id, id) == a);
  CHECK(permute(swap_block(), sw, sw) == swap_block());
  CHECK(permute(a, sw, id) == make_matrix(2, {{0, 0}, {0, 1}}));
  const std::size_t dup[] = {0, 0}, short_p[] = {0};
  CHECK(throws_kind(ErrorKind::Dimension, [&] { permute(a, dup, id); }));
  CHECK(throws_kind(ErrorKind::Dimension, [&] { permute(a, id, short_p); }));
}

TEST_CASE("submatrix_without") {
  const Matrix a = make_matrix(3, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  const std::size_t r[] = {1}, c[] = {0};
  CHECK(submatrix_without(a, r, c) == make_matrix(2, {{2, 3}, {8, 9}}));
}

TEST_CASE("text round trip and errors") {
  const Matrix e = example9();
  CHECK(parse_matrix(format_matrix(e)) == e);
  CHECK(throws_kind(ErrorKind::Parse, [] { parse_matrix("2\n0 1\n1\n"); }));
  CHECK(throws_kind(ErrorKind::Parse, [] { parse_matrix("1\n0 7\n"); }));
  CHECK(throws_kind(ErrorKind::Parse, [] { parse_matrix("x\n"); }));
  CHECK(throws_kind(ErrorKind::Io, [] { load_matrix("/nonexistent/file.mat"); }));
}

TEST_CASE("rationalize a real matrix") {
  RealMatrix r(2);
  r(0, 1) = 0.5000001;
  r(1, 0) = 0.25;
  const Matrix q = rationalize(r, 4);
  CHECK(q == make_matrix(2, {{0, ratio(1, 2)}, {ratio(1, 4), 0}}));
  CHECK(to_real(q)(1, 0) == 0.25);
}

// ---- properties over generated samples ----

TEST_CASE("property: sigma equals the sum of row sums and of column sums") {
  gen::Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const Matrix a = gen::nonnegative(rng, 1 + rng() % 7, 12, 3);
    Rational rs = 0, cs = 0;
    for (const auto& x : row_sums(a)) rs += x;
    for (const auto& x : col_sums(a)) cs += x;
    REQUIRE(rs == sigma(a));
    REQUIRE(cs == sigma(a));
  }
}

TEST_CASE("property: generators land in their classes and the implication chain holds") {
  gen::Rng rng(12);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const Rational s = ratio(static_cast<long>(rng() % (2 * n + 1)), 2);
    const Matrix birk = gen::birkhoff(rng, n);
    const Matrix om = gen::omega_s(rng, n, s);
    const Matrix row = gen::row_substochastic_s(rng, n, s);
    const auto cb = classify(birk), co = classify(om), cr = classify(row);
    REQUIRE(cb.doubly_stochastic);
    REQUIRE(co.doubly_substochastic);
    REQUIRE(co.sigma == s);
    REQUIRE(cr.row_substochastic);
    REQUIRE(cr.sigma == s);
    for (const auto& r : {cb, co, cr}) {
      REQUIRE((!r.doubly_stochastic || r.doubly_substochastic));
      REQUIRE((!r.doubly_substochastic || r.row_substochastic));
      REQUIRE((!r.row_substochastic || r.nonnegative));
    }
  }
}

TEST_CASE("property: zero-diagonal generators") {
  gen::Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng() % 5;
    const Rational s = ratio(static_cast<long>(rng() % (2 * n + 1)), 2);
    REQUIRE(has_zero_diagonal(gen::omega_s(rng, n, s, true)));
    REQUIRE(has_zero_diagonal(gen::birkhoff(rng, n, true)));
    REQUIRE(has_zero_diagonal(gen::row_substochastic_s(rng, n, s, true)));
    REQUIRE(is_functional(gen::functional01(rng, n)));
  }
}

TEST_CASE("property: sub-defect partitions omega_n") {
  gen::Rng rng(14);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const Matrix a = t % 4 == 0 ? gen::birkhoff(rng, n) : gen::omega(rng, n);
    const auto r = classify(a);
    REQUIRE(r.sub_defect);
    const long k = *r.sub_defect;
    REQUIRE(k >= 0);
    REQUIRE(k <= static_cast<long>(n));
    // exactly one k with n - k <= sigma < n - k + 1 (k = 0 meaning sigma = n)
    int hits = 0;
    for (long j = 0; j <= static_cast<long>(n); ++j) {
      const bool in = j == 0 ? r.sigma == static_cast<long>(n)
                             : (r.sigma >= static_cast<long>(n) - j && r.sigma < static_cast<long>(n) - j + 1);
      if (in) {
        ++hits;
        REQUIRE(j == k);
      }
    }
    REQUIRE(hits == 1);
  }
}

TEST_CASE("property: direct sums and permutations keep sigma") {
  gen::Rng rng(15);
  for (int t = 0; t < 100; ++t) {
    const Matrix a = gen::nonnegative(rng, 1 + rng() % 4), b = gen::nonnegative(rng, 1 + rng() % 4);
    REQUIRE(sigma(direct_sum({a, b})) == sigma(a) + sigma(b));
    const auto p = gen::permutation(rng, a.order()), q = gen::permutation(rng, a.order());
    const Matrix pa = permute(a, p, q);
    REQUIRE(sigma(pa) == sigma(a));
    std::vector<Rational> x(a.entries().begin(), a.entries().end()), y(pa.entries().begin(), pa.entries().end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    REQUIRE(x == y);
  }
}

TEST_CASE("property: convex combinations stay in omega_n^s") {
  gen::Rng rng(16);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const Rational s = ratio(static_cast<long>(rng() % (2 * n + 1)), 2);
    const Matrix a = gen::omega_s(rng, n, s), b = gen::omega_s(rng, n, s);
    const Rational w = gen::grid_value(rng, 10);
    const Matrix c = w * a + (1 - w) * b;
    REQUIRE(is_doubly_substochastic(c));
    REQUIRE(sigma(c) == s);
  }
}
