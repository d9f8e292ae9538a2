#include <doctest.h>

#include "../support/bridge.hpp"
#include "permlab/cycles.hpp"
#include "permlab/errors.hpp"
#include "permlab/generators.hpp"
#include "permlab/permanent.hpp"
#include "permlab/transforms.hpp"

using namespace permlab;

namespace {

// Every functional matrix on n vertices with weights from w: each row picks
// nothing or one (column, weight) pair off the diagonal.
template <typename F>
void for_each_functional(std::size_t n, const std::vector<Rational>& w, F&& f) {
  const std::size_t choices = 1 + (n - 1) * w.size();
  std::vector<std::size_t> pick(n, 0);
  for (;;) {
    std::vector<Rational> e(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i] == 0) continue;
      const std::size_t c = (pick[i] - 1) / w.size(), k = (pick[i] - 1) % w.size();
      e[i * n + (c >= i ? c + 1 : c)] = w[k];
    }
    f(Matrix(n, std::move(e)));
    std::size_t i = 0;
    while (i < n && ++pick[i] == choices) pick[i++] = 0;
    if (i == n) return;
  }
}

}  // namespace

TEST_CASE("build_graph") {
  const auto empty = build_graph(Matrix::zero(4));
  CHECK(empty.n == 4);
  for (const auto& e : empty.out_edge) CHECK_FALSE(e);

  const auto two = build_graph(swap_block());
  REQUIRE(two.out_edge[0]);
  CHECK(two.out_edge[0]->target == 1);
  CHECK(two.out_edge[0]->weight == 1);
  CHECK(two.out_edge[1]->target == 0);

  const auto three = find_cycles(build_graph(make_matrix(3, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})));
  REQUIRE(three.cycles.size() == 1);
  CHECK(three.cycles[0].length == 3);
  CHECK(three.cycles[0].vertices == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("build_graph names the offending row") {
  auto message = [](const Matrix& a) {
    try {
      build_graph(a);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Precondition);
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(make_matrix(3, {{0, 0, 0}, {0, 0, 0}, {ratio(1, 2), ratio(1, 2), 0}})).find("row 2") !=
        std::string::npos);
  CHECK(message(make_matrix(2, {{0, 0}, {0, ratio(1, 2)}})).find("row 1") != std::string::npos);
  CHECK(message(make_matrix(2, {{0, 2}, {0, 0}})).find("row 0") != std::string::npos);
}

TEST_CASE("find_cycles") {
  CHECK(find_cycles(build_graph(Matrix::zero(3))).cycles.empty());
  CHECK(find_cycles(build_graph(make_matrix(3, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}))).cycles.empty());
  const Rational x1 = ratio(1, 2), x2 = ratio(2, 3), x3 = ratio(1, 4), x4 = 1;
  const Matrix a = direct_sum({make_matrix(2, {{0, x1}, {x2, 0}}), make_matrix(2, {{0, x3}, {x4, 0}})});
  const auto d = find_cycles(build_graph(a));
  REQUIRE(d.cycles.size() == 2);
  CHECK(d.cycles[0].weight_product == x1 * x2);
  CHECK(d.cycles[1].weight_product == x3 * x4);
  CHECK(d.cycles[1].vertices == std::vector<std::size_t>{2, 3});
}

TEST_CASE("cycles come out rotated to their smallest vertex and sorted") {
  // 3 -> 1 -> 4 -> 3 and 0 -> 2 -> 0
  std::vector<Rational> e(25);
  e[3 * 5 + 1] = 1;
  e[1 * 5 + 4] = 1;
  e[4 * 5 + 3] = 1;
  e[0 * 5 + 2] = 1;
  e[2 * 5 + 0] = 1;
  const auto d = find_cycles(build_graph(Matrix(5, e)));
  REQUIRE(d.cycles.size() == 2);
  CHECK(d.cycles[0].vertices == std::vector<std::size_t>{0, 2});
  CHECK(d.cycles[1].vertices == std::vector<std::size_t>{1, 4, 3});
}

TEST_CASE("per_via_cycles") {
  CHECK(per_via_cycles(make_matrix(3, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}})) == 1);
  const Rational a = ratio(1, 2), b = ratio(3, 4), c = ratio(1, 3);
  CHECK(per_via_cycles(make_matrix(3, {{0, a, 0}, {0, 0, b}, {c, 0, 0}})) == 1 - a * b * c);
  CHECK(per_via_cycles(direct_sum({swap_block(), swap_block(), ratio(1, 2) * swap_block(), Matrix::zero(3)})) == 5);
}

TEST_CASE("pair_up") {
  const Matrix canon = direct_sum({swap_block(), Matrix::zero(2)});
  CHECK(pair_up(canon) == canon);

  const Rational x = ratio(2, 3);
  const Matrix single = make_matrix(3, {{0, x, 0}, {0, 0, 0}, {0, 0, 0}});
  const Matrix split = pair_up(single);
  CHECK(split == direct_sum({(x / 2) * swap_block(), Matrix::zero(1)}));
  CHECK(per_i_minus(split) == 1 + x * x / 4);
  CHECK(per_i_minus(single) == 1);

  // a 3-cycle needs a fourth row for the split block
  const Rational a = ratio(1, 2), b = ratio(3, 4), c = ratio(1, 3);
  const Matrix cyc = make_matrix(4, {{0, a, 0, 0}, {0, 0, b, 0}, {c, 0, 0, 0}, {0, 0, 0, 0}});
  const Matrix paired = pair_up(cyc);
  CHECK(paired == direct_sum({make_matrix(2, {{0, a}, {b, 0}}), (c / 2) * swap_block()}));
  CHECK(per_i_minus(paired) == (1 + a * b) * (1 + c * c / 4));
  CHECK(per_i_minus(paired) == ratio(407, 288));
  CHECK(per_i_minus(cyc) == ratio(7, 8));

  try {
    pair_up(make_matrix(3, {{0, a, 0}, {0, 0, b}, {c, 0, 0}}));
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
}

// ---- properties ----

TEST_CASE("property: cycle formula on every small functional digraph") {
  const std::vector<Rational> w = {ratio(1, 4), ratio(1, 2), ratio(3, 4), 1};
  std::size_t count = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for_each_functional(n, w, [&](const Matrix& a) {
      ++count;
      REQUIRE(per_via_cycles(a) == per_i_minus(a));
    });
  CHECK(count == 1 + 25 + 729 + 28561);
}

TEST_CASE("property: cycle formula on random functional matrices up to order 12") {
  gen::Rng rng(31);
  for (int t = 0; t < 120; ++t) {
    const Matrix a = gen::functional01(rng, 1 + rng() % 12);
    REQUIRE(per_via_cycles(a) == per_i_minus(a));
  }
}

TEST_CASE("property: removing a cycle divides out its factor") {
  gen::Rng rng(32);
  const std::vector<Rational> w = {ratio(1, 3), ratio(1, 2), ratio(5, 6), 1};
  for (int t = 0; t < 80; ++t) {
    const Matrix a = gen::functional(rng, 2 + rng() % 7, w);
    const auto d = find_cycles(build_graph(a));
    for (const auto& c : d.cycles) {
      if (c.length == a.order()) continue;
      const Matrix rest = submatrix_without(a, c.vertices, c.vertices);
      const Rational full = per_i_minus(a);
      REQUIRE(full == per_i_minus(rest) * cycle_factor(c));
      REQUIRE(full == oracle_per_i_minus(a));
    }
  }
}

TEST_CASE("property: pairing never lowers the value and is strict for an odd count") {
  gen::Rng rng(33);
  const std::vector<Rational> w = {ratio(1, 4), ratio(1, 2), ratio(2, 3), 1};
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 7;
    const Matrix a = gen::functional(rng, n, w);
    Matrix out(1);
    try {
      out = pair_up(a);
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::Precondition);
      continue;
    }
    std::size_t positives = 0;
    for (const auto& x : a.entries()) positives += sgn(x) > 0 ? 1 : 0;
    REQUIRE(sigma(out) == sigma(a));
    if (positives % 2)
      REQUIRE(per_i_minus(out) > per_i_minus(a));
    else
      REQUIRE(per_i_minus(out) >= per_i_minus(a));
    REQUIRE(pair_up(out) == out);
  }
}
