#include "permlab/cycles.hpp"

#include <algorithm>

#include "permlab/errors.hpp"

namespace permlab {

WeightedDigraph build_graph(const Matrix& a) {
  const std::size_t n = a.order();
  WeightedDigraph g{n, std::vector<std::optional<Edge>>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const auto where = "row " + std::to_string(i) + ": ";
    require(sgn(a(i, i)) == 0, ErrorKind::Precondition, where + "nonzero diagonal entry");
    Rational sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = a(i, j);
      require(sgn(x) >= 0, ErrorKind::Precondition, where + "negative entry");
      if (sgn(x) == 0) continue;
      require(!g.out_edge[i], ErrorKind::Precondition, where + "more than one positive entry");
      g.out_edge[i] = Edge{j, x};
      sum += x;
    }
    require(sum <= 1, ErrorKind::Precondition, where + "row sum exceeds 1");
  }
  return g;
}

CycleDecomposition find_cycles(const WeightedDigraph& g) {
  enum Color : unsigned char { White, Grey, Black };
  std::vector<Color> color(g.n, White);
  CycleDecomposition d;
  std::vector<std::size_t> path;
  for (std::size_t start = 0; start < g.n; ++start) {
    if (color[start] != White) continue;
    path.clear();
    std::size_t v = start;
    while (true) {
      color[v] = Grey;
      path.push_back(v);
      if (!g.out_edge[v]) break;
      const std::size_t w = g.out_edge[v]->target;
      if (color[w] == Black) break;
      if (color[w] == Grey) {
        // w is on the current path: the tail from w closes a cycle.
        Cycle c;
        auto it = std::find(path.begin(), path.end(), w);
        c.vertices.assign(it, path.end());
        std::rotate(c.vertices.begin(), std::min_element(c.vertices.begin(), c.vertices.end()), c.vertices.end());
        c.length = c.vertices.size();
        c.weight_product = 1;
        for (auto u : c.vertices) c.weight_product *= g.out_edge[u]->weight;
        d.cycles.push_back(std::move(c));
        break;
      }
      v = w;
    }
    for (auto u : path) color[u] = Black;
  }
  std::sort(d.cycles.begin(), d.cycles.end(),
            [](const Cycle& x, const Cycle& y) { return x.vertices.front() < y.vertices.front(); });
  return d;
}

Rational cycle_factor(const Cycle& c) {
  return c.length % 2 ? Rational(1 - c.weight_product) : Rational(1 + c.weight_product);
}

Rational per_via_cycles(const Matrix& a) {
  Rational p = 1;
  for (const auto& c : find_cycles(build_graph(a)).cycles) p *= cycle_factor(c);
  return p;
}

}  // namespace permlab
