#pragma once

#include <optional>
#include <vector>

#include "permlab/matrix.hpp"

namespace permlab {

struct Edge {
  std::size_t target = 0;
  Rational weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Functional digraph: at most one outgoing edge per vertex, no self-loops.
struct WeightedDigraph {
  std::size_t n = 0;
  std::vector<std::optional<Edge>> out_edge;

  friend bool operator==(const WeightedDigraph&, const WeightedDigraph&) = default;
};

struct Cycle {
  std::vector<std::size_t> vertices;  // starts at the smallest vertex, follows the edges
  std::size_t length = 0;
  Rational weight_product;

  friend bool operator==(const Cycle&, const Cycle&) = default;
};

struct CycleDecomposition {
  std::vector<Cycle> cycles;  // ordered by smallest contained vertex

  friend bool operator==(const CycleDecomposition&, const CycleDecomposition&) = default;
};

/// Edge i -> j with weight a_ij for each positive entry. The matrix must be
/// zero-diagonal row substochastic with at most one positive entry per row;
/// the error names the first offending row.
WeightedDigraph build_graph(const Matrix& a);

/// Every directed cycle, each once. Linear time.
CycleDecomposition find_cycles(const WeightedDigraph& g);

/// 1 + (-1)^length * weight_product
Rational cycle_factor(const Cycle& c);

/// per(I - A) as the product of cycle factors.
Rational per_via_cycles(const Matrix& a);

}  // namespace permlab
