#pragma once

#include "oracle.hpp"
#include "permlab/matrix.hpp"

inline oracle::Grid to_grid(const permlab::Matrix& a) {
  oracle::Grid g(a.order());
  for (std::size_t i = 0; i < a.order(); ++i) g[i].assign(a.row(i).begin(), a.row(i).end());
  return g;
}

inline oracle::Q oracle_per_i_minus(const permlab::Matrix& a) { return oracle::permanent(oracle::i_minus(to_grid(a))); }
