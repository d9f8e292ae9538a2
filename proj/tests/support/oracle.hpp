#pragma once

// Reference implementations that share no code with the library engines.

#include <gmpxx.h>

#include <vector>

namespace oracle {

using Q = mpq_class;
using Grid = std::vector<std::vector<Q>>;

inline Q q(long p, long d = 1) {
  Q r(p, d);
  r.canonicalize();
  return r;
}

// Laplace expansion along the first row.
inline Q permanent(const Grid& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Q total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c] == 0) continue;
    Grid minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Q> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(std::move(row));
    }
    total += a[0][c] * permanent(minor);
  }
  return total;
}

// Gaussian elimination over the rationals.
inline Q determinant(Grid a) {
  const std::size_t n = a.size();
  Q det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Q f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

inline Grid i_minus(const Grid& a) {
  Grid p = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) p[i][j] = (i == j ? Q(1) : Q(0)) - a[i][j];
  return p;
}

}  // namespace oracle
