#pragma once

// Seeded random matrices with exact rational entries on a 1/denom grid (before
// any mixing step). Samples are convenient, not uniform.

#include <cstdint>
#include <random>

#include "permlab/matrix.hpp"

namespace permlab::gen {

using Rng = std::mt19937_64;

/// k / denom with k uniform in [lo*denom, hi*denom]; lo, hi integers.
Rational grid_value(Rng& rng, long denom, long lo = 0, long hi = 1);

/// Entries in [0, max_entry] on the 1/denom grid.
Matrix nonnegative(Rng& rng, std::size_t n, long denom = 16, long max_entry = 1);

/// Row sums at most 1.
Matrix row_substochastic(Rng& rng, std::size_t n, bool zero_diagonal = false, long denom = 16);

/// Doubly substochastic: a random nonnegative matrix divided by its largest line sum.
Matrix omega(Rng& rng, std::size_t n, bool zero_diagonal = false, long denom = 16);

/// Doubly stochastic: convex combination of up to n random permutation matrices
/// (derangements when zero_diagonal; needs n >= 2 then).
Matrix birkhoff(Rng& rng, std::size_t n, bool zero_diagonal = false);

/// Doubly substochastic with sigma exactly s, 0 <= s <= n. Scales a sample of
/// omega down, or mixes it with a permutation matrix to reach s.
Matrix omega_s(Rng& rng, std::size_t n, const Rational& s, bool zero_diagonal = false);

/// Row substochastic with sigma exactly s, 0 <= s <= n.
Matrix row_substochastic_s(Rng& rng, std::size_t n, const Rational& s, bool zero_diagonal = false);

/// Zero diagonal, at most one positive entry per row, positive entries drawn
/// from `weights` (each in (0, 1]).
Matrix functional(Rng& rng, std::size_t n, std::span<const Rational> weights);

/// Functional with all positive entries equal to 1.
Matrix functional01(Rng& rng, std::size_t n);

/// Random permutation of 0..n-1; a derangement when requested.
std::vector<std::size_t> permutation(Rng& rng, std::size_t n, bool derangement = false);

}  // namespace permlab::gen
