#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "permlab/matrix.hpp"
#include "permlab/rational.hpp"

namespace permlab {

/// Order limits for the evaluators. Exceeding one raises ErrorKind::Guard.
struct EngineLimits {
  std::size_t naive_max = 9;
  std::size_t exact_max = 14;
  std::size_t float_max = 30;
};

/// Per-level decomposition of Ryser's inclusion-exclusion formula:
/// level m is (-1)^m times the sum, over every choice of m zeroed columns,
/// of the product of the remaining row sums.
struct RyserTrace {
  std::vector<Rational> per_level_sums;  // m = 0 .. n-1
  Rational total;

  friend bool operator==(const RyserTrace&, const RyserTrace&) = default;
};

/// Sum over all n! permutations. Reference oracle only.
Rational permanent_naive(const Matrix& a, const EngineLimits& limits = {});

/// Exact Ryser evaluation exposing every level. Internally clears
/// denominators and walks column subsets in Gray-code order over integers.
RyserTrace permanent_ryser(const Matrix& a, const EngineLimits& limits = {});

/// permanent_ryser(a).total
Rational permanent(const Matrix& a, const EngineLimits& limits = {});

/// per(I - A) on the exact path.
Rational per_i_minus(const Matrix& a, const EngineLimits& limits = {});

/// Floating-point Ryser kernel (Nijenhuis-Wilf centred form, Gray-code
/// subset walk, long double accumulation). O(2^(n-1) n).
double permanent_gray(const RealMatrix& a, const EngineLimits& limits = {});

/// Exact determinant by Bareiss fraction-free elimination.
Rational determinant(const Matrix& a);

struct ReplacedRowCheck {
  std::uint64_t columns = 0;  // bit j set: column j zeroed
  std::size_t row = 0;        // a row whose own column is zeroed
  bool nonpositive = false;

  friend bool operator==(const ReplacedRowCheck&, const ReplacedRowCheck&) = default;
};

/// Clause-by-clause check of the sign pattern of Ryser terms for P = I - A.
struct SignStructureReport {
  std::vector<bool> row_sum_nonneg;                 // r_i(P) >= 0
  std::vector<ReplacedRowCheck> replaced_row_nonpos;  // r_i(P(J)) <= 0 for i in J
  std::vector<bool> level_sign_ok;                  // sign S(P(J)) = (-1)^|J|, per |J|
  std::size_t subsets_checked = 0;
  bool exhaustive = false;

  bool all_ok() const;
};

inline constexpr std::uint64_t kSignStructureSeed = 0x5eed'0f'91e5ULL;

/// Requires A doubly substochastic. Exhaustive over all column subsets when
/// 2^n <= 2^16, otherwise `subset_samples` uniform subsets drawn with
/// kSignStructureSeed.
SignStructureReport check_sign_structure(const Matrix& a, std::size_t subset_samples = 4096);

}  // namespace permlab
