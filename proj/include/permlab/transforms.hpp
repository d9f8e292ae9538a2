#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "permlab/matrix.hpp"
#include "permlab/permanent.hpp"

namespace permlab {

enum class StepKind { EpsilonShift, RowConcentrate, PairUp };

/// One mass move. `indices` lists the source position first, then the
/// destination(s).
struct TransformStep {
  StepKind kind = StepKind::EpsilonShift;
  std::vector<std::pair<std::size_t, std::size_t>> indices;
  Rational epsilon;
  std::optional<Rational> per_before;
  std::optional<Rational> per_after;

  friend bool operator==(const TransformStep&, const TransformStep&) = default;
};

struct TransformResult {
  Matrix matrix;
  std::vector<TransformStep> steps;
};

enum class Preserve { RowSubstochastic, DoublySubstochastic };

/// Moves eps from a_ii to a_ij (i != j, 0 < eps <= a_ii). Row sums and
/// sigma are unchanged and per(I - A) cannot decrease.
Matrix epsilon_shift(const Matrix& a, std::size_t i, std::size_t j, const Rational& eps);

/// Empties the diagonal with epsilon shifts, staying inside the class named
/// by `preserve`. Row mode sends each diagonal mass to the largest
/// off-diagonal entry of its row (lowest column on ties). Doubly mode fills
/// the columns with the most slack first, splitting when one is not enough,
/// and throws Infeasible naming the row when the slack runs out.
TransformResult zero_diagonalize(const Matrix& a, Preserve preserve, const EngineLimits& limits = {});

/// Leaves at most one positive entry per row. In each row every positive
/// entry is merged into the column t minimising per((I-A)(k|t)) (lowest
/// column on ties); since per(I-A) is affine in row k with those minors as
/// negated coefficients, every merge is non-decreasing. Needs a zero-diagonal row
/// substochastic input within the exact guard.
TransformResult concentrate_rows(const Matrix& a, const EngineLimits& limits = {});

/// Rearranges a zero-diagonal matrix with at most one positive entry per row
/// into 2x2 antidiagonal blocks followed by zeros. Even cycles are paired
/// along the cycle, odd cycles give up their last edge to a pool together
/// with the acyclic edges, the pool is paired in order, and a leftover
/// element x becomes the block (0 x/2; x/2 0).
Matrix pair_up(const Matrix& a);

}  // namespace permlab
