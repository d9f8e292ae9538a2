#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permlab/matrix.hpp"

namespace permlab {

enum class BoundSource {
  Malek,                       // 2^floor(n/2) over row substochastic matrices
  FixedSumTheorem,             // max over doubly substochastic matrices with sum s
  SubDefectCorollary,          // supremum over sub-defect k
  RowSubstochasticOddTheorem,  // odd n, n-1 < s <= n, row substochastic
  ConjectureOddStochastic,
  ConjectureOmega3,
  ConjectureOddSubstochastic,
};

enum class Reading { Literal, Consistent };

struct BoundReport {
  std::size_t n = 0;
  Rational s;
  long e = 0;  // greatest even integer <= s
  Rational value;
  BoundSource source = BoundSource::FixedSumTheorem;
  std::optional<Matrix> witness;
  bool hypotheses_met = false;
  bool supremum = false;
  std::optional<Reading> reading;  // conjectures only
  std::vector<std::string> notes;

  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

/// Both readings of a conjecture. Displays default to `consistent`.
struct ConjectureReport {
  BoundReport literal;
  BoundReport consistent;

  friend bool operator==(const ConjectureReport&, const ConjectureReport&) = default;
};

long greatest_even_at_most(const Rational& s);

/// 2^e/2 [1 + ((s - e)/2)^2]
Rational fixed_sum_value(const Rational& s);

Rational malek_bound(std::size_t n);
BoundReport malek_report(std::size_t n);

/// Maximum of per(I - A) over doubly substochastic A with sigma(A) = s,
/// valid when n is even or s <= n - 1. The witness is attached when the
/// hypotheses hold.
BoundReport theorem_bound(std::size_t n, const Rational& s);

/// Supremum over sub-defect k: the fixed-sum value at s = min(n - k + 1, n).
/// k ranges over 1..n for odd n and 0..n for even n.
BoundReport subdefect_bound(std::size_t n, long k);

/// M2 x (e/2) (+) S2 (+) 0, with S2 = (s-e)/2 M2. Throws Precondition when
/// n is odd and s > n - 1 (use the numerical search there).
Matrix construct_extremal(std::size_t n, const Rational& s);

/// (n-3)/2 copies of M2 (+) [[0,1,0],[1,0,0],[0,s-n+1,0]] for odd n and
/// n-1 < s <= n. Row substochastic, never doubly substochastic.
Matrix construct_rowsub_odd(std::size_t n, const Rational& s);
BoundReport rowsub_odd_bound(std::size_t n, const Rational& s);

struct Omega3Candidates {
  Matrix a0;  // (0 1/2 s/2-1; 1/2 0 1/2; s/2-1 1/2 0)
  Matrix a1;  // M2 (+) (s-2)
  Rational value0;  // (s^2 - 5s + 12)/4
  Rational value1;  // 6 - 2s
};

Omega3Candidates omega3_candidates(const Rational& s);

/// max{(s^2 - 5s + 12)/4, 6 - 2s}, the value of the better 3x3 candidate.
/// Defined on [2, 3].
Rational omega3_envelope(const Rational& s);

/// (0 x 1-x; 1-x 0 x; x 1-x 0); per(I - C) = 6x(1-x).
Matrix circulant3(const Rational& x);

/// Nonincreasing sequence in [0, 1].
class SequenceProfile {
public:
  explicit SequenceProfile(std::vector<Rational> values);

  const std::vector<Rational>& values() const noexcept { return values_; }
  const Rational& total() const noexcept { return total_; }

  friend bool operator==(const SequenceProfile&, const SequenceProfile&) = default;

private:
  std::vector<Rational> values_;
  Rational total_;
};

/// 1 + sum over nonempty index sets of the product of squares, computed
/// through the elementary symmetric polynomials of z_i^2.
Rational sequence_objective(const SequenceProfile& z);

/// prod (1 + z_i^2), the factored form of the same quantity.
Rational sequence_product(const SequenceProfile& z);

/// Needs 0 < z_last and z_first < 1. Moves eps = min(1 - z_first, z_last)
/// from the last entry to the first.
SequenceProfile sequence_shift(const SequenceProfile& z);

/// Repeats sequence_shift on the entries strictly between 0 and 1 until at
/// most one such entry is left. Returns every profile visited, input first.
std::vector<SequenceProfile> sequence_ascend(const SequenceProfile& z);

/// 2^floor(s) [1 + frac(s)^2] and the maximizer (1,...,1, frac, 0,...,0).
std::pair<Rational, SequenceProfile> sequence_max(const Rational& s_bar, std::size_t length);

struct LabelingBound {
  Rational value;
  std::vector<std::pair<std::size_t, std::size_t>> pairing;
  bool exhaustive = false;  // maximum over every perfect matching
};

/// Product of (1 + x_a x_b) over the pairs, with x the row sums. Without a
/// pairing, the maximum over all perfect matchings for n <= 10, otherwise the
/// sorted-adjacent pairing.
LabelingBound labeling_bound(const Matrix& a,
                             const std::optional<std::vector<std::pair<std::size_t, std::size_t>>>& pairing = {});

enum class ConjectureKind { OddStochastic, Omega3, OddSubstochastic };

/// `n` is ignored for Omega3, `s` for OddStochastic.
ConjectureReport conjecture_values(ConjectureKind kind, std::size_t n, const Rational& s);

/// True iff s > (-3 + sqrt 57)/2, decided exactly.
bool above_omega3_threshold(const Rational& s);
double omega3_threshold();

std::string to_string(BoundSource s);
std::string to_string(Reading r);

}  // namespace permlab
