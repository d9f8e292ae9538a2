#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permlab/matrix.hpp"

namespace permlab {

enum class SearchClass { DoublySubstochasticFixedSum, DoublyStochastic };

struct SearchConfig {
  std::size_t n = 3;
  double s = 3.0;
  SearchClass cls = SearchClass::DoublyStochastic;
  std::size_t restarts = 64;
  std::size_t steps_per_restart = 20000;
  double initial_step = 0.25;
  double step_decay = 0.9995;
  double tolerance = 1e-10;
  std::uint64_t seed = 20240607;

  friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

/// Default budget for (n, s); the class is DoublyStochastic when s == n.
SearchConfig default_config(std::size_t n, double s);

/// Throws Precondition on an inconsistent config.
void validate(const SearchConfig& c);

inline constexpr std::size_t kSearchMaxOrder = 12;
inline constexpr double kRepairThreshold = 1e-12;
inline constexpr std::size_t kRepairMaxRounds = 1000;

struct RepairResult {
  RealMatrix matrix;
  bool feasible = false;
  std::size_t rounds = 0;
  double violation = 0.0;
};

/// Largest constraint violation of M for the class at target sum s:
/// negativity, diagonal mass, line sums over 1 (or off 1 for the stochastic
/// class) and |sigma - s|.
double feasibility_violation(const RealMatrix& m, double s, SearchClass cls);

/// Round-based projection toward the zero-diagonal slice of the class with
/// sum s. Fixed-sum rounds: clamp negatives, zero the diagonal, cap rows and
/// columns at 1, restore the total (down by scaling; up by scaling when that
/// keeps every line within 1, otherwise by filling line slack). Stochastic
/// rounds: clamp, zero the diagonal, then Sinkhorn row/column normalisation.
/// Stops once the violation is at most 1e-12 or after 1000 rounds.
RepairResult repair(const RealMatrix& m, double s, SearchClass cls);

struct SearchResult {
  RealMatrix best_matrix;
  double best_value = 0.0;
  std::optional<double> formula_value;
  std::optional<double> gap;
  std::string formula_source;
  std::size_t evaluations = 0;
  std::vector<double> per_restart_bests;
  std::size_t best_restart = 0;
  bool feasible = false;
  /// per(I - R) for R = best matrix rounded to the 2^-20 grid, exact.
  std::optional<Rational> rationalized_value;
  SearchConfig config;

  friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

/// Multistart strict-ascent search of per(I - A). Restart r draws from a
/// generator seeded with seed + r; restarts run on `threads` workers (0 means
/// hardware concurrency) and merge by maximum value, lowest restart index on
/// ties, so the result does not depend on scheduling. Fixed-sum moves shift
/// mass between two off-diagonal entries; doubly stochastic moves add
/// delta (P - Q) for a random derangement P and a permutation Q inside the
/// support, so line sums never drift.
SearchResult maximize(const SearchConfig& config, unsigned threads = 1);

/// Proven or conjectured closed form for the config's (n, s, class), if any.
std::optional<std::pair<double, std::string>> formula_for(const SearchConfig& config);

struct Omega3GridResult {
  double s = 0.0;
  double grid_step = 0.125;
  std::size_t points_feasible = 0;
  std::optional<Matrix> best_matrix;
  std::optional<Rational> best_value;
  double candidate_quadratic = 0.0;  // (s^2 - 5s + 12)/4
  double candidate_linear = 0.0;     // 6 - 2s
  double envelope = 0.0;             // max of the two
  std::vector<std::string> notes;

  friend bool operator==(const Omega3GridResult&, const Omega3GridResult&) = default;
};

/// Exhaustive search over zero-diagonal doubly substochastic 3x3 matrices with
/// entries on the grid {0, h, 2h, ..., 1}, |sigma - s| <= h/2, exact scoring.
/// Needs 1/h an integer no larger than 16 and s in [2, 3].
Omega3GridResult exhaustive_omega3(double s, double grid_step = 0.125);

struct EvidenceRow {
  double s = 0.0;
  double observed = 0.0;
  double conjectured_grid = 0.0;     // 2^((n-3)/2) * grid maximum at s - n + 3
  double conjectured_formula = 0.0;  // 2^((n-3)/2) * envelope(s - n + 3)
  double difference = 0.0;           // observed - conjectured_grid
  bool feasible = false;

  friend bool operator==(const EvidenceRow&, const EvidenceRow&) = default;
};

struct EvidenceReport {
  std::size_t n = 0;
  std::vector<EvidenceRow> rows;
  std::vector<std::string> notes;

  friend bool operator==(const EvidenceReport&, const EvidenceReport&) = default;
};

/// Observed search maxima against the block conjecture for odd n in {3,5,7}
/// and s in (n-1, n]. `base` supplies the budget and seed; n, s and class
/// are overridden per row.
EvidenceReport evidence_report(std::size_t n, const std::vector<double>& s_grid,
                               const std::optional<SearchConfig>& base = {}, unsigned threads = 1);

std::string to_string(SearchClass c);
SearchClass parse_search_class(const std::string& s);

}  // namespace permlab
