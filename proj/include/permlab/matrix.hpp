#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "permlab/rational.hpp"

namespace permlab {

/// Dense square matrix of exact rationals, row-major. Values are immutable
/// once built; every operation returns a new matrix.
class Matrix {
public:
  /// Zero matrix of order n (n >= 1).
  explicit Matrix(std::size_t n);

  /// Row-major entries; throws Dimension unless entries.size() == n*n.
  Matrix(std::size_t n, std::vector<Rational> entries);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t n) { return Matrix(n); }

  std::size_t order() const noexcept { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::span<const Rational> entries() const noexcept { return a_; }
  std::span<const Rational> row(std::size_t i) const { return std::span(a_).subspan(i * n_, n_); }

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t n_;
  std::vector<Rational> a_;
};

/// Builds a matrix from a grid of rows; the grid must be exactly n x n.
Matrix make_matrix(std::size_t n, const std::vector<std::vector<Rational>>& rows);

Rational sigma(const Matrix& a);
std::vector<Rational> row_sums(const Matrix& a);
std::vector<Rational> col_sums(const Matrix& a);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& t, const Matrix& a);

/// I - A.
Matrix i_minus(const Matrix& a);

/// Block-diagonal assembly. At least one block.
Matrix direct_sum(std::span<const Matrix> blocks);
Matrix direct_sum(std::initializer_list<Matrix> blocks);

/// Returns P A Q where row i of the result is row row_perm[i] of A and
/// column j is column col_perm[j] of A. Permutations are 0-based.
Matrix permute(const Matrix& a, std::span<const std::size_t> row_perm, std::span<const std::size_t> col_perm);

/// Drops the listed rows and columns (each list sorted or not, duplicates rejected).
Matrix submatrix_without(const Matrix& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols);

struct ClassificationReport {
  bool nonnegative = false;
  bool row_substochastic = false;
  bool doubly_substochastic = false;
  bool doubly_stochastic = false;
  bool zero_diagonal = false;
  bool at_most_one_positive_per_row = false;
  Rational sigma;
  /// ceil(n - sigma); present only for doubly substochastic input.
  std::optional<long> sub_defect;

  friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

ClassificationReport classify(const Matrix& a);

bool is_nonnegative(const Matrix& a);
bool is_row_substochastic(const Matrix& a);
bool is_doubly_substochastic(const Matrix& a);
bool has_zero_diagonal(const Matrix& a);
bool at_most_one_positive_per_row(const Matrix& a);
/// Zero-diagonal row substochastic with at most one positive entry per row.
bool is_functional(const Matrix& a);

/// The 2x2 block [[0,1],[1,0]].
Matrix swap_block();

// Text format: first line n, then n lines of n rational tokens.
Matrix read_matrix(std::istream& in);
Matrix parse_matrix(const std::string& text);
Matrix load_matrix(const std::string& path);
void write_matrix(std::ostream& out, const Matrix& a);
std::string format_matrix(const Matrix& a);

/// Dense double-precision matrix used by the search layer.
struct RealMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  RealMatrix() = default;
  explicit RealMatrix(std::size_t order) : n(order), a(order * order, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  friend bool operator==(const RealMatrix&, const RealMatrix&) = default;
};

RealMatrix to_real(const Matrix& a);
RealMatrix i_minus(const RealMatrix& a);
/// Each entry rounded to the nearest multiple of 2^-bits.
Matrix rationalize(const RealMatrix& a, unsigned bits);

}  // namespace permlab
