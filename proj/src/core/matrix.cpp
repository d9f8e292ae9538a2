#include "permlab/matrix.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "permlab/errors.hpp"

namespace permlab {

Matrix::Matrix(std::size_t n) : n_(n), a_(n * n) {
  require(n >= 1, ErrorKind::Dimension, "matrix order must be at least 1");
}

Matrix::Matrix(std::size_t n, std::vector<Rational> entries) : n_(n), a_(std::move(entries)) {
  require(n >= 1, ErrorKind::Dimension, "matrix order must be at least 1");
  require(a_.size() == n * n, ErrorKind::Dimension,
          "expected " + std::to_string(n * n) + " entries, got " + std::to_string(a_.size()));
  for (auto& x : a_) x.canonicalize();
}

Matrix Matrix::identity(std::size_t n) {
  std::vector<Rational> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return Matrix(n, std::move(e));
}

Matrix make_matrix(std::size_t n, const std::vector<std::vector<Rational>>& rows) {
  require(rows.size() == n, ErrorKind::Dimension,
          "expected " + std::to_string(n) + " rows, got " + std::to_string(rows.size()));
  std::vector<Rational> e;
  e.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    require(rows[i].size() == n, ErrorKind::Dimension,
            "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) + " entries, expected " +
                std::to_string(n));
    e.insert(e.end(), rows[i].begin(), rows[i].end());
  }
  return Matrix(n, std::move(e));
}

Rational sigma(const Matrix& a) {
  Rational s = 0;
  for (const auto& x : a.entries()) s += x;
  return s;
}

std::vector<Rational> row_sums(const Matrix& a) {
  const std::size_t n = a.order();
  std::vector<Rational> r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i] += a(i, j);
  return r;
}

std::vector<Rational> col_sums(const Matrix& a) {
  const std::size_t n = a.order();
  std::vector<Rational> c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[j] += a(i, j);
  return c;
}

namespace {

template <typename Op>
Matrix zip(const Matrix& a, const Matrix& b, Op op) {
  require(a.order() == b.order(), ErrorKind::Dimension, "order mismatch");
  std::vector<Rational> e(a.entries().size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = op(a.entries()[k], b.entries()[k]);
  return Matrix(a.order(), std::move(e));
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  return zip(a, b, [](const Rational& x, const Rational& y) -> Rational { return x + y; });
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  return zip(a, b, [](const Rational& x, const Rational& y) -> Rational { return x - y; });
}

Matrix operator*(const Rational& t, const Matrix& a) {
  std::vector<Rational> e(a.entries().begin(), a.entries().end());
  for (auto& x : e) x *= t;
  return Matrix(a.order(), std::move(e));
}

Matrix i_minus(const Matrix& a) { return Matrix::identity(a.order()) - a; }

Matrix direct_sum(std::span<const Matrix> blocks) {
  require(!blocks.empty(), ErrorKind::Dimension, "direct_sum needs at least one block");
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.order();
  std::vector<Rational> e(n * n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.order(); ++i)
      for (std::size_t j = 0; j < b.order(); ++j) e[(off + i) * n + off + j] = b(i, j);
    off += b.order();
  }
  return Matrix(n, std::move(e));
}

Matrix direct_sum(std::initializer_list<Matrix> blocks) {
  return direct_sum(std::span<const Matrix>(blocks.begin(), blocks.size()));
}

namespace {

void check_permutation(std::span<const std::size_t> p, std::size_t n, const char* what) {
  require(p.size() == n, ErrorKind::Dimension,
          std::string(what) + " permutation has length " + std::to_string(p.size()) + ", expected " +
              std::to_string(n));
  std::vector<bool> seen(n, false);
  for (auto v : p) {
    require(v < n && !seen[v], ErrorKind::Dimension, std::string(what) + " permutation is malformed");
    seen[v] = true;
  }
}

}  // namespace

Matrix permute(const Matrix& a, std::span<const std::size_t> row_perm, std::span<const std::size_t> col_perm) {
  const std::size_t n = a.order();
  check_permutation(row_perm, n, "row");
  check_permutation(col_perm, n, "column");
  std::vector<Rational> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = a(row_perm[i], col_perm[j]);
  return Matrix(n, std::move(e));
}

Matrix submatrix_without(const Matrix& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  const std::size_t n = a.order();
  std::vector<bool> drop_r(n, false), drop_c(n, false);
  for (auto r : rows) {
    require(r < n && !drop_r[r], ErrorKind::Dimension, "bad row index list");
    drop_r[r] = true;
  }
  for (auto c : cols) {
    require(c < n && !drop_c[c], ErrorKind::Dimension, "bad column index list");
    drop_c[c] = true;
  }
  require(rows.size() == cols.size() && rows.size() < n, ErrorKind::Dimension,
          "submatrix must stay square and nonempty");
  const std::size_t m = n - rows.size();
  std::vector<Rational> e;
  e.reserve(m * m);
  for (std::size_t i = 0; i < n; ++i) {
    if (drop_r[i]) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (!drop_c[j]) e.push_back(a(i, j));
  }
  return Matrix(m, std::move(e));
}

bool is_nonnegative(const Matrix& a) {
  for (const auto& x : a.entries())
    if (sgn(x) < 0) return false;
  return true;
}

bool is_row_substochastic(const Matrix& a) {
  if (!is_nonnegative(a)) return false;
  for (const auto& r : row_sums(a))
    if (r > 1) return false;
  return true;
}

bool is_doubly_substochastic(const Matrix& a) {
  if (!is_row_substochastic(a)) return false;
  for (const auto& c : col_sums(a))
    if (c > 1) return false;
  return true;
}

bool has_zero_diagonal(const Matrix& a) {
  for (std::size_t i = 0; i < a.order(); ++i)
    if (sgn(a(i, i)) != 0) return false;
  return true;
}

bool at_most_one_positive_per_row(const Matrix& a) {
  for (std::size_t i = 0; i < a.order(); ++i) {
    int count = 0;
    for (const auto& x : a.row(i)) count += sgn(x) > 0;
    if (count > 1) return false;
  }
  return true;
}

bool is_functional(const Matrix& a) {
  return is_row_substochastic(a) && has_zero_diagonal(a) && at_most_one_positive_per_row(a);
}

ClassificationReport classify(const Matrix& a) {
  ClassificationReport r;
  r.nonnegative = is_nonnegative(a);
  r.row_substochastic = is_row_substochastic(a);
  r.doubly_substochastic = is_doubly_substochastic(a);
  r.zero_diagonal = has_zero_diagonal(a);
  r.at_most_one_positive_per_row = at_most_one_positive_per_row(a);
  r.sigma = sigma(a);
  if (r.doubly_substochastic) {
    const Rational n(static_cast<long>(a.order()));
    r.doubly_stochastic = r.sigma == n;
    r.sub_defect = ceil_of(n - r.sigma).get_si();
  }
  return r;
}

Matrix swap_block() { return make_matrix(2, {{0, 1}, {1, 0}}); }

Matrix read_matrix(std::istream& in) {
  long long n = 0;
  std::string tok;
  require(static_cast<bool>(in >> tok), ErrorKind::Parse, "missing matrix order");
  try {
    std::size_t pos = 0;
    n = std::stoll(tok, &pos);
    require(pos == tok.size(), ErrorKind::Parse, "malformed matrix order '" + tok + "'");
  } catch (const std::logic_error&) {
    fail(ErrorKind::Parse, "malformed matrix order '" + tok + "'");
  }
  require(n >= 1, ErrorKind::Parse, "matrix order must be positive");
  const auto order = static_cast<std::size_t>(n);
  std::vector<Rational> e;
  e.reserve(order * order);
  for (std::size_t k = 0; k < order * order; ++k) {
    require(static_cast<bool>(in >> tok), ErrorKind::Parse,
            "expected " + std::to_string(order * order) + " entries, found " + std::to_string(k));
    e.push_back(parse_rational(tok));
  }
  require(!(in >> tok), ErrorKind::Parse, "trailing token '" + tok + "' after matrix entries");
  return Matrix(order, std::move(e));
}

Matrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::Io, "cannot read matrix file '" + path + "'");
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& a) {
  const std::size_t n = a.order();
  out << n << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << to_string(a(i, j));
    out << '\n';
  }
}

std::string format_matrix(const Matrix& a) {
  std::ostringstream out;
  write_matrix(out, a);
  return out.str();
}

RealMatrix to_real(const Matrix& a) {
  RealMatrix r(a.order());
  for (std::size_t k = 0; k < r.a.size(); ++k) r.a[k] = a.entries()[k].get_d();
  return r;
}

RealMatrix i_minus(const RealMatrix& a) {
  RealMatrix r(a.n);
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j) r(i, j) = (i == j ? 1.0 : 0.0) - a(i, j);
  return r;
}

Matrix rationalize(const RealMatrix& a, unsigned bits) {
  std::vector<Rational> e;
  e.reserve(a.a.size());
  for (double x : a.a) e.push_back(rationalize(x, bits));
  return Matrix(a.n, std::move(e));
}

}  // namespace permlab
