#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "zpr/ring.hpp"

namespace zpr {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix of canonical residues. The ring is passed to the
/// operations that need it rather than stored.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  /// Builds from explicit rows; all rows must have `cols` entries.
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Scalar operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Scalar> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  Vector row_vector(std::size_t i) const { return Vector(row(i).begin(), row(i).end()); }
  std::vector<Vector> row_vectors() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// u * A for a row vector u.
Vector left_multiply(const RingParams& ring, std::span<const Scalar> u, const Matrix& a);
/// Number of nonzero entries.
std::size_t weight(std::span<const Scalar> v) noexcept;

/// Echelon form over the chain ring Z_{p^r} obtained by full pivoting on the
/// entry of least p-valuation.
///
/// Rows live in permuted column coordinates: `perm[t]` is the input column
/// stored at position t. Row t has its pivot at position t, equal to
/// p^{valuations[t]}, zeros to its left, and every entry divisible by that
/// same power. Entries above a pivot are reduced to [0, p^{valuations[t]}).
/// `transform[t]` expresses row t as a combination of the input rows;
/// `kernel` generates the left kernel of the input.
struct Echelon {
  std::size_t cols = 0;
  std::vector<std::size_t> perm;
  std::vector<Vector> rows;
  std::vector<int> valuations;
  std::vector<Vector> transform;
  std::vector<Vector> kernel;

  std::size_t rank() const noexcept { return rows.size(); }
};

Echelon echelon(const RingParams& ring, const std::vector<Vector>& rows, std::size_t cols);

/// Coefficients c (one per input row of `e`) with c * input = target, or
/// nullopt when target is outside the row span.
std::optional<Vector> solve_left(const RingParams& ring, const Echelon& e, std::span<const Scalar> target);

inline bool in_row_span(const RingParams& ring, const Echelon& e, std::span<const Scalar> target) {
  return solve_left(ring, e, target).has_value();
}

/// Solver for x * A = b over the prime field Z_p, with enumeration of the
/// whole affine solution set. A is given mod p.
class FieldSolver {
 public:
  FieldSolver(Scalar p, const Matrix& a);

  std::size_t free_dimension() const noexcept { return free_vars_.size(); }
  std::size_t rank() const noexcept { return pivot_vars_.size(); }

  /// A particular solution (free variables zero), or nullopt if inconsistent.
  std::optional<Vector> particular(std::span<const Scalar> b) const;
  /// Calls `visit` for every solution x in [0, p)^k; stops early when visit
  /// returns false. Returns false iff stopped early.
  template <typename Visit>
  bool for_each_solution(std::span<const Scalar> b, Visit&& visit) const;

 private:
  Scalar p_;
  std::size_t k_;
  std::size_t n_;
  Matrix reduced_;   // RREF of A^T, n x k
  Matrix ops_;       // E with E * A^T = reduced_
  std::vector<std::size_t> pivot_vars_;
  std::vector<std::size_t> free_vars_;
  std::vector<Vector> null_basis_;
};

template <typename Visit>
bool FieldSolver::for_each_solution(std::span<const Scalar> b, Visit&& visit) const {
  auto base = particular(b);
  if (!base) return true;
  const std::size_t f = null_basis_.size();
  std::vector<Scalar> counter(f, 0);
  Vector x(k_);
  while (true) {
    for (std::size_t i = 0; i < k_; ++i) {
      Scalar s = (*base)[i];
      for (std::size_t t = 0; t < f; ++t) s += counter[t] * null_basis_[t][i];
      x[i] = s % p_;
    }
    if (!visit(static_cast<const Vector&>(x))) return false;
    std::size_t t = f;
    while (t > 0) {
      --t;
      if (++counter[t] < p_) break;
      counter[t] = 0;
      if (t == 0) return true;
    }
    if (f == 0) return true;
  }
}

}  // namespace zpr
