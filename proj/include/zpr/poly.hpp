#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "zpr/matrix.hpp"
#include "zpr/ring.hpp"

namespace zpr {

/// Degree of a polynomial object; nullopt stands for the degree of zero
/// (minus infinity).
using Degree = std::optional<std::size_t>;

/// A scalar polynomial over Z_{p^r}, coefficients by ascending power of D,
/// trailing zeros trimmed. The zero polynomial is empty.
using Poly = std::vector<Scalar>;

void trim(Poly& a);
Poly poly_add(const RingParams& ring, const Poly& a, const Poly& b);
Poly poly_sub(const RingParams& ring, const Poly& a, const Poly& b);
Poly poly_mul(const RingParams& ring, const Poly& a, const Poly& b);
Poly poly_scale(const RingParams& ring, Scalar c, const Poly& a);

/// Polynomial vector v(D) = sum_t v_t D^t in Z_{p^r}^n[D]. Coefficient
/// vectors are stored densely by power of D and trailing zero vectors are
/// trimmed, so the zero vector has no coefficients.
class PolyVec {
 public:
  PolyVec() = default;
  explicit PolyVec(std::size_t length) : length_(length) {}
  /// Takes coefficient vectors (ascending powers); each must have `length`
  /// entries. Values are reduced into the ring.
  PolyVec(const RingParams& ring, std::size_t length, std::vector<Vector> coefficients);
  /// Builds from per-entry polynomials: entries[j] is the polynomial in column j.
  static PolyVec from_entries(const RingParams& ring, const std::vector<Poly>& entries);
  static PolyVec constant(const RingParams& ring, const Vector& v);
  /// Same as the ring constructor for coefficients that are already canonical.
  static PolyVec from_canonical(std::size_t length, std::vector<Vector> coefficients);

  std::size_t length() const noexcept { return length_; }
  const std::vector<Vector>& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  Degree degree() const noexcept;

  /// Coefficient vector of D^t (zero vector past the degree).
  Vector coefficient(std::size_t t) const;
  Scalar at(std::size_t t, std::size_t col) const noexcept;
  /// The polynomial in column j.
  Poly entry(std::size_t col) const;

  friend bool operator==(const PolyVec&, const PolyVec&) = default;
  friend bool operator<(const PolyVec& a, const PolyVec& b) {
    return a.coeffs_ < b.coeffs_;
  }

 private:
  void normalize();

  std::size_t length_ = 0;
  std::vector<Vector> coeffs_;
};

PolyVec add(const RingParams& ring, const PolyVec& a, const PolyVec& b);
PolyVec sub(const RingParams& ring, const PolyVec& a, const PolyVec& b);
PolyVec scale(const RingParams& ring, Scalar c, const PolyVec& v);
/// D^s * v
PolyVec shift(const PolyVec& v, std::size_t s);
/// a(D) * v(D) for a scalar polynomial a.
PolyVec poly_times(const RingParams& ring, const Poly& a, const PolyVec& v);
/// Leading coefficient vector; throws InvalidArgument for the zero vector.
Vector leading_coefficient(const PolyVec& v);

/// Total number of nonzero scalar entries over all coefficient vectors.
std::size_t weight(const PolyVec& v) noexcept;

/// A k x n matrix over Z_{p^r}[D], stored as rows.
class PolyMatrix {
 public:
  PolyMatrix(RingParams ring, std::size_t cols) : ring_(ring), cols_(cols) {}
  PolyMatrix(RingParams ring, std::size_t cols, std::vector<PolyVec> rows);
  /// entries[i][j] is the coefficient list of cell (i, j); values are reduced.
  static PolyMatrix from_entries(RingParams ring, const std::vector<std::vector<Poly>>& entries,
                                 std::size_t cols);
  static PolyMatrix constant(RingParams ring, const Matrix& m);

  const RingParams& ring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  const PolyVec& row(std::size_t i) const { return rows_.at(i); }
  const std::vector<PolyVec>& row_list() const noexcept { return rows_; }
  bool empty() const noexcept { return rows_.empty(); }

  void push_back(PolyVec row);

  /// Largest row degree, nullopt if every row is zero (or there are none).
  Degree degree() const noexcept;
  /// G_t, the k x n coefficient matrix of D^t (zero past the degree).
  Matrix coefficient_matrix(std::size_t t) const;
  /// G(0).
  Matrix at_zero() const { return coefficient_matrix(0); }
  /// Row subset [first, last).
  PolyMatrix slice(std::size_t first, std::size_t last) const;

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.ring_ == b.ring_ && a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  RingParams ring_;
  std::size_t cols_;
  std::vector<PolyVec> rows_;
};

/// Leading-coefficient matrix: row i is the coefficient of row i at its own
/// degree. Throws InvalidArgument if a row is zero.
Matrix leading_coeff_matrix(const PolyMatrix& g);

/// v(D) = u(D) G(D) for a 1 x k polynomial row u.
PolyVec mat_mul_poly(const PolyMatrix& u, const PolyMatrix& g);
/// Same product with u given directly as k scalar polynomials.
PolyVec combine(const RingParams& ring, const std::vector<Poly>& u, const std::vector<PolyVec>& rows,
                std::size_t cols);

/// Truncated sliding generator matrix of window j: (j+1)k x (j+1)n, block
/// (s, t) equal to G_{t-s} for t >= s and zero below.
struct SlidingMatrix {
  std::size_t window = 0;
  std::size_t block_rows = 0;
  std::size_t block_cols = 0;
  Matrix matrix;
};

SlidingMatrix sliding_matrix(const PolyMatrix& g, std::size_t j);

/// Entrywise reduction mod p; the result lives over Z_p.
PolyMatrix project_mod_p(const PolyMatrix& g);

}  // namespace zpr
