#include "zpr/matrix.hpp"

#include <numeric>
#include <utility>

#include "zpr/errors.hpp"

namespace zpr {

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InvalidArgument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Vector> Matrix::row_vectors() const {
  std::vector<Vector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row_vector(i));
  return out;
}

Vector left_multiply(const RingParams& ring, std::span<const Scalar> u, const Matrix& a) {
  if (u.size() != a.rows()) throw InvalidArgument("dimension mismatch in vector-matrix product");
  Vector out(a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] = ring.reduce(out[j] + u[i] * a(i, j));
  }
  return out;
}

std::size_t weight(std::span<const Scalar> v) noexcept {
  std::size_t w = 0;
  for (Scalar x : v) w += (x != 0);
  return w;
}

namespace {

void axpy(const RingParams& ring, Vector& y, Scalar c, const Vector& x) {
  if (c == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = ring.reduce(y[i] - c * x[i]);
}

void scale(const RingParams& ring, Vector& y, Scalar c) {
  for (auto& v : y) v = ring.mul(v, c);
}

}  // namespace

Echelon echelon(const RingParams& ring, const std::vector<Vector>& input, std::size_t cols) {
  const std::size_t m = input.size();
  std::vector<Vector> work;
  work.reserve(m);
  for (const auto& row : input) {
    if (row.size() != cols) throw InvalidArgument("ragged matrix rows");
    Vector r(cols);
    for (std::size_t j = 0; j < cols; ++j) r[j] = ring.reduce(row[j]);
    work.push_back(std::move(r));
  }
  std::vector<Vector> tr(m, Vector(m, 0));
  for (std::size_t i = 0; i < m; ++i) tr[i][i] = 1;

  Echelon e;
  e.cols = cols;
  e.perm.resize(cols);
  std::iota(e.perm.begin(), e.perm.end(), std::size_t{0});

  std::size_t t = 0;
  for (; t < m && t < cols; ++t) {
    int best = ring.r();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < m; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        const int v = ring.valuation(work[i][j]);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (best == ring.r()) break;
    std::swap(work[t], work[bi]);
    std::swap(tr[t], tr[bi]);
    if (bj != t) {
      for (auto& row : work) std::swap(row[t], row[bj]);
      std::swap(e.perm[t], e.perm[bj]);
    }
    const Scalar pv = ring.power(best);
    const Scalar unit_inv = ring.inverse(work[t][t] / pv);
    scale(ring, work[t], unit_inv);
    scale(ring, tr[t], unit_inv);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == t || work[i][t] == 0) continue;
      // below: exact multiple of p^v; above: reduce into [0, p^v)
      const Scalar q = work[i][t] / pv;
      axpy(ring, work[i], q, work[t]);
      axpy(ring, tr[i], q, tr[t]);
    }
    e.valuations.push_back(best);
  }
  const std::size_t rank = e.valuations.size();
  for (std::size_t i = 0; i < rank; ++i) {
    e.rows.push_back(work[i]);
    e.transform.push_back(tr[i]);
    const int ann = ring.r() - e.valuations[i];
    if (ann < ring.r()) {
      Vector k = tr[i];
      scale(ring, k, ring.power(ann));
      e.kernel.push_back(std::move(k));
    }
  }
  for (std::size_t i = rank; i < m; ++i) e.kernel.push_back(tr[i]);
  return e;
}

std::optional<Vector> solve_left(const RingParams& ring, const Echelon& e, std::span<const Scalar> target) {
  if (target.size() != e.cols) throw InvalidArgument("target length mismatch");
  Vector y(e.cols);
  for (std::size_t t = 0; t < e.cols; ++t) y[t] = ring.reduce(target[e.perm[t]]);
  const std::size_t m = e.transform.empty() ? 0 : e.transform.front().size();
  Vector coeff(e.rows.size(), 0);
  for (std::size_t t = 0; t < e.rows.size(); ++t) {
    if (y[t] == 0) continue;
    const Scalar pv = ring.power(e.valuations[t]);
    if (y[t] % pv != 0) return std::nullopt;
    coeff[t] = y[t] / pv;
    axpy(ring, y, coeff[t], e.rows[t]);
  }
  for (Scalar v : y) {
    if (v != 0) return std::nullopt;
  }
  Vector out(m, 0);
  for (std::size_t t = 0; t < e.rows.size(); ++t) {
    if (coeff[t] == 0) continue;
    for (std::size_t i = 0; i < m; ++i) out[i] = ring.reduce(out[i] + coeff[t] * e.transform[t][i]);
  }
  return out;
}

FieldSolver::FieldSolver(Scalar p, const Matrix& a)
    : p_(p), k_(a.rows()), n_(a.cols()), reduced_(a.cols(), a.rows()), ops_(a.cols(), a.cols()) {
  auto md = [this](Scalar x) { return ((x % p_) + p_) % p_; };
  auto inv = [this](Scalar x) {
    Scalar result = 1, base = x, e = p_ - 2;
    while (e > 0) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return result;
  };
  for (std::size_t i = 0; i < n_; ++i) {
    ops_(i, i) = 1;
    for (std::size_t j = 0; j < k_; ++j) reduced_(i, j) = md(a(j, i));
  }
  std::size_t row = 0;
  std::vector<bool> is_pivot(k_, false);
  for (std::size_t col = 0; col < k_ && row < n_; ++col) {
    std::size_t sel = row;
    while (sel < n_ && reduced_(sel, col) == 0) ++sel;
    if (sel == n_) continue;
    if (sel != row) {
      for (std::size_t j = 0; j < k_; ++j) std::swap(reduced_(sel, j), reduced_(row, j));
      for (std::size_t j = 0; j < n_; ++j) std::swap(ops_(sel, j), ops_(row, j));
    }
    const Scalar iv = inv(reduced_(row, col));
    for (std::size_t j = 0; j < k_; ++j) reduced_(row, j) = reduced_(row, j) * iv % p_;
    for (std::size_t j = 0; j < n_; ++j) ops_(row, j) = ops_(row, j) * iv % p_;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == row || reduced_(i, col) == 0) continue;
      const Scalar f = reduced_(i, col);
      for (std::size_t j = 0; j < k_; ++j) reduced_(i, j) = md(reduced_(i, j) - f * reduced_(row, j));
      for (std::size_t j = 0; j < n_; ++j) ops_(i, j) = md(ops_(i, j) - f * ops_(row, j));
    }
    pivot_vars_.push_back(col);
    is_pivot[col] = true;
    ++row;
  }
  for (std::size_t c = 0; c < k_; ++c) {
    if (is_pivot[c]) continue;
    free_vars_.push_back(c);
    Vector basis(k_, 0);
    basis[c] = 1;
    for (std::size_t t = 0; t < pivot_vars_.size(); ++t) basis[pivot_vars_[t]] = md(-reduced_(t, c));
    null_basis_.push_back(std::move(basis));
  }
}

std::optional<Vector> FieldSolver::particular(std::span<const Scalar> b) const {
  if (b.size() != n_) throw InvalidArgument("right-hand side length mismatch");
  Vector c(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    Scalar s = 0;
    for (std::size_t j = 0; j < n_; ++j) s = (s + ops_(i, j) * (((b[j] % p_) + p_) % p_)) % p_;
    c[i] = s;
  }
  for (std::size_t i = pivot_vars_.size(); i < n_; ++i) {
    if (c[i] != 0) return std::nullopt;
  }
  Vector x(k_, 0);
  for (std::size_t t = 0; t < pivot_vars_.size(); ++t) x[pivot_vars_[t]] = c[t];
  return x;
}

}  // namespace zpr
