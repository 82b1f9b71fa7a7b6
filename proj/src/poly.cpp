#include "zpr/poly.hpp"

#include <algorithm>
#include <utility>

#include "zpr/errors.hpp"

namespace zpr {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_add(const RingParams& ring, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = ring.add(out[i], b[i]);
  trim(out);
  return out;
}

Poly poly_sub(const RingParams& ring, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = ring.sub(out[i], b[i]);
  trim(out);
  return out;
}

Poly poly_mul(const RingParams& ring, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = ring.reduce(out[i + j] + a[i] * b[j]);
  }
  trim(out);
  return out;
}

Poly poly_scale(const RingParams& ring, Scalar c, const Poly& a) {
  Poly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.mul(c, a[i]);
  trim(out);
  return out;
}

PolyVec::PolyVec(const RingParams& ring, std::size_t length, std::vector<Vector> coefficients)
    : length_(length), coeffs_(std::move(coefficients)) {
  for (auto& c : coeffs_) {
    if (c.size() != length_) throw InvalidArgument("coefficient vector has wrong length");
    for (auto& x : c) x = ring.reduce(x);
  }
  normalize();
}

PolyVec PolyVec::from_entries(const RingParams& ring, const std::vector<Poly>& entries) {
  std::size_t len = 0;
  for (const auto& e : entries) len = std::max(len, e.size());
  std::vector<Vector> coeffs(len, Vector(entries.size(), 0));
  for (std::size_t j = 0; j < entries.size(); ++j) {
    for (std::size_t t = 0; t < entries[j].size(); ++t) coeffs[t][j] = entries[j][t];
  }
  return PolyVec(ring, entries.size(), std::move(coeffs));
}

PolyVec PolyVec::constant(const RingParams& ring, const Vector& v) {
  return PolyVec(ring, v.size(), {v});
}

PolyVec PolyVec::from_canonical(std::size_t length, std::vector<Vector> coefficients) {
  PolyVec v(length);
  for (const auto& c : coefficients) {
    if (c.size() != length) throw InvalidArgument("coefficient vector has wrong length");
  }
  v.coeffs_ = std::move(coefficients);
  v.normalize();
  return v;
}

void PolyVec::normalize() {
  while (!coeffs_.empty() &&
         std::all_of(coeffs_.back().begin(), coeffs_.back().end(), [](Scalar x) { return x == 0; })) {
    coeffs_.pop_back();
  }
}

Degree PolyVec::degree() const noexcept {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

Vector PolyVec::coefficient(std::size_t t) const {
  if (t < coeffs_.size()) return coeffs_[t];
  return Vector(length_, 0);
}

Scalar PolyVec::at(std::size_t t, std::size_t col) const noexcept {
  return t < coeffs_.size() ? coeffs_[t][col] : 0;
}

Poly PolyVec::entry(std::size_t col) const {
  Poly out(coeffs_.size());
  for (std::size_t t = 0; t < coeffs_.size(); ++t) out[t] = coeffs_[t][col];
  trim(out);
  return out;
}

namespace {

void check_same_length(const PolyVec& a, const PolyVec& b) {
  if (a.length() != b.length()) throw InvalidArgument("polynomial vectors differ in length");
}

}  // namespace

PolyVec add(const RingParams& ring, const PolyVec& a, const PolyVec& b) {
  check_same_length(a, b);
  const std::size_t len = std::max(a.coefficients().size(), b.coefficients().size());
  std::vector<Vector> c(len, Vector(a.length(), 0));
  for (std::size_t t = 0; t < len; ++t) {
    for (std::size_t j = 0; j < a.length(); ++j) c[t][j] = ring.add(a.at(t, j), b.at(t, j));
  }
  return PolyVec(ring, a.length(), std::move(c));
}

PolyVec sub(const RingParams& ring, const PolyVec& a, const PolyVec& b) {
  check_same_length(a, b);
  const std::size_t len = std::max(a.coefficients().size(), b.coefficients().size());
  std::vector<Vector> c(len, Vector(a.length(), 0));
  for (std::size_t t = 0; t < len; ++t) {
    for (std::size_t j = 0; j < a.length(); ++j) c[t][j] = ring.sub(a.at(t, j), b.at(t, j));
  }
  return PolyVec(ring, a.length(), std::move(c));
}

PolyVec scale(const RingParams& ring, Scalar c, const PolyVec& v) {
  std::vector<Vector> coeffs = v.coefficients();
  for (auto& row : coeffs) {
    for (auto& x : row) x = ring.mul(c, x);
  }
  return PolyVec(ring, v.length(), std::move(coeffs));
}

PolyVec shift(const PolyVec& v, std::size_t s) {
  if (v.is_zero() || s == 0) return v;
  std::vector<Vector> coeffs(s, Vector(v.length(), 0));
  coeffs.insert(coeffs.end(), v.coefficients().begin(), v.coefficients().end());
  return PolyVec::from_canonical(v.length(), std::move(coeffs));
}

PolyVec poly_times(const RingParams& ring, const Poly& a, const PolyVec& v) {
  if (a.empty() || v.is_zero()) return PolyVec(v.length());
  const auto& vc = v.coefficients();
  std::vector<Vector> c(a.size() + vc.size() - 1, Vector(v.length(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t t = 0; t < vc.size(); ++t) {
      for (std::size_t j = 0; j < v.length(); ++j) c[i + t][j] = ring.reduce(c[i + t][j] + a[i] * vc[t][j]);
    }
  }
  return PolyVec(ring, v.length(), std::move(c));
}

Vector leading_coefficient(const PolyVec& v) {
  if (v.is_zero()) throw InvalidArgument("zero vector has no leading coefficient");
  return v.coefficients().back();
}

std::size_t weight(const PolyVec& v) noexcept {
  std::size_t w = 0;
  for (const auto& c : v.coefficients()) w += weight(std::span<const Scalar>(c));
  return w;
}

PolyMatrix::PolyMatrix(RingParams ring, std::size_t cols, std::vector<PolyVec> rows)
    : ring_(ring), cols_(cols) {
  rows_.reserve(rows.size());
  for (auto& r : rows) push_back(std::move(r));
}

PolyMatrix PolyMatrix::from_entries(RingParams ring, const std::vector<std::vector<Poly>>& entries,
                                    std::size_t cols) {
  PolyMatrix m(ring, cols);
  for (const auto& row : entries) {
    if (row.size() != cols) throw InvalidArgument("ragged polynomial matrix");
    m.push_back(PolyVec::from_entries(ring, row));
  }
  return m;
}

PolyMatrix PolyMatrix::constant(RingParams ring, const Matrix& m) {
  PolyMatrix out(ring, m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(PolyVec::constant(ring, m.row_vector(i)));
  return out;
}

void PolyMatrix::push_back(PolyVec row) {
  if (row.length() != cols_) {
    if (!row.is_zero() || row.length() != 0) throw InvalidArgument("row length does not match matrix width");
    row = PolyVec(cols_);
  }
  rows_.push_back(std::move(row));
}

Degree PolyMatrix::degree() const noexcept {
  Degree d;
  for (const auto& r : rows_) {
    const Degree rd = r.degree();
    if (rd && (!d || *rd > *d)) d = rd;
  }
  return d;
}

Matrix PolyMatrix::coefficient_matrix(std::size_t t) const {
  Matrix m(rows_.size(), cols_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = rows_[i].at(t, j);
  }
  return m;
}

PolyMatrix PolyMatrix::slice(std::size_t first, std::size_t last) const {
  if (first > last || last > rows_.size()) throw InvalidArgument("row slice out of range");
  return PolyMatrix(ring_, cols_, std::vector<PolyVec>(rows_.begin() + first, rows_.begin() + last));
}

Matrix leading_coeff_matrix(const PolyMatrix& g) {
  Matrix m(g.rows(), g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (g.row(i).is_zero()) throw InvalidArgument("zero row has no leading coefficient");
    const Vector lc = leading_coefficient(g.row(i));
    for (std::size_t j = 0; j < g.cols(); ++j) m(i, j) = lc[j];
  }
  return m;
}

PolyVec combine(const RingParams& ring, const std::vector<Poly>& u, const std::vector<PolyVec>& rows,
                std::size_t cols) {
  if (u.size() != rows.size()) throw InvalidArgument("coefficient count does not match row count");
  PolyVec acc(cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (u[i].empty()) continue;
    acc = add(ring, acc, poly_times(ring, u[i], rows[i]));
  }
  return acc;
}

PolyVec mat_mul_poly(const PolyMatrix& u, const PolyMatrix& g) {
  if (!(u.ring() == g.ring())) throw InvalidArgument("ring mismatch");
  if (u.rows() != 1 || u.cols() != g.rows()) throw InvalidArgument("dimension mismatch: u must be 1 x k");
  std::vector<Poly> entries;
  entries.reserve(u.cols());
  for (std::size_t i = 0; i < u.cols(); ++i) entries.push_back(u.row(0).entry(i));
  return combine(g.ring(), entries, g.row_list(), g.cols());
}

SlidingMatrix sliding_matrix(const PolyMatrix& g, std::size_t j) {
  const std::size_t k = g.rows();
  const std::size_t n = g.cols();
  SlidingMatrix s{j, k, n, Matrix((j + 1) * k, (j + 1) * n)};
  for (std::size_t ell = 0; ell <= j; ++ell) {
    const Matrix gl = g.coefficient_matrix(ell);
    for (std::size_t blk = 0; blk + ell <= j; ++blk) {
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < n; ++b) s.matrix(blk * k + a, (blk + ell) * n + b) = gl(a, b);
      }
    }
  }
  return s;
}

PolyMatrix project_mod_p(const PolyMatrix& g) {
  const RingParams field = g.ring().residue_field();
  PolyMatrix out(field, g.cols());
  for (const auto& row : g.row_list()) out.push_back(PolyVec(field, row.length(), row.coefficients()));
  return out;
}

}  // namespace zpr
