#pragma once
// Brute-force reference implementations used only by the tests.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "zpr/conv_code.hpp"
#include "zpr/poly.hpp"

namespace zpr::oracle {

// Tries every p-linear combination whose coefficient polynomials have degree
// at most `max_deg`, by direct expansion of sum_j a_j(D) v_j(D).
inline std::optional<std::vector<Poly>> bounded_p_combination(const PolyVec& v, const PolyMatrix& rows,
                                                              std::size_t max_deg) {
  const RingParams& ring = rows.ring();
  const std::size_t k = rows.rows();
  const std::size_t digits = k * (max_deg + 1);
  std::vector<Scalar> counter(digits, 0);
  while (true) {
    std::vector<Poly> a(k, Poly(max_deg + 1, 0));
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t t = 0; t <= max_deg; ++t) a[j][t] = counter[j * (max_deg + 1) + t];
    PolyVec sum(rows.cols());
    for (std::size_t j = 0; j < k; ++j) sum = add(ring, sum, poly_times(ring, a[j], rows.row(j)));
    if (sum == v) {
      for (auto& x : a) trim(x);
      return a;
    }
    std::size_t i = 0;
    while (i < digits && ++counter[i] == ring.p()) counter[i++] = 0;
    if (i == digits) return std::nullopt;
  }
}

inline Poly random_poly(const RingParams& ring, std::size_t deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<Scalar> d(0, ring.modulus() - 1);
  Poly a(deg + 1);
  for (auto& c : a) c = d(rng);
  trim(a);
  return a;
}

inline PolyMatrix random_matrix(const RingParams& ring, std::size_t k, std::size_t n, std::size_t deg,
                                std::mt19937_64& rng) {
  std::vector<std::vector<Poly>> e(k, std::vector<Poly>(n));
  for (auto& row : e)
    for (auto& x : row) x = random_poly(ring, deg, rng);
  return PolyMatrix::from_entries(ring, e, n);
}

// Minimum Hamming weight of a nonzero x * M over all x in [0, alphabet)^rows
// with a nonzero first block, by enumeration.
inline std::size_t min_weight_nonzero_prefix(const RingParams& ring, const Matrix& m, std::size_t prefix,
                                             Scalar alphabet) {
  const std::size_t rows = m.rows();
  std::vector<Scalar> x(rows, 0);
  std::size_t best = static_cast<std::size_t>(-1);
  while (true) {
    std::size_t i = 0;
    while (i < rows && ++x[i] == alphabet) x[i++] = 0;
    if (i == rows) break;
    bool lead = false;
    for (std::size_t t = 0; t < prefix; ++t) lead = lead || x[t] != 0;
    if (!lead) continue;
    const Vector y = left_multiply(ring, x, m);
    if (weight(y) > 0) best = std::min(best, weight(y));
  }
  return best;
}

// Layers G_0, .., G_{r-1} with random entries of degree <= deg whose stack at
// D = 0 is full row rank mod p; layer sizes are drawn so that the expanded
// p-encoder has at most max_rows rows.
inline Decomposition random_layers(const RingParams& ring, std::size_t n, std::size_t deg, std::size_t max_rows,
                                   std::mt19937_64& rng) {
  while (true) {
    Decomposition d;
    std::size_t stacked = 0, rows = 0;
    for (int m = 0; m < ring.r(); ++m) {
      std::size_t l = rng() % (n + 1 - stacked);
      if (m == 0 && l == 0) l = 1;
      while (l > 0 && rows + l * static_cast<std::size_t>(ring.r() - m) > max_rows) --l;
      stacked += l;
      rows += l * static_cast<std::size_t>(ring.r() - m);
      d.ranks.push_back(l);
      d.layers.push_back(random_matrix(ring, l, n, deg, rng));
    }
    if (d.ranks[0] == 0) continue;
    std::vector<Vector> at_zero;
    for (const auto& layer : d.layers)
      for (const auto& row : layer.row_list()) {
        Vector v = row.coefficient(0);
        for (auto& x : v) x %= ring.p();
        at_zero.push_back(v);
      }
    const RingParams field = ring.residue_field();
    if (echelon(field, at_zero, n).rank() == at_zero.size()) return d;
  }
}

// A delay-free p-encoder: the expansion of random layers followed by random
// row operations v_i += c v_j (j > i, c in Z_{p^r}).
inline PolyMatrix random_delay_free_encoder(const RingParams& ring, std::size_t n, std::size_t deg,
                                            std::size_t max_rows, std::mt19937_64& rng) {
  const Decomposition d = random_layers(ring, n, deg, max_rows, rng);
  std::vector<PolyVec> rows = expanded_p_encoder(d, ring, n).row_list();
  for (int op = 0; op < 3 && rows.size() > 1; ++op) {
    const std::size_t i = rng() % (rows.size() - 1);
    const std::size_t j = i + 1 + rng() % (rows.size() - 1 - i);
    const Scalar c = static_cast<Scalar>(rng() % static_cast<std::uint64_t>(ring.modulus()));
    rows[i] = add(ring, rows[i], scale(ring, c, rows[j]));
  }
  return PolyMatrix(ring, n, std::move(rows));
}

}  // namespace zpr::oracle
