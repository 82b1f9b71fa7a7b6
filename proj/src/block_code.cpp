#include "zpr/block_code.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "zpr/errors.hpp"

namespace zpr {

std::size_t ParameterSet::total() const noexcept { return std::accumulate(k.begin(), k.end(), std::size_t{0}); }

std::size_t ParameterSet::p_dimension() const noexcept {
  std::size_t s = 0;
  for (std::size_t i = 0; i < k.size(); ++i) s += (k.size() - i) * k[i];
  return s;
}

BlockCode::BlockCode(RingParams ring, Matrix generators)
    : ring_(ring), generators_(std::move(generators)), standard_(standard_form(ring_, generators_)) {}

StandardForm standard_form(const RingParams& ring, const Matrix& g) {
  const Echelon e = echelon(ring, g.row_vectors(), g.cols());
  StandardForm s{ring, Matrix::from_rows(e.rows, g.cols()), e.perm, {}};
  s.params.k.assign(static_cast<std::size_t>(ring.r()), 0);
  for (int v : e.valuations) ++s.params.k[static_cast<std::size_t>(v)];
  return s;
}

void check_standard_form(const StandardForm& s) {
  const RingParams& ring = s.ring;
  const Matrix& m = s.matrix;
  const std::size_t n = m.cols();
  if (s.perm.size() != n) throw InvalidArgument("standard form permutation has the wrong length");
  std::vector<bool> seen(n, false);
  for (std::size_t c : s.perm) {
    if (c >= n || seen[c]) throw InvalidArgument("standard form permutation is not a permutation");
    seen[c] = true;
  }
  if (s.params.k.size() != static_cast<std::size_t>(ring.r()) || s.params.total() != m.rows()) {
    throw InvalidArgument("standard form parameters do not match its rows");
  }
  std::size_t t = 0;
  for (int v = 0; v < ring.r(); ++v) {
    const Scalar pv = ring.power(v);
    const std::size_t group_end = t + s.params.k[static_cast<std::size_t>(v)];
    for (; t < group_end; ++t) {
      for (std::size_t c = 0; c < n; ++c) {
        const Scalar x = m(t, c);
        const bool ok = c < t ? x == 0 : (c == t ? x == pv : x % pv == 0);
        if (!ok) {
          throw InvalidArgument("standard form entry (" + std::to_string(t) + ", " + std::to_string(c) +
                                ") breaks the block shape");
        }
      }
      // the identity block of this group is clean in every other row of the group
      for (std::size_t u = group_end - s.params.k[static_cast<std::size_t>(v)]; u < group_end; ++u) {
        if (u != t && m(u, t) != 0) throw InvalidArgument("standard form identity block is not diagonal");
      }
    }
  }
}

Matrix p_standard_form(const StandardForm& s) {
  check_standard_form(s);
  const RingParams& ring = s.ring;
  const Matrix& m = s.matrix;
  const std::size_t n = m.cols();
  std::vector<int> group(m.rows());
  {
    std::size_t t = 0;
    for (int v = 0; v < ring.r(); ++v)
      for (std::size_t c = 0; c < s.params.k[static_cast<std::size_t>(v)]; ++c) group[t++] = v;
  }
  std::vector<Vector> out;
  for (int q = 0; q < ring.r(); ++q) {
    // row t taken at power q is p^{q - group[t]} times row t of S
    std::vector<Vector> level(m.rows());
    for (std::size_t t = m.rows(); t-- > 0;) {
      if (group[t] > q) continue;
      Vector row = m.row_vector(t);
      const Scalar mult = ring.power(q - group[t]);
      for (auto& x : row) x = ring.mul(x, mult);
      // clear the identity columns of later groups up to power q using
      // rows that are already cleared
      for (std::size_t u = t + 1; u < m.rows() && group[u] <= q; ++u) {
        if (group[u] == group[t] || row[u] == 0) continue;
        const Scalar c = row[u] / ring.power(q);
        for (std::size_t j = 0; j < n; ++j) row[j] = ring.sub(row[j], ring.mul(c, level[u][j]));
      }
      level[t] = std::move(row);
    }
    for (std::size_t t = 0; t < m.rows(); ++t) {
      if (group[t] <= q) out.push_back(std::move(level[t]));
    }
  }
  return Matrix::from_rows(out, n);
}

Matrix to_original_columns(const Matrix& m, const std::vector<std::size_t>& perm) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t t = 0; t < m.cols(); ++t) out(i, perm[t]) = m(i, t);
  return out;
}

ParameterSet code_parameters(const RingParams& ring, const Matrix& g) { return standard_form(ring, g).params; }

std::size_t block_free_distance(const RingParams& ring, const Matrix& p_encoder, std::uint64_t budget) {
  const std::size_t k = p_encoder.rows();
  if (k == 0) throw InvalidArgument("the zero code has no minimum distance");
  long double count = 1;
  for (std::size_t i = 0; i < k; ++i) count *= static_cast<long double>(ring.p());
  count -= 1;
  if (count > static_cast<long double>(budget)) {
    throw BudgetExceeded("block distance search needs more candidates than the budget", count, budget);
  }
  std::vector<Scalar> u(k, 0);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  while (true) {
    std::size_t i = 0;
    while (i < k && ++u[i] == ring.p()) u[i++] = 0;
    if (i == k) break;
    const std::size_t w = weight(left_multiply(ring, u, p_encoder));
    if (w > 0) best = std::min(best, w);
  }
  if (best == std::numeric_limits<std::size_t>::max()) {
    throw InvalidArgument("the code has no nonzero codeword");
  }
  return best;
}

std::size_t singleton_bound_params(std::size_t n, const ParameterSet& params) {
  if (params.total() > n) throw InvalidArgument("sum of parameters exceeds the length");
  return n - params.total() + 1;
}

SingletonValue singleton_bound_pdim(std::size_t n, std::size_t k, int r) {
  if (r < 1) throw InvalidArgument("r must be positive");
  const std::size_t ceil = (k + static_cast<std::size_t>(r) - 1) / static_cast<std::size_t>(r);
  if (ceil > n) throw InvalidArgument("ceil(k/r) exceeds the length");
  return {n - ceil + 1, k == 0};
}

std::vector<ParameterSet> r_optimal_parameters(std::size_t k, int r) {
  if (r < 1) throw InvalidArgument("r must be positive");
  const std::size_t rr = static_cast<std::size_t>(r);
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max() / 2;
  // fewest[i][x]: fewest coins of values r - i, .., 1 summing to x
  std::vector<std::vector<std::size_t>> fewest(rr + 1, std::vector<std::size_t>(k + 1, inf));
  fewest[rr][0] = 0;
  for (std::size_t i = rr; i-- > 0;) {
    const std::size_t value = rr - i;
    for (std::size_t x = 0; x <= k; ++x) {
      for (std::size_t c = 0; c * value <= x; ++c) {
        fewest[i][x] = std::min(fewest[i][x], c + fewest[i + 1][x - c * value]);
      }
    }
  }
  std::vector<ParameterSet> out;
  ParameterSet cur{std::vector<std::size_t>(rr, 0)};
  std::function<void(std::size_t, std::size_t, std::size_t)> walk = [&](std::size_t i, std::size_t rest,
                                                                          std::size_t coins) {
    if (i == rr) {
      if (rest == 0) out.push_back(cur);
      return;
    }
    const std::size_t value = rr - i;
    for (std::size_t c = 0; c * value <= rest; ++c) {
      if (c + fewest[i + 1][rest - c * value] != coins) continue;
      cur.k[i] = c;
      walk(i + 1, rest - c * value, coins - c);
    }
    cur.k[i] = 0;
  };
  walk(0, k, fewest[0][k]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace zpr
