#include "doctest.h"

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "zpr/block_code.hpp"
#include "zpr/errors.hpp"
#include "zpr/p_module.hpp"

using namespace zpr;

namespace {

const RingParams z4(2, 2);

Matrix m(const std::vector<Vector>& rows) { return Matrix::from_rows(rows, rows.front().size()); }

PolyMatrix as_poly(const RingParams& ring, const Matrix& a) { return PolyMatrix::constant(ring, a); }

Matrix random_scalar(const RingParams& ring, std::size_t k, std::size_t n, std::mt19937_64& rng) {
  Matrix a(k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = static_cast<Scalar>(rng() % static_cast<std::uint64_t>(ring.modulus()));
  return a;
}

// Smallest weight of a nonzero vector in the Z_{p^r}-row span, over all
// coefficient vectors in Z_{p^r}^k.
std::size_t span_distance(const RingParams& ring, const Matrix& g) {
  return oracle::min_weight_nonzero_prefix(ring, g, g.rows(), ring.modulus());
}

}  // namespace

TEST_CASE("standard form examples") {
  const StandardForm s = standard_form(z4, m({{1, 1}, {2, 0}}));
  CHECK(s.matrix == m({{1, 1}, {0, 2}}));
  CHECK(s.perm == std::vector<std::size_t>{0, 1});
  CHECK(s.params.k == std::vector<std::size_t>{1, 1});

  const RingParams z9(3, 2);
  const Matrix id = m({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const StandardForm si = standard_form(z9, id);
  CHECK(si.matrix == id);
  CHECK(si.params.k == std::vector<std::size_t>{3, 0});

  const StandardForm s2 = standard_form(z4, m({{2, 2}}));
  CHECK(s2.matrix == m({{2, 2}}));
  CHECK(s2.params.k == std::vector<std::size_t>{0, 1});

  const StandardForm zero = standard_form(z4, Matrix(2, 3));
  CHECK(zero.matrix.rows() == 0);
  CHECK(zero.params.k == std::vector<std::size_t>{0, 0});
}

TEST_CASE("p-standard form examples") {
  const StandardForm s = standard_form(z4, m({{1, 1}, {0, 2}}));
  CHECK(p_standard_form(s) == m({{1, 1}, {2, 0}, {0, 2}}));
  CHECK(p_standard_form(standard_form(z4, m({{1}}))) == m({{1}, {2}}));

  StandardForm bad = s;
  bad.matrix(1, 1) = 1;
  CHECK_THROWS_AS(p_standard_form(bad), InvalidArgument);
}

TEST_CASE("code parameters") {
  CHECK(code_parameters(z4, m({{1, 1}})).k == std::vector<std::size_t>{1, 0});
  CHECK(code_parameters(z4, m({{2, 2}})).k == std::vector<std::size_t>{0, 1});
  CHECK(code_parameters(z4, m({{1, 0}, {0, 1}})).k == std::vector<std::size_t>{2, 0});
}

TEST_CASE("block free distance") {
  CHECK(block_free_distance(z4, m({{1, 1}, {2, 0}, {0, 2}})) == 1);
  CHECK(block_free_distance(z4, m({{1, 1}, {2, 2}})) == 2);
  CHECK_THROWS_AS(block_free_distance(z4, Matrix(0, 2)), InvalidArgument);
  CHECK_THROWS_AS(block_free_distance(z4, m({{1, 1}, {2, 2}}), 2), BudgetExceeded);
}

TEST_CASE("Singleton-type bounds") {
  CHECK(singleton_bound_params(2, ParameterSet{{1, 1}}) == 1);
  CHECK(singleton_bound_pdim(2, 2, 2).value == 2);
  CHECK_FALSE(singleton_bound_pdim(2, 2, 2).degenerate);
  CHECK(singleton_bound_pdim(5, 0, 3).value == 6);
  CHECK(singleton_bound_pdim(5, 0, 3).degenerate);
  CHECK_THROWS_AS(singleton_bound_params(1, ParameterSet{{1, 1}}), InvalidArgument);
  CHECK_THROWS_AS(singleton_bound_pdim(1, 5, 2), InvalidArgument);
}

TEST_CASE("r-optimal parameters") {
  const auto opt = r_optimal_parameters(25, 6);
  CHECK(std::find(opt.begin(), opt.end(), ParameterSet{{4, 0, 0, 0, 0, 1}}) != opt.end());
  CHECK(std::find(opt.begin(), opt.end(), ParameterSet{{0, 5, 0, 0, 0, 0}}) != opt.end());
  CHECK(r_optimal_parameters(12, 4) == std::vector<ParameterSet>{{{3, 0, 0, 0}}});
  CHECK(r_optimal_parameters(3, 2) == std::vector<ParameterSet>{{{1, 1}}});
  CHECK(r_optimal_parameters(0, 3) == std::vector<ParameterSet>{{{0, 0, 0}}});
}

TEST_CASE("p-standard form is a p-basis of the code on random inputs") {
  std::mt19937_64 rng(11);
  const std::vector<RingParams> rings = {RingParams(2, 2), RingParams(2, 3), RingParams(3, 2), RingParams(2, 4)};
  for (int trial = 0; trial < 60; ++trial) {
    const RingParams& ring = rings[static_cast<std::size_t>(trial) % rings.size()];
    const std::size_t n = 2 + rng() % 3;
    const std::size_t k = 1 + rng() % 3;
    const Matrix g = random_scalar(ring, k, n, rng);
    const StandardForm s = standard_form(ring, g);
    CHECK_NOTHROW(check_standard_form(s));
    const Matrix enc = p_standard_form(s);
    CHECK(enc.rows() == s.params.p_dimension());
    const PolyMatrix pe = as_poly(ring, enc);
    CHECK(is_p_generator_sequence(pe));
    CHECK(is_p_independent(pe));
    CHECK(same_module(pe, as_poly(ring, s.matrix)));
    // the standard form spans the permuted code
    CHECK(same_module(as_poly(ring, to_original_columns(s.matrix, s.perm)), as_poly(ring, g)));
    // parameters survive random unimodular row operations
    Matrix h = g;
    for (int op = 0; op < 4 && k > 1; ++op) {
      const std::size_t a = rng() % k, b = (a + 1 + rng() % (k - 1)) % k;
      const Scalar c = static_cast<Scalar>(rng() % static_cast<std::uint64_t>(ring.modulus()));
      for (std::size_t j = 0; j < n; ++j) h(a, j) = ring.add(h(a, j), ring.mul(c, h(b, j)));
    }
    CHECK(code_parameters(ring, h) == s.params);
    if (enc.rows() > 0 && n <= 4 && ring.modulus() <= 9) {
      const std::size_t d = block_free_distance(ring, enc);
      CHECK(d == span_distance(ring, g));
      CHECK(d <= singleton_bound_params(n, s.params));
      CHECK(singleton_bound_params(n, s.params) <= singleton_bound_pdim(n, enc.rows(), ring.r()).value);
    }
  }
}

TEST_CASE("r-optimal parameters match exhaustive enumeration") {
  for (int r = 1; r <= 5; ++r) {
    for (std::size_t k = 0; k <= 20; ++k) {
      std::vector<ParameterSet> all;
      std::size_t best = static_cast<std::size_t>(-1);
      ParameterSet cur{std::vector<std::size_t>(static_cast<std::size_t>(r), 0)};
      // odometer over k_i <= k / (r - i)
      while (true) {
        if (cur.p_dimension() == k) {
          if (cur.total() < best) {
            best = cur.total();
            all.clear();
          }
          if (cur.total() == best) all.push_back(cur);
        }
        std::size_t i = 0;
        while (i < cur.k.size() && ++cur.k[i] > k / (cur.k.size() - i)) cur.k[i++] = 0;
        if (i == cur.k.size()) break;
      }
      std::sort(all.begin(), all.end());
      CHECK(r_optimal_parameters(k, r) == all);
      CHECK(best == (k + static_cast<std::size_t>(r) - 1) / static_cast<std::size_t>(r));
    }
  }
}
