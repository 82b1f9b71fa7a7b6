#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "zpr/conv_code.hpp"
#include "zpr/errors.hpp"

using namespace zpr;

namespace {

const RingParams z4(2, 2);

PolyMatrix mat(const RingParams& ring, const std::vector<std::vector<Poly>>& e) {
  return PolyMatrix::from_entries(ring, e, e.front().size());
}

// [[1+D, 1+3D], [2, 2]] over Z_4
PolyMatrix z4_encoder() { return mat(z4, {{{1, 1}, {1, 3}}, {{2}, {2}}}); }

std::size_t brute_column_distance(const PolyMatrix& g, std::size_t j) {
  const SlidingMatrix s = sliding_matrix(g, j);
  return oracle::min_weight_nonzero_prefix(g.ring(), s.matrix, g.rows(), g.ring().p());
}

}  // namespace

TEST_CASE("delay-freeness") {
  CHECK(is_delay_free(z4_encoder()));
  CHECK_FALSE(is_delay_free(mat(z4, {{{0, 1}, {0, 1}}})));
  CHECK_FALSE(is_delay_free(mat(z4, {{{1}, {1}}, {{0, 2}, {0}}})));
}

TEST_CASE("the Z_4 example code") {
  const ConvCode c(z4_encoder());
  CHECK(c.k() == 2);
  CHECK(c.delta() == 1);
  CHECK_FALSE(c.layer_parameters());
  CHECK(c.reduced());
  CHECK(c.delay_free());
  CHECK(conv_parameters(c).k == std::vector<std::size_t>{1, 0});
  const DistanceEntry d0 = column_distance(c, 0);
  CHECK(d0.value == 2);
  const DistanceEntry d1 = column_distance(c, 1);
  CHECK(d1.value == 2);
  CHECK(distance_profile(c, 1).values() == std::vector<std::size_t>{2, 2});
  // delta = 1 gives SB = 2 and L = 0, so only d^c_0 = B(0) = 2 is required
  // even though d^c_1 = 2 < B(1) = 3
  const MdpCheck mdp = is_MDP(c);
  CHECK(mdp.L == 0);
  CHECK(mdp.is_mdp);
  CHECK(bound_B(2, 2, 2, 1) == 3);
  // the witness reaches the reported weight
  const SlidingMatrix s = sliding_matrix(c.encoder(), 1);
  Vector u;
  for (const auto& block : d1.witness) u.insert(u.end(), block.begin(), block.end());
  CHECK(weight(left_multiply(z4, u, s.matrix)) == 2);
  CHECK(d1.witness.front() != Vector{0, 0});
  // lexicographically smallest minimizer
  CHECK(d1.witness == std::vector<Vector>{{0, 1}, {0, 0}});
}

TEST_CASE("encoders that are not p-bases are rejected") {
  CHECK_THROWS_AS(ConvCode(mat(z4, {{{1}, {1}}})), InvalidArgument);
  CHECK_THROWS_AS(ConvCode(mat(z4, {{{2}, {2}}, {{2}, {2}}})), InvalidArgument);
  const ConvCode lagged(mat(z4, {{{0, 1}, {0, 1}}, {{0, 2}, {0, 2}}}));
  CHECK_FALSE(lagged.delay_free());
  CHECK_THROWS_AS(column_distance(lagged, 0), InvalidArgument);
}

TEST_CASE("full code has unit column distances") {
  const RingParams z8(2, 3);
  const PolyMatrix id = expand_generator_sequence(mat(z8, {{{1}, {0}}, {{0}, {1}}}));
  const ConvCode c(id);
  CHECK(conv_parameters(c).k == std::vector<std::size_t>{2, 0, 0});
  CHECK(distance_profile(c, 2).values() == std::vector<std::size_t>{1, 1, 1});
  const MdpCheck mdp = is_MDP(c);
  CHECK(mdp.is_mdp);
  CHECK(mdp.L == 0);
}

TEST_CASE("column distance budget") {
  const ConvCode c(z4_encoder());
  DistanceOptions tight;
  tight.budget = 10;
  CHECK(column_distance(c, 0, tight).value == 2);
  CHECK_THROWS_AS(column_distance(c, 1, tight), BudgetExceeded);
  const DistanceProfile partial = distance_profile(c, 2, tight, true);
  REQUIRE(partial.entries.size() == 3);
  CHECK(partial.entries[0].exact);
  CHECK_FALSE(partial.entries[1].exact);
  CHECK(partial.entries[2].value == 2);
  CHECK_FALSE(partial.complete());
  CHECK_THROWS_AS(distance_profile(c, 2, tight), BudgetExceeded);
  try {
    column_distance(c, 1, tight);
  } catch (const BudgetExceeded& e) {
    CHECK(e.required() == doctest::Approx(12));
  }
}

TEST_CASE("bounds") {
  CHECK(bound_B(2, 2, 2, 0) == 2);
  CHECK(bound_B(2, 2, 2, 2) == 4);
  CHECK(bound_B(3, 6, 2, 5) == 1);
  CHECK_THROWS_AS(bound_B(2, 5, 2, 0), InvalidArgument);
  CHECK(bound_dcj_params(2, ParameterSet{{1, 0}}, 1) == 3);
  CHECK(bound_dcj_params(2, ParameterSet{{1, 1}}, 0) == 1);
  CHECK(bound_dcj_params(3, ParameterSet{{1, 1}}, 2) == 4);

  SingletonBound a = generalized_singleton(2, 2, 2, 2);
  CHECK(a.sb == 4);
  CHECK(a.phi == Rational(0));
  SingletonBound b = generalized_singleton(3, 3, 2, 3);
  CHECK(b.sb == 5);
  CHECK(b.phi == Rational(1, 2));
  CHECK_THROWS_AS(generalized_singleton(3, 0, 2, 3), InvalidArgument);
  // r = 1 is the field bound (n - k)(floor(delta/k) + 1) + delta + 1
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::size_t k = 1; k < n; ++k)
      for (std::size_t d = 0; d <= 8; ++d) {
        const long long f = static_cast<long long>(d / k);
        const long long field = static_cast<long long>(n - k) * (f + 1) + static_cast<long long>(d) + 1;
        CHECK(generalized_singleton(n, k, 1, d).sb == field);
      }

  LValue l = L_value(2, 2, 2, 2);
  CHECK(l.L == 2);
  CHECK(l.X == Rational(2));
  LValue l2 = L_value(3, 3, 2, 3);
  CHECK(l2.L == 3);
  CHECK(l2.X == Rational(3));
  CHECK_THROWS_AS(L_value(2, 4, 2, 2), InvalidArgument);
  LValue l0 = L_value(4, 3, 2, 0);
  CHECK(l0.X == Rational(0));
  CHECK(l0.L == 0);
}

TEST_CASE("floor(X) matches the direct maximum over a parameter sweep") {
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 8; ++n)
    for (std::size_t k = 1; k <= 8; ++k)
      for (int r = 1; r <= 4; ++r)
        for (std::size_t d = 0; d <= 12; ++d) {
          if ((k + static_cast<std::size_t>(r) - 1) / static_cast<std::size_t>(r) >= n) continue;
          const LValue l = L_value(n, k, r, d);
          const long long sb = generalized_singleton(n, k, r, d).sb;
          CHECK(static_cast<long long>(bound_B(n, k, r, l.L)) <= sb);
          CHECK(static_cast<long long>(bound_B(n, k, r, l.L + 1)) > sb);
          ++checked;
        }
  CHECK(checked > 1000);
}

TEST_CASE("r-optimal parameters turn the parameter bound into B(j)") {
  for (std::size_t n = 1; n <= 8; ++n)
    for (std::size_t k = 0; k <= 16; ++k)
      for (int r = 1; r <= 4; ++r) {
        if ((k + static_cast<std::size_t>(r) - 1) / static_cast<std::size_t>(r) > n) continue;
        for (const auto& params : r_optimal_parameters(k, r))
          for (std::size_t j = 0; j < 4; ++j) CHECK(bound_dcj_params(n, params, j) == bound_B(n, k, r, j));
      }
}

TEST_CASE("free distance search") {
  const ConvCode block(mat(z4, {{{1}, {1}}, {{2}, {2}}}));
  FreeDistance fd = free_distance_search(block);
  CHECK(fd.exact);
  CHECK(fd.lower == 2);
  CHECK(fd.upper == 2);
  const ConvCode rep(expand_generator_sequence(mat(z4, {{{1}, {1}}})));
  CHECK(free_distance_search(rep).upper == 2);
  CHECK(free_distance_search(rep).exact);
  const FreeDistance ex = free_distance_search(ConvCode(z4_encoder()));
  CHECK(ex.lower <= ex.upper);
  CHECK(ex.upper == 2);
}

TEST_CASE("decomposition") {
  const Decomposition d = decompose(mat(z4, {{{1}, {1}}, {{0, 2}, {0}}}));
  REQUIRE(d.layers.size() == 2);
  CHECK(d.layers[0] == mat(z4, {{{1}, {1}}}));
  CHECK(d.layers[1] == mat(z4, {{{0, 1}, {0}}}));
  CHECK(d.ranks == std::vector<std::size_t>{1, 1});
  CHECK(d.polynomial_span_preserved);

  const RingParams z9(3, 2);
  const PolyMatrix free = mat(z9, {{{1, 1}, {2}, {0, 4}}, {{0}, {1, 3}, {1}}});
  const Decomposition df = decompose(free);
  CHECK(df.layers[0] == free);
  CHECK(df.layers[1].rows() == 0);

  CHECK_THROWS_AS(decompose(z4_encoder()), DegenerateDecomposition);
}

TEST_CASE("code invariants on random delay-free encoders") {
  std::mt19937_64 rng(2024);
  const std::vector<RingParams> rings = {RingParams(2, 2), RingParams(3, 2)};
  int tested = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const RingParams& ring = rings[static_cast<std::size_t>(trial) % 2];
    const std::size_t n = 2 + rng() % 2;
    const PolyMatrix g = oracle::random_delay_free_encoder(ring, n, 1 + rng() % 2, ring.p() == 2 ? 4 : 3, rng);
    REQUIRE(is_delay_free(g));
    const ConvCode c(g);
    const ParameterSet params = conv_parameters(c);
    const DistanceProfile prof = distance_profile(c, 2);
    for (std::size_t j = 0; j <= 2; ++j) {
      CHECK(prof.entries[j].value == brute_column_distance(g, j));
      CHECK(prof.entries[j].value <= bound_dcj_params(n, params, j));
      CHECK(is_p_generator_sequence(PolyMatrix::constant(ring, sliding_matrix(g, j).matrix)));
    }
    DistanceOptions many;
    many.workers = 3;
    const DistanceEntry threaded = column_distance(c, 2, many);
    CHECK(threaded.value == prof.entries[2].value);
    CHECK(threaded.witness == prof.entries[2].witness);
    ++tested;
  }
  CHECK(tested == 60);
}

TEST_CASE("decomposition of stacked generator matrices") {
  std::mt19937_64 rng(77);
  const std::vector<RingParams> rings = {RingParams(2, 2), RingParams(2, 3), RingParams(3, 2)};
  for (int trial = 0; trial < 30; ++trial) {
    const RingParams& ring = rings[static_cast<std::size_t>(trial) % rings.size()];
    const std::size_t n = 2 + rng() % 2;
    const Decomposition layers = oracle::random_layers(ring, n, 1, 6, rng);
    PolyMatrix g(ring, n);
    for (int m = 0; m < ring.r(); ++m)
      for (const auto& row : layers.layers[static_cast<std::size_t>(m)].row_list())
        g.push_back(scale(ring, ring.power(m), row));
    const Decomposition d = decompose(g);
    CHECK(d.ranks == layers.ranks);
    const PolyMatrix rebuilt = expanded_p_encoder(d, ring, n);
    CHECK(same_module(rebuilt, expand_generator_sequence(g)));
  }
}
