#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "zpr/errors.hpp"
#include "zpr/mdp_lift.hpp"
#include "zpr/p_module.hpp"

using namespace zpr;

namespace {

PolyMatrix mat(const RingParams& ring, const std::vector<std::vector<Poly>>& e) {
  return PolyMatrix::from_entries(ring, e, e.front().size());
}

std::vector<std::size_t> brute_profile(const PolyMatrix& g, std::size_t L, Scalar alphabet) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j <= L; ++j) {
    const SlidingMatrix s = sliding_matrix(g, j);
    out.push_back(oracle::min_weight_nonzero_prefix(g.ring(), s.matrix, g.rows(), alphabet));
  }
  return out;
}

}  // namespace

TEST_CASE("lift parameters") {
  const LiftSpec s = make_lift_spec(2, 2, 2, 5, 2);
  CHECK(s.k0 == 1);
  CHECK(s.R == 0);
  CHECK(s.k_tilde == 1);
  CHECK(s.nu == 1);
  CHECK(s.delta_tilde == 1);
  CHECK(s.L_tilde == 2);
  const LiftSpec t = make_lift_spec(4, 5, 5, 3, 2);
  CHECK(t.k0 == 2);
  CHECK(t.R == 1);
  CHECK(t.k_tilde == 3);
  CHECK(t.delta_tilde == 3);
  CHECK(t.L_tilde == 1 + 3);
  CHECK_THROWS_AS(make_lift_spec(3, 2, 3, 5, 2), InvalidArgument);
  CHECK_THROWS_AS(make_lift_spec(2, 4, 4, 5, 2), InvalidArgument);
  CHECK_THROWS_AS(make_lift_spec(2, 0, 0, 5, 2), InvalidArgument);
  CHECK(balanced_degrees(5, 3) == std::vector<std::size_t>{2, 2, 1});
}

TEST_CASE("field search") {
  const FieldEncoder f = find_field_MDP(2, 1, 1, 5, {});
  CHECK(f.L_tilde == 2);
  CHECK(f.profile == std::vector<std::size_t>{2, 3, 4});
  CHECK(brute_profile(f.matrix, 2, 5) == f.profile);
  try {
    find_field_MDP(2, 1, 1, 2, {});
    FAIL("expected ConstructionFailure");
  } catch (const ConstructionFailure& e) {
    CHECK(e.attempts() == 16);
  }
  FieldSearch rnd;
  rnd.mode = SearchMode::random;
  rnd.seed = 7;
  const FieldEncoder a = find_field_MDP(2, 1, 1, 5, rnd);
  const FieldEncoder b = find_field_MDP(2, 1, 1, 5, rnd);
  CHECK(a.matrix == b.matrix);
  CHECK(brute_profile(a.matrix, 2, 5) == std::vector<std::size_t>{2, 3, 4});
  FieldSearch tiny;
  tiny.cap = 3;
  CHECK_THROWS_AS(find_field_MDP(2, 1, 1, 5, tiny), ConstructionFailure);
}

TEST_CASE("certification rejects singular ends") {
  const RingParams f5(5, 1);
  CHECK_FALSE(certify_field_mdp(mat(f5, {{{1, 1}, {1, 1}}}), 2, {}));
  CHECK_FALSE(certify_field_mdp(mat(f5, {{{0, 1}, {0, 2}}}), 2, {}));
  CHECK(certify_field_mdp(mat(f5, {{{1, 1}, {1, 2}}}), 2, {}));
}

TEST_CASE("lift of a field encoder") {
  const RingParams f5(5, 1), z25(5, 2);
  const PolyMatrix g = mat(f5, {{{1, 1}, {1, 2}}});
  const PolyMatrix lifted = lift_encoder(g, make_lift_spec(2, 2, 2, 5, 2));
  CHECK(lifted == mat(z25, {{{1, 1}, {1, 2}}, {{5, 5}, {5, 10}}}));
  // r = 1 gives the field encoder back
  CHECK(lift_encoder(g, make_lift_spec(2, 1, 1, 5, 1)) == g);
  // k = 3 over Z_9: rows g0, 3 g0, 3 g1
  const RingParams f3(3, 1), z9(3, 2);
  const PolyMatrix h = mat(f3, {{{1, 1}, {1}, {1, 2}}, {{0, 1}, {1, 1}, {2}}});
  const PolyMatrix l3 = lift_encoder(h, make_lift_spec(3, 3, 3, 3, 2));
  REQUIRE(l3.rows() == 3);
  CHECK(l3.row(0) == PolyVec::from_canonical(3, h.row(0).coefficients()));
  CHECK(l3.row(1) == scale(z9, 3, PolyVec::from_canonical(3, h.row(0).coefficients())));
  CHECK(l3.row(2) == scale(z9, 3, PolyVec::from_canonical(3, h.row(1).coefficients())));
  CHECK_THROWS_AS(lift_encoder(h, make_lift_spec(2, 2, 2, 5, 2)), InvalidArgument);
}

TEST_CASE("construction over Z_25") {
  const MdpConstruction m = construct_mdp(2, 2, 2, 5, 2);
  CHECK(m.check.is_mdp);
  CHECK(m.check.L == 2);
  CHECK(m.check.profile.values() == std::vector<std::size_t>{2, 3, 4});
  CHECK(brute_profile(m.code.encoder(), 2, 5) == std::vector<std::size_t>{2, 3, 4});
  const MdpConstruction z = construct_mdp(2, 2, 0, 5, 2);
  CHECK(z.check.L == 0);
  CHECK(z.check.is_mdp);
}

TEST_CASE("lifted encoders are reduced p-bases") {
  struct Case {
    std::size_t n, k, delta;
    Scalar p;
    int r;
  };
  for (const Case c : {Case{2, 2, 2, 5, 2}, Case{2, 3, 3, 5, 3}, Case{3, 2, 2, 3, 2}, Case{3, 3, 0, 2, 3},
                       Case{3, 3, 3, 3, 3}, Case{3, 4, 0, 5, 2}}) {
    CAPTURE(c.n);
    CAPTURE(c.k);
    CAPTURE(c.r);
    const LiftSpec spec = make_lift_spec(c.n, c.k, c.delta, c.p, c.r);
    const FieldEncoder f = find_field_MDP(c.n, spec.k_tilde, spec.delta_tilde, c.p, {});
    const PolyMatrix g = lift_encoder(f.matrix, spec);
    CHECK(is_p_generator_sequence(g));
    CHECK(is_p_independent(g));
    CHECK(has_reduced_leading_coefficients(g));
    CHECK(is_delay_free(g));
    CHECK(p_dimension(g) == c.k);
    CHECK(p_degree(g) == c.delta);
  }
}

TEST_CASE("truncated codewords project onto the field code") {
  const MdpConstruction m = construct_mdp(2, 2, 2, 5, 2);
  const RingParams& ring = m.code.ring();
  const PolyMatrix& field = m.field.matrix;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Scalar> digit(0, 4);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t j = trial % 3;
    const SlidingMatrix s = sliding_matrix(m.code.encoder(), j);
    Vector u(s.matrix.rows());
    for (auto& x : u) x = digit(rng);
    const Vector w = left_multiply(ring, u, s.matrix);
    if (weight(w) == 0) continue;
    std::vector<Vector> v;
    for (std::size_t t = 0; t <= j; ++t) v.emplace_back(w.begin() + 2 * t, w.begin() + 2 * (t + 1));
    const FieldProjection pr = project_to_field(ring, field, v);
    REQUIRE(pr.field_input);
    for (std::size_t t = 0; t < pr.first; ++t) CHECK(weight((*pr.field_input)[t]) == 0);
    CHECK(weight((*pr.field_input)[pr.first]) > 0);
    std::size_t projected = 0;
    for (const auto& b : pr.field_word) projected += weight(b);
    CHECK(projected <= weight(w));
    CHECK(projected > 0);
    ++checked;
  }
  CHECK(checked > 250);
  CHECK_THROWS_AS(project_to_field(ring, field, {{0, 0}}), InvalidArgument);
}
