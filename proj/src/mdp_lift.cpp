#include "zpr/mdp_lift.hpp"

#include <random>
#include <string>

#include "zpr/errors.hpp"

namespace zpr {

namespace {

bool full_row_rank_mod_p(const RingParams& field, const Matrix& m) {
  return echelon(field, m.row_vectors(), m.cols()).rank() == m.rows();
}

// Digit positions of a candidate: (row, power, column) in enumeration order.
struct Slot {
  std::size_t row, power, col;
};

std::vector<Slot> candidate_slots(std::size_t n, const std::vector<std::size_t>& degrees) {
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < degrees.size(); ++i)
    for (std::size_t t = 0; t <= degrees[i]; ++t)
      for (std::size_t c = 0; c < n; ++c) slots.push_back({i, t, c});
  return slots;
}

PolyMatrix build_candidate(const RingParams& field, std::size_t n, const std::vector<std::size_t>& degrees,
                           const std::vector<Slot>& slots, const std::vector<Scalar>& digits) {
  std::vector<std::vector<Vector>> coeffs(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) coeffs[i].assign(degrees[i] + 1, Vector(n, 0));
  for (std::size_t s = 0; s < slots.size(); ++s) coeffs[slots[s].row][slots[s].power][slots[s].col] = digits[s];
  PolyMatrix g(field, n);
  for (auto& rows : coeffs) g.push_back(PolyVec(field, n, std::move(rows)));
  return g;
}

}  // namespace

LiftSpec make_lift_spec(std::size_t n, std::size_t k, std::size_t delta, Scalar p, int r) {
  const RingParams ring(p, r);
  if (k == 0) throw InvalidArgument("k must be positive");
  if (delta % k != 0) throw InvalidArgument("the lifting construction needs k | delta");
  LiftSpec s;
  s.n = n;
  s.k = k;
  s.delta = delta;
  s.p = p;
  s.r = r;
  const std::size_t rr = static_cast<std::size_t>(r);
  if ((k + rr - 1) / rr >= n) throw InvalidArgument("the construction needs ceil(k/r) < n");
  s.k0 = k / rr;
  s.nu = delta / k;
  s.R = k - s.k0 * rr;
  s.k_tilde = s.R > 0 ? s.k0 + 1 : s.k0;
  s.delta_tilde = s.k_tilde * s.nu;
  s.L_tilde = s.delta_tilde / s.k_tilde + s.delta_tilde / (n - s.k_tilde);
  return s;
}

std::vector<std::size_t> balanced_degrees(std::size_t delta, std::size_t k) {
  if (k == 0) throw InvalidArgument("k must be positive");
  std::vector<std::size_t> d(k, delta / k);
  for (std::size_t i = 0; i < delta % k; ++i) ++d[i];
  return d;
}

bool certify_field_mdp(const PolyMatrix& g, std::size_t L, const DistanceOptions& options,
                       std::vector<std::size_t>* profile) {
  const RingParams& field = g.ring();
  if (field.r() != 1) throw InvalidArgument("field encoders live over Z_p");
  for (const auto& row : g.row_list()) {
    if (row.is_zero()) return false;
  }
  if (!full_row_rank_mod_p(field, leading_coeff_matrix(g)) || !full_row_rank_mod_p(field, g.at_zero())) return false;
  const std::size_t n = g.cols(), k = g.rows();
  if (profile) profile->clear();
  for (std::size_t j = 0; j <= L; ++j) {
    const std::size_t d = column_distance(g, j, options).value;
    if (profile) profile->push_back(d);
    if (d != (j + 1) * (n - k) + 1) return false;
  }
  return true;
}

FieldEncoder find_field_MDP(std::size_t n, std::size_t k, std::size_t delta, Scalar p, const FieldSearch& search) {
  if (k == 0 || k >= n) throw InvalidArgument("field search needs 0 < k < n");
  const RingParams field(p, 1);
  const std::vector<std::size_t> degrees = balanced_degrees(delta, k);
  const std::size_t L = delta / k + delta / (n - k);
  const std::vector<Slot> slots = candidate_slots(n, degrees);
  std::vector<Scalar> digits(slots.size(), 0);
  std::mt19937_64 rng(search.seed);
  std::uniform_int_distribution<Scalar> draw(0, p - 1);
  std::uint64_t attempts = 0;
  bool exhausted = false;
  while (attempts < search.cap) {
    if (search.mode == SearchMode::random) {
      for (auto& d : digits) d = draw(rng);
    }
    ++attempts;
    const PolyMatrix g = build_candidate(field, n, degrees, slots, digits);
    std::vector<std::size_t> profile;
    if (certify_field_mdp(g, L, search.distance, &profile)) return {g, L, profile, attempts};
    if (search.mode == SearchMode::exhaustive) {
      // odometer with the first slot most significant
      std::size_t s = slots.size();
      while (s > 0 && ++digits[s - 1] == p) digits[--s] = 0;
      if (s == 0) {
        exhausted = true;
        break;
      }
    }
  }
  throw ConstructionFailure("no MDP encoder over Z_" + std::to_string(p) + " with n=" + std::to_string(n) +
                                ", k=" + std::to_string(k) + ", delta=" + std::to_string(delta) + " after " +
                                std::to_string(attempts) + (exhausted ? " candidates (space exhausted)" : " candidates") +
                                "; a larger p may help",
                            attempts);
}

PolyMatrix lift_encoder(const PolyMatrix& field, const LiftSpec& spec) {
  if (field.ring() != RingParams(spec.p, 1)) throw InvalidArgument("field encoder is not over Z_p");
  if (field.rows() != spec.k_tilde || field.cols() != spec.n) {
    throw InvalidArgument("field encoder shape does not match the lift parameters");
  }
  const RingParams ring(spec.p, spec.r);
  auto lifted = [&](std::size_t i, Scalar mult) {
    return scale(ring, mult, PolyVec::from_canonical(spec.n, field.row(i).coefficients()));
  };
  PolyMatrix out(ring, spec.n);
  for (int i = 0; i < spec.r; ++i)
    for (std::size_t row = 0; row < spec.k0; ++row) out.push_back(lifted(row, ring.power(i)));
  for (std::size_t i = 0; i < spec.R; ++i) {
    out.push_back(lifted(spec.k_tilde - 1, ring.power(spec.r - static_cast<int>(spec.R) + static_cast<int>(i))));
  }
  return out;
}

MdpConstruction construct_mdp(std::size_t n, std::size_t k, std::size_t delta, Scalar p, int r,
                              const FieldSearch& search) {
  const LiftSpec spec = make_lift_spec(n, k, delta, p, r);
  FieldEncoder field = find_field_MDP(n, spec.k_tilde, spec.delta_tilde, p, search);
  ConvCode code(lift_encoder(field.matrix, spec));
  if (code.k() != k || code.delta() != delta) {
    throw InternalInconsistency("lifted code has p-dimension " + std::to_string(code.k()) + " and p-degree " +
                                std::to_string(code.delta()));
  }
  MdpCheck check = is_MDP(code, search.distance);
  if (check.L != spec.L_tilde) {
    throw InternalInconsistency("L = " + std::to_string(check.L) + " over the ring but L~ = " +
                                std::to_string(spec.L_tilde) + " over the field");
  }
  if (!check.is_mdp) throw InternalInconsistency("the lifted code is not MDP");
  return {spec, std::move(field), std::move(code), std::move(check)};
}

FieldProjection project_to_field(const RingParams& ring, const PolyMatrix& field, const std::vector<Vector>& v) {
  FieldProjection out;
  for (std::size_t s = 0; s < v.size(); ++s)
    for (Scalar x : v[s]) {
      const int o = ring.order(x);
      if (o > out.level) {
        out.level = o;
        out.first = s;
      }
    }
  if (out.level == 0) throw InvalidArgument("the zero word has no projection");
  const Scalar up = ring.power(out.level - 1);
  const Scalar down = ring.power(ring.r() - 1);
  for (const auto& block : v) {
    Vector w(block.size());
    for (std::size_t c = 0; c < block.size(); ++c) w[c] = ring.mul(up, block[c]) / down;
    out.field_word.push_back(std::move(w));
  }
  const std::size_t j = v.size() - 1;
  const SlidingMatrix s = sliding_matrix(field, j);
  Vector rhs;
  for (const auto& w : out.field_word) rhs.insert(rhs.end(), w.begin(), w.end());
  const FieldSolver solver(field.ring().p(), s.matrix);
  if (auto x = solver.particular(rhs)) {
    std::vector<Vector> blocks;
    for (std::size_t t = 0; t <= j; ++t) {
      blocks.emplace_back(x->begin() + static_cast<std::ptrdiff_t>(t * field.rows()),
                          x->begin() + static_cast<std::ptrdiff_t>((t + 1) * field.rows()));
    }
    out.field_input = std::move(blocks);
  }
  return out;
}

}  // namespace zpr
