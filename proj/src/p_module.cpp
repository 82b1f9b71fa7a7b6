#include "zpr/p_module.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <utility>

#include "zpr/errors.hpp"

namespace zpr {

namespace {

void check_digits(const RingParams& ring, const Poly& a) {
  for (Scalar c : a) {
    if (c < 0 || c >= ring.p()) {
      throw InvalidArgument("p-combination coefficient " + std::to_string(c) + " is outside A_p");
    }
  }
}

// Input digit sequences u_0, u_1, .. driving v(D) = sum_t u_t G(D) D^t, where
// the state at time t holds u_{t-1}, .., u_{t-nu}.
class DigitTrellis {
 public:
  DigitTrellis(const PolyMatrix& rows, const SearchLimits& limits)
      : ring_(rows.ring()),
        k_(rows.rows()),
        n_(rows.cols()),
        nu_(rows.degree().value_or(0)),
        limits_(limits),
        solver_(ring_.p(), rows.at_zero()) {
    for (std::size_t s = 0; s <= nu_; ++s) g_.push_back(rows.coefficient_matrix(s));
  }

  // Finds inputs whose output equals `target`; with `nonzero_start` the
  // first input must be nonzero.
  std::optional<std::vector<Vector>> search(const PolyVec& target, bool nonzero_start) {
    nodes_.clear();
    const State zero(k_ * nu_, 0);
    nodes_.push_back({zero, kNone, Vector(k_, 0)});
    std::vector<std::size_t> layer{0};
    const std::size_t horizon = target.is_zero() ? 0 : *target.degree();
    bool started = false;
    for (std::size_t t = 0; t <= horizon; ++t) {
      std::map<State, std::size_t> next;
      const Vector want = target.coefficient(t);
      for (std::size_t idx : layer) {
        const bool need_nonzero = nonzero_start && !started;
        expand(idx, want, need_nonzero, [&](std::size_t child) {
          next.emplace(nodes_[child].state, child);
        });
      }
      if (nonzero_start) started = true;
      layer.clear();
      for (auto& [state, idx] : next) layer.push_back(idx);
      if (layer.empty()) return std::nullopt;
    }
    // the output past the target's degree must vanish until the state clears
    std::map<State, bool> visited;
    std::deque<std::size_t> queue;
    for (std::size_t idx : layer) {
      if (nodes_[idx].state == zero) return inputs_to(idx);
      if (visited.emplace(nodes_[idx].state, true).second) queue.push_back(idx);
    }
    const Vector zero_out(n_, 0);
    while (!queue.empty()) {
      const std::size_t idx = queue.front();
      queue.pop_front();
      std::optional<std::size_t> done;
      expand(idx, zero_out, false, [&](std::size_t child) {
        if (done) return;
        if (nodes_[child].state == zero) {
          done = child;
          return;
        }
        if (visited.emplace(nodes_[child].state, true).second) queue.push_back(child);
      });
      if (done) return inputs_to(*done);
    }
    return std::nullopt;
  }

 private:
  using State = Vector;
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct Node {
    State state;
    std::size_t parent;
    Vector input;
  };

  template <typename Emit>
  void expand(std::size_t idx, const Vector& want, bool need_nonzero, Emit&& emit) {
    const State state = nodes_[idx].state;
    Vector rhs = want;
    for (std::size_t s = 1; s <= nu_; ++s) {
      for (std::size_t a = 0; a < k_; ++a) {
        const Scalar u = state[(s - 1) * k_ + a];
        if (u == 0) continue;
        for (std::size_t b = 0; b < n_; ++b) rhs[b] = ring_.reduce(rhs[b] - u * g_[s](a, b));
      }
    }
    solver_.for_each_solution(rhs, [&](const Vector& u) {
      if (need_nonzero && std::all_of(u.begin(), u.end(), [](Scalar x) { return x == 0; })) return true;
      const Vector out = left_multiply(ring_, u, g_[0]);
      if (out != rhs) return true;
      if (nodes_.size() >= limits_.max_states) {
        throw BudgetExceeded("digit search exceeded its state limit",
                             static_cast<long double>(nodes_.size()) + 1, limits_.max_states);
      }
      State next(k_ * nu_, 0);
      if (nu_ > 0) {
        std::copy(u.begin(), u.end(), next.begin());
        std::copy(state.begin(), state.end() - static_cast<std::ptrdiff_t>(k_),
                  next.begin() + static_cast<std::ptrdiff_t>(k_));
      }
      nodes_.push_back({std::move(next), idx, u});
      emit(nodes_.size() - 1);
      return true;
    });
  }

  std::vector<Vector> inputs_to(std::size_t idx) const {
    std::vector<Vector> out;
    while (nodes_[idx].parent != kNone) {
      out.push_back(nodes_[idx].input);
      idx = nodes_[idx].parent;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  RingParams ring_;
  std::size_t k_;
  std::size_t n_;
  std::size_t nu_;
  SearchLimits limits_;
  FieldSolver solver_;
  std::vector<Matrix> g_;
  std::vector<Node> nodes_;
};

PCombination to_combination(const std::vector<Vector>& inputs, std::size_t k) {
  PCombination c;
  c.coefficients.assign(k, Poly{});
  for (std::size_t j = 0; j < k; ++j) {
    Poly a(inputs.size(), 0);
    for (std::size_t t = 0; t < inputs.size(); ++t) a[t] = inputs[t][j];
    trim(a);
    c.coefficients[j] = std::move(a);
  }
  return c;
}

std::vector<Vector> leading_rows(const std::vector<PolyVec>& elems, const std::vector<std::size_t>& idx) {
  std::vector<Vector> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(leading_coefficient(elems[i]));
  return out;
}

std::vector<std::size_t> up_to_degree(const std::vector<PolyVec>& elems, std::size_t d) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (*elems[i].degree() <= d) idx.push_back(i);
  }
  return idx;
}

// Top-down reduction: cancels the leading coefficient with the leading
// coefficients of elements of no larger degree. Returns zero or a remainder
// whose leading coefficient is not covered.
PolyVec reduce_by(const RingParams& ring, PolyVec v, const std::vector<PolyVec>& elems) {
  while (!v.is_zero()) {
    const std::size_t d = *v.degree();
    const auto idx = up_to_degree(elems, d);
    const Echelon e = echelon(ring, leading_rows(elems, idx), v.length());
    const auto c = solve_left(ring, e, leading_coefficient(v));
    if (!c) return v;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      if ((*c)[a] == 0) continue;
      const PolyVec& b = elems[idx[a]];
      v = sub(ring, v, scale(ring, (*c)[a], shift(b, d - *b.degree())));
    }
  }
  return v;
}

// Generators whose leading coefficients of degree <= d span the leading
// module of the generated module at every degree d.
std::vector<PolyVec> leading_complete(const RingParams& ring, const std::vector<PolyVec>& gens) {
  std::vector<PolyVec> elems;
  for (const auto& g : gens) {
    if (!g.is_zero()) elems.push_back(g);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::size_t> levels;
    for (const auto& e : elems) levels.push_back(*e.degree());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    for (std::size_t d : levels) {
      const auto idx = up_to_degree(elems, d);
      const Echelon e = echelon(ring, leading_rows(elems, idx), elems.front().length());
      for (const auto& syz : e.kernel) {
        PolyVec s(elems.front().length());
        for (std::size_t a = 0; a < idx.size(); ++a) {
          if (syz[a] == 0) continue;
          const PolyVec& b = elems[idx[a]];
          s = add(ring, s, scale(ring, syz[a], shift(b, d - *b.degree())));
        }
        PolyVec rem = reduce_by(ring, std::move(s), elems);
        if (!rem.is_zero()) {
          elems.push_back(std::move(rem));
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
  }
  return elems;
}

}  // namespace

PolyVec p_combination(const PCombination& c, const PolyMatrix& rows) {
  if (c.coefficients.size() != rows.rows()) throw InvalidArgument("coefficient count does not match row count");
  for (const auto& a : c.coefficients) check_digits(rows.ring(), a);
  return combine(rows.ring(), c.coefficients, rows.row_list(), rows.cols());
}

std::optional<PCombination> find_p_combination(const PolyVec& v, const PolyMatrix& rows,
                                               const SearchLimits& limits) {
  if (v.length() != rows.cols()) throw InvalidArgument("vector length does not match row length");
  if (rows.empty()) {
    if (v.is_zero()) return PCombination{};
    return std::nullopt;
  }
  DigitTrellis trellis(rows, limits);
  auto inputs = trellis.search(v, false);
  if (!inputs) return std::nullopt;
  return to_combination(*inputs, rows.rows());
}

std::optional<PCombination> find_p_dependency(const PolyMatrix& rows, const SearchLimits& limits) {
  if (rows.empty()) return std::nullopt;
  DigitTrellis trellis(rows, limits);
  auto inputs = trellis.search(PolyVec(rows.cols()), true);
  if (!inputs) return std::nullopt;
  return to_combination(*inputs, rows.rows());
}

bool is_p_generator_sequence(const PolyMatrix& rows, const SearchLimits& limits) {
  const RingParams& ring = rows.ring();
  const std::size_t k = rows.rows();
  if (k == 0) return true;
  if (!scale(ring, ring.p(), rows.row(k - 1)).is_zero()) return false;
  for (std::size_t i = k - 1; i-- > 0;) {
    const PolyVec target = scale(ring, ring.p(), rows.row(i));
    if (!find_p_combination(target, rows.slice(i + 1, k), limits)) return false;
  }
  return true;
}

bool is_p_independent(const PolyMatrix& rows, const SearchLimits& limits) {
  return !find_p_dependency(rows, limits).has_value();
}

std::optional<PCombination> p_span_membership(const PolyVec& v, const PolyMatrix& rows,
                                              const SearchLimits& limits) {
  if (!is_p_generator_sequence(rows, limits)) {
    throw InvalidArgument("rows are not a p-generator sequence");
  }
  return find_p_combination(v, rows, limits);
}

bool has_reduced_leading_coefficients(const PolyMatrix& rows) {
  for (const auto& r : rows.row_list()) {
    if (r.is_zero()) return false;
  }
  return is_p_independent(PolyMatrix::constant(rows.ring(), leading_coeff_matrix(rows)));
}

PolyMatrix expand_generator_sequence(const PolyMatrix& g) {
  const RingParams& ring = g.ring();
  PolyMatrix out(ring, g.cols());
  for (const auto& row : g.row_list()) {
    for (int i = 0; i < ring.r(); ++i) {
      PolyVec m = scale(ring, ring.power(i), row);
      if (m.is_zero()) break;
      out.push_back(std::move(m));
    }
  }
  return out;
}

bool in_module(const PolyVec& v, const PolyMatrix& generators) {
  if (v.length() != generators.cols()) throw InvalidArgument("vector length does not match row length");
  if (v.is_zero()) return true;
  const std::vector<PolyVec> elems = leading_complete(generators.ring(), generators.row_list());
  if (elems.empty()) return false;
  return reduce_by(generators.ring(), v, elems).is_zero();
}

PolyMatrix reduced_p_basis_of_span(const PolyMatrix& generators) {
  const RingParams& ring = generators.ring();
  const std::size_t n = generators.cols();
  const std::vector<PolyVec> elems = leading_complete(ring, generators.row_list());
  std::size_t max_deg = 0;
  for (const auto& e : elems) max_deg = std::max(max_deg, *e.degree());

  // Extend a p-basis of the leading coefficients level by level: x enters
  // only when p*x is already covered, so newer rows go to the front.
  std::vector<Vector> leading;
  std::vector<PolyVec> chosen;
  for (std::size_t d = 0; d <= max_deg && !elems.empty(); ++d) {
    for (std::size_t i : up_to_degree(elems, d)) {
      const PolyVec lifted = shift(elems[i], d - *elems[i].degree());
      const Vector y = leading_coefficient(lifted);
      while (true) {
        const Echelon e = echelon(ring, leading, n);
        if (in_row_span(ring, e, y)) break;
        int j = 1;
        auto times = [&](int i) {
          Vector x = y;
          for (auto& c : x) c = ring.mul(c, ring.power(i));
          return x;
        };
        while (!in_row_span(ring, e, times(j))) ++j;
        const Scalar mult = ring.power(j - 1);
        PolyVec row = scale(ring, mult, lifted);
        leading.push_back(leading_coefficient(row));
        chosen.push_back(std::move(row));
      }
    }
  }
  std::reverse(chosen.begin(), chosen.end());
  return PolyMatrix(ring, n, std::move(chosen));
}

PBasis reduced_p_basis(const PolyMatrix& rows, const SearchLimits& limits) {
  if (!is_p_generator_sequence(rows, limits)) {
    throw InvalidArgument("input rows are not a p-generator sequence");
  }
  PBasis b{reduced_p_basis_of_span(rows)};
  b.is_generator_sequence = is_p_generator_sequence(b.rows, limits);
  b.is_independent = is_p_independent(b.rows, limits);
  b.is_reduced = has_reduced_leading_coefficients(b.rows);
  if (!b.is_p_basis() || !b.is_reduced) {
    throw InternalInconsistency("reduction produced rows that are not a reduced p-basis");
  }
  return b;
}

std::size_t p_dimension(const PolyMatrix& rows) { return reduced_p_basis_of_span(rows).rows(); }

std::size_t p_degree(const PolyMatrix& rows, const SearchLimits& limits) {
  if (!has_reduced_leading_coefficients(rows) || !is_p_generator_sequence(rows, limits) ||
      !is_p_independent(rows, limits)) {
    throw InvalidArgument("p_degree needs a reduced p-basis");
  }
  std::size_t total = 0;
  for (const auto& r : rows.row_list()) total += *r.degree();
  return total;
}

bool same_module(const PolyMatrix& a, const PolyMatrix& b, const SearchLimits& limits) {
  if (!(a.ring() == b.ring()) || a.cols() != b.cols()) return false;
  // the p-span of a p-generator sequence is already the whole module
  const PolyMatrix ea = is_p_generator_sequence(a, limits) ? a : expand_generator_sequence(a);
  const PolyMatrix eb = is_p_generator_sequence(b, limits) ? b : expand_generator_sequence(b);
  for (const auto& row : a.row_list()) {
    if (!find_p_combination(row, eb, limits)) return false;
  }
  for (const auto& row : b.row_list()) {
    if (!find_p_combination(row, ea, limits)) return false;
  }
  return true;
}

}  // namespace zpr
