#include "zpr/conv_code.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <thread>

#include "zpr/errors.hpp"

namespace zpr {

namespace {

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

long long floor_of(const Rational& x) {
  long long q = x.numerator() / x.denominator();
  if (x.numerator() % x.denominator() != 0 && x.numerator() < 0) --q;
  return q;
}

long long ceil_of(const Rational& x) { return -floor_of(-x); }

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

long double power_ld(Scalar base, std::size_t e) {
  long double x = 1;
  for (std::size_t i = 0; i < e; ++i) x *= static_cast<long double>(base);
  return x;
}

// Row operations over Z_p[D] without division.
using FieldRow = std::vector<Poly>;

bool row_is_zero(const FieldRow& row) {
  return std::all_of(row.begin(), row.end(), [](const Poly& a) { return a.empty(); });
}

FieldRow combine_rows(const RingParams& f, const Poly& a, const FieldRow& x, const Poly& b, const FieldRow& y) {
  FieldRow out(x.size());
  for (std::size_t c = 0; c < x.size(); ++c) out[c] = poly_sub(f, poly_mul(f, a, x[c]), poly_mul(f, b, y[c]));
  return out;
}

FieldRow reduce_row(const RingParams& f, const PolyVec& v) {
  FieldRow out(v.length());
  for (std::size_t c = 0; c < v.length(); ++c) {
    Poly e = v.entry(c);
    for (auto& x : e) x %= f.p();
    trim(e);
    out[c] = std::move(e);
  }
  return out;
}

struct FieldElimination {
  struct BasisRow {
    FieldRow row;
    std::size_t pivot;
    FieldRow transform;
  };

  explicit FieldElimination(RingParams field, std::size_t total) : f(field), total_rows(total) {}

  // Adds row `index`; returns the relation (one polynomial per row) when it
  // depends on the rows added before, or nullopt when it extends the basis.
  std::optional<FieldRow> add(std::size_t index, FieldRow row) {
    FieldRow tr(total_rows);
    tr[index] = Poly{1};
    for (const auto& b : basis) {
      const Poly c = row[b.pivot];
      if (c.empty()) continue;
      const Poly& piv = b.row[b.pivot];
      row = combine_rows(f, piv, row, c, b.row);
      tr = combine_rows(f, piv, tr, c, b.transform);
    }
    if (row_is_zero(row)) return tr;
    std::size_t pivot = 0;
    while (row[pivot].empty()) ++pivot;
    basis.push_back({std::move(row), pivot, std::move(tr)});
    return std::nullopt;
  }

  RingParams f;
  std::size_t total_rows;
  std::vector<BasisRow> basis;
};

std::size_t rank_mod_p(const std::vector<PolyVec>& rows, const RingParams& ring) {
  FieldElimination e(ring.residue_field(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) e.add(i, reduce_row(e.f, rows[i]));
  return e.basis.size();
}

// Precomputed products u * G_s for every digit vector u, indexed by the
// digits read as a base-p number with u[0] most significant.
class ProductTable {
 public:
  ProductTable(const RingParams& ring, const std::vector<Matrix>& g, std::size_t k)
      : ring_(ring), g_(g), k_(k), count_(1) {
    for (std::size_t i = 0; i < k; ++i) count_ *= static_cast<std::size_t>(ring.p());
    tabulated_ = count_ <= (std::size_t{1} << 16);
    if (tabulated_) {
      table_.resize(g.size());
      for (std::size_t s = 0; s < g.size(); ++s) {
        table_[s].reserve(count_);
        for (std::size_t idx = 0; idx < count_; ++idx) table_[s].push_back(left_multiply(ring_, digits(idx), g_[s]));
      }
    }
  }

  std::size_t count() const noexcept { return count_; }

  Vector digits(std::size_t idx) const {
    Vector u(k_);
    for (std::size_t i = k_; i-- > 0;) {
      u[i] = static_cast<Scalar>(idx % static_cast<std::size_t>(ring_.p()));
      idx /= static_cast<std::size_t>(ring_.p());
    }
    return u;
  }

  void accumulate(Vector& acc, std::size_t s, std::size_t idx) const {
    if (idx == 0) return;
    if (tabulated_) {
      const Vector& x = table_[s][idx];
      for (std::size_t c = 0; c < acc.size(); ++c) acc[c] = ring_.add(acc[c], x[c]);
    } else {
      const Vector x = left_multiply(ring_, digits(idx), g_[s]);
      for (std::size_t c = 0; c < acc.size(); ++c) acc[c] = ring_.add(acc[c], x[c]);
    }
  }

 private:
  RingParams ring_;
  const std::vector<Matrix>& g_;
  std::size_t k_;
  std::size_t count_;
  bool tabulated_ = false;
  std::vector<std::vector<Vector>> table_;
};

// Depth-first search over input blocks u_0..u_last (u_0 != 0) minimizing the
// weight of the output blocks 0..last+tail, where the tail blocks have zero
// input. Branches whose partial weight reaches the best so far are cut, so
// the first minimizer found in lexicographic order is kept.
class WindowSearch {
 public:
  WindowSearch(const RingParams& ring, const PolyMatrix& g, std::size_t last, std::size_t tail)
      : ring_(ring), n_(g.cols()), last_(last), tail_(tail) {
    const std::size_t nu = g.degree().value_or(0);
    for (std::size_t s = 0; s <= nu; ++s) g_.push_back(g.coefficient_matrix(s));
    table_.emplace(ring, g_, g.rows());
  }

  struct Result {
    std::size_t weight = kUnbounded;
    std::vector<std::size_t> inputs;
  };

  Result run(unsigned workers) const {
    const std::size_t first_count = table_->count();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(first_count - 1)));
    std::vector<Result> results(workers);
    auto job = [&](unsigned w) {
      Result& res = results[w];
      std::vector<std::size_t> path(last_ + 1, 0);
      for (std::size_t u0 = 1 + w; u0 < first_count; u0 += workers) {
        path[0] = u0;
        descend(1, output_weight(path, 0), path, res);
      }
    };
    if (workers == 1) {
      job(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job, w);
      for (auto& t : pool) t.join();
    }
    Result best;
    for (auto& r : results) {
      if (r.weight < best.weight || (r.weight == best.weight && r.inputs < best.inputs)) best = std::move(r);
    }
    return best;
  }

  std::vector<Vector> expand(const std::vector<std::size_t>& inputs) const {
    std::vector<Vector> out;
    for (std::size_t idx : inputs) out.push_back(table_->digits(idx));
    return out;
  }

 private:
  std::size_t output_weight(const std::vector<std::size_t>& path, std::size_t t) const {
    Vector v(n_, 0);
    for (std::size_t s = 0; s < g_.size() && s <= t; ++s) {
      if (t - s <= last_) table_->accumulate(v, s, path[t - s]);
    }
    return weight(v);
  }

  void descend(std::size_t t, std::size_t partial, std::vector<std::size_t>& path, Result& res) const {
    if (partial >= res.weight) return;
    if (t > last_) {
      std::size_t total = partial;
      for (std::size_t extra = 1; extra <= tail_ && total < res.weight; ++extra) {
        total += output_weight(path, last_ + extra);
      }
      if (total < res.weight) {
        res.weight = total;
        res.inputs = path;
      }
      return;
    }
    for (std::size_t u = 0; u < table_->count(); ++u) {
      path[t] = u;
      descend(t + 1, partial + output_weight(path, t), path, res);
    }
    path[t] = 0;
  }

  RingParams ring_;
  std::size_t n_;
  std::size_t last_;
  std::size_t tail_;
  std::vector<Matrix> g_;
  std::optional<ProductTable> table_;
};

}  // namespace

bool is_delay_free(const PolyMatrix& g) {
  return is_p_independent(PolyMatrix::constant(g.ring(), g.at_zero()));
}

Decomposition decompose(const PolyMatrix& g) {
  const RingParams& ring = g.ring();
  const RingParams field = ring.residue_field();
  Decomposition d;
  std::vector<PolyVec> current;
  for (const auto& row : g.row_list()) {
    if (!row.is_zero()) current.push_back(row);
  }
  std::vector<PolyVec> stack;
  for (int layer = 0; layer < ring.r(); ++layer) {
    FieldElimination elim(field, current.size());
    std::vector<PolyVec> kept;
    std::vector<PolyVec> next;
    for (std::size_t i = 0; i < current.size(); ++i) {
      auto relation = elim.add(i, reduce_row(field, current[i]));
      if (!relation) {
        kept.push_back(current[i]);
        continue;
      }
      const Poly& self = (*relation)[i];
      if (self.size() != 1) d.polynomial_span_preserved = false;
      // the relation vanishes mod p, so the lifted combination is p times a
      // row of the next layer
      PolyVec sum(g.cols());
      for (std::size_t j = 0; j <= i; ++j) {
        if (!(*relation)[j].empty()) sum = add(ring, sum, poly_times(ring, (*relation)[j], current[j]));
      }
      std::vector<Vector> coeffs = sum.coefficients();
      for (auto& c : coeffs)
        for (auto& x : c) {
          if (x % ring.p() != 0) throw InternalInconsistency("elimination relation does not vanish mod p");
          x /= ring.p();
        }
      PolyVec q = PolyVec::from_canonical(g.cols(), std::move(coeffs));
      if (!q.is_zero()) next.push_back(std::move(q));
    }
    stack.insert(stack.end(), kept.begin(), kept.end());
    if (rank_mod_p(stack, ring) < stack.size()) {
      throw DegenerateDecomposition("stack of layers 0.." + std::to_string(layer) +
                                    " is not full row rank mod p");
    }
    d.ranks.push_back(kept.size());
    d.layers.emplace_back(ring, g.cols(), std::move(kept));
    current = std::move(next);
  }
  return d;
}

PolyMatrix expanded_p_encoder(const Decomposition& d, const RingParams& ring, std::size_t n) {
  PolyMatrix out(ring, n);
  for (int q = 0; q < ring.r(); ++q) {
    for (int m = 0; m <= q && static_cast<std::size_t>(m) < d.layers.size(); ++m) {
      for (const auto& row : d.layers[static_cast<std::size_t>(m)].row_list()) {
        PolyVec v = scale(ring, ring.power(q), row);
        if (!v.is_zero()) out.push_back(std::move(v));
      }
    }
  }
  return out;
}

ConvCode::ConvCode(PolyMatrix p_encoder, const SearchLimits& limits) : encoder_(std::move(p_encoder)) {
  if (!is_p_generator_sequence(encoder_, limits)) throw InvalidArgument("encoder rows are not a p-generator sequence");
  if (!is_p_independent(encoder_, limits)) throw InvalidArgument("encoder rows are not p-linearly independent");
  const PolyMatrix basis = reduced_p_basis_of_span(encoder_);
  for (const auto& row : basis.row_list()) delta_ += *row.degree();
  delay_free_ = is_delay_free(encoder_);
  reduced_ = has_reduced_leading_coefficients(encoder_);
  block_params_ = code_parameters(ring(), encoder_.at_zero());
  // rows that are p times an earlier row only repeat a generator
  const RingParams& rg = ring();
  PolyMatrix generators(rg, encoder_.cols());
  for (std::size_t i = 0; i < encoder_.rows(); ++i) {
    bool repeat = false;
    for (std::size_t j = 0; j < i && !repeat; ++j) repeat = scale(rg, rg.p(), encoder_.row(j)) == encoder_.row(i);
    if (!repeat) generators.push_back(encoder_.row(i));
  }
  try {
    layers_ = decompose(generators).ranks;
  } catch (const DegenerateDecomposition&) {
    layers_.reset();
  }
}

ParameterSet conv_parameters(const ConvCode& c) {
  if (!c.delay_free()) throw InvalidArgument("parameters need a delay-free encoder");
  return c.block_parameters();
}

bool DistanceProfile::complete() const noexcept {
  return std::all_of(entries.begin(), entries.end(), [](const DistanceEntry& e) { return e.exact; });
}

std::vector<std::size_t> DistanceProfile::values() const {
  std::vector<std::size_t> v;
  for (const auto& e : entries) v.push_back(e.value);
  return v;
}

long double column_candidates(const RingParams& ring, std::size_t k, std::size_t j) {
  return power_ld(ring.p(), k * (j + 1)) - power_ld(ring.p(), k * j);
}

DistanceEntry column_distance(const ConvCode& c, std::size_t j, const DistanceOptions& options) {
  if (!c.delay_free()) throw InvalidArgument("column distances need a delay-free encoder");
  return column_distance(c.encoder(), j, options);
}

DistanceEntry column_distance(const PolyMatrix& g, std::size_t j, const DistanceOptions& options) {
  if (!is_delay_free(g)) throw InvalidArgument("column distances need a delay-free encoder");
  const long double need = column_candidates(g.ring(), g.rows(), j);
  if (need > static_cast<long double>(options.budget)) {
    throw BudgetExceeded("column distance d^c_" + std::to_string(j) + " needs more candidates than the budget",
                         need, options.budget);
  }
  const WindowSearch search(g.ring(), g, j, 0);
  const auto res = search.run(options.workers);
  if (res.weight == kUnbounded) throw InternalInconsistency("column distance search found no codeword");
  return {j, res.weight, true, search.expand(res.inputs)};
}

DistanceProfile distance_profile(const ConvCode& c, std::size_t j_max, const DistanceOptions& options,
                                 bool allow_partial) {
  DistanceProfile prof;
  for (std::size_t j = 0; j <= j_max; ++j) {
    try {
      prof.entries.push_back(column_distance(c, j, options));
    } catch (const BudgetExceeded&) {
      if (!allow_partial) throw;
      // column distances never decrease, and d^c_0 >= 1 for a delay-free encoder
      const std::size_t carried = prof.entries.empty() ? 1 : prof.entries.back().value;
      for (; j <= j_max; ++j) prof.entries.push_back({j, carried, false, {}});
      break;
    }
    if (j > 0 && prof.entries[j].value < prof.entries[j - 1].value) {
      throw InternalInconsistency("column distances decreased");
    }
  }
  return prof;
}

std::size_t bound_B(std::size_t n, std::size_t k, int r, std::size_t j) {
  if (r < 1) throw InvalidArgument("r must be positive");
  const std::size_t c = ceil_div(k, static_cast<std::size_t>(r));
  if (c > n) throw InvalidArgument("ceil(k/r) exceeds n");
  return (n - c) * (j + 1) + 1;
}

std::size_t bound_dcj_params(std::size_t n, const ParameterSet& params, std::size_t j) {
  if (params.total() > n) throw InvalidArgument("sum of parameters exceeds n");
  return (j + 1) * (n - params.total()) + 1;
}

SingletonBound generalized_singleton(std::size_t n, std::size_t k, int r, std::size_t delta) {
  if (k == 0) throw InvalidArgument("the generalized Singleton bound needs k >= 1");
  if (r < 1) throw InvalidArgument("r must be positive");
  const long long N = static_cast<long long>(n), K = static_cast<long long>(k), R = r,
                  d = static_cast<long long>(delta);
  const long long f = d / K;
  const Rational a = Rational(K, R) * (f + 1) - Rational(d, R);
  const long long ca = ceil_of(a);
  SingletonBound out;
  out.sb = N * (f + 1) - ca + 1;
  out.phi = Rational(ca) - a;
  const Rational second = (Rational(N) - Rational(K, R)) * (f + 1) + Rational(d, R) - out.phi + 1;
  if (second != Rational(out.sb)) throw InternalInconsistency("the two forms of the Singleton bound disagree");
  if (out.phi < 0 || out.phi >= 1) throw InternalInconsistency("phi outside [0, 1)");
  return out;
}

LValue L_value(std::size_t n, std::size_t k, int r, std::size_t delta) {
  if (r < 1) throw InvalidArgument("r must be positive");
  const std::size_t c = ceil_div(k, static_cast<std::size_t>(r));
  if (c >= n) throw InvalidArgument("L needs ceil(k/r) < n");
  const SingletonBound sb = generalized_singleton(n, k, r, delta);
  const long long N = static_cast<long long>(n), K = static_cast<long long>(k), R = r,
                  d = static_cast<long long>(delta), C = static_cast<long long>(c);
  const long long f = d / K;
  LValue out;
  out.X = ((Rational(N) - Rational(K, R)) * f + Rational(d, R) - sb.phi + Rational(C) - Rational(K, R)) /
          Rational(N - C);
  const long long by_floor = floor_of(out.X);
  long long direct = -1;
  while (static_cast<long long>(bound_B(n, k, r, static_cast<std::size_t>(direct + 1))) <= sb.sb) ++direct;
  if (by_floor != direct) {
    throw InternalInconsistency("floor(X) = " + std::to_string(by_floor) + " but max{j : B(j) <= SB} = " +
                                std::to_string(direct));
  }
  out.L = static_cast<std::size_t>(direct);
  return out;
}

BoundSet bound_set(std::size_t n, std::size_t k, int r, std::size_t delta) {
  BoundSet b;
  b.n = n;
  b.k = k;
  b.r = r;
  b.delta = delta;
  b.singleton = generalized_singleton(n, k, r, delta);
  b.l = L_value(n, k, r, delta);
  return b;
}

MdpCheck is_MDP(const ConvCode& c, const DistanceOptions& options) {
  const int r = c.ring().r();
  const std::size_t cap = ceil_div(c.k(), static_cast<std::size_t>(r));
  MdpCheck out;
  // at full rate B(j) = 1 for every j and only d^c_0 is checked
  out.L = cap >= c.length() ? 0 : L_value(c.length(), c.k(), r, c.delta()).L;
  out.profile = distance_profile(c, out.L, options);
  out.is_mdp = true;
  for (const auto& e : out.profile.entries) {
    if (e.value != bound_B(c.length(), c.k(), r, e.j)) out.is_mdp = false;
  }
  return out;
}

FreeDistance free_distance_search(const ConvCode& c, const FreeDistanceOptions& options) {
  if (!c.delay_free()) throw InvalidArgument("free distance search needs a delay-free encoder");
  FreeDistance out;
  DistanceOptions dopt{options.budget, options.workers};
  const DistanceProfile prof = distance_profile(c, options.window, dopt, true);
  for (const auto& e : prof.entries) {
    if (e.exact) out.lower = std::max(out.lower, e.value);
  }
  const std::size_t nu = c.encoder().degree().value_or(0);
  // the largest input degree whose search fits the budget
  std::optional<std::size_t> degree;
  for (std::size_t m = 0; m <= options.degree_budget; ++m) {
    if (column_candidates(c.ring(), c.k(), m) <= static_cast<long double>(options.budget)) degree = m;
  }
  out.upper = kUnbounded;
  if (degree) {
    const WindowSearch search(c.ring(), c.encoder(), *degree, nu);
    const auto res = search.run(options.workers);
    out.upper = res.weight;
    out.witness = search.expand(res.inputs);
  }
  if (out.upper != kUnbounded && out.lower > out.upper) {
    throw InternalInconsistency("free distance lower bound exceeds a codeword weight");
  }
  out.exact = out.upper != kUnbounded && out.lower == out.upper;
  if (!out.exact && c.k() > 0 && out.upper != kUnbounded) {
    const auto sb = generalized_singleton(c.length(), c.k(), c.ring().r(), c.delta());
    out.matches_singleton = static_cast<long long>(out.upper) == sb.sb;
  }
  return out;
}

}  // namespace zpr
