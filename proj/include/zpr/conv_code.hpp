#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

#include "zpr/block_code.hpp"
#include "zpr/p_module.hpp"
#include "zpr/poly.hpp"

namespace zpr {

using Rational = boost::rational<long long>;

/// True iff the rows of G(0) are p-linearly independent.
bool is_delay_free(const PolyMatrix& g);

/// Result of the layered decomposition of a generator matrix into
/// [G_0; p G_1; ..; p^{r-1} G_{r-1}] with every stack [G_0; ..; G_i] full row
/// rank mod p.
struct Decomposition {
  std::vector<PolyMatrix> layers;
  /// Row counts l_0, .., l_{r-1} of the layers.
  std::vector<std::size_t> ranks;
  /// False when some elimination multiplied a row by a nonconstant
  /// polynomial, in which case the layers generate the same code only over
  /// Laurent series, not necessarily as polynomial modules.
  bool polynomial_span_preserved = true;
};

/// Iterated elimination mod p. Throws DegenerateDecomposition when a stack
/// of layers is rank-deficient mod p.
Decomposition decompose(const PolyMatrix& g);

/// The p-encoder [G_0; pG_0; pG_1; p^2G_0; ..; p^{r-1}G_{r-1}] built from a
/// decomposition, with rows that vanish left out.
PolyMatrix expanded_p_encoder(const Decomposition& d, const RingParams& ring, std::size_t n);

/// A convolutional code given by a p-encoder. Construction rejects rows that
/// are not a p-basis.
class ConvCode {
 public:
  explicit ConvCode(PolyMatrix p_encoder, const SearchLimits& limits = {});

  const RingParams& ring() const noexcept { return encoder_.ring(); }
  const PolyMatrix& encoder() const noexcept { return encoder_; }
  std::size_t length() const noexcept { return encoder_.cols(); }
  std::size_t k() const noexcept { return encoder_.rows(); }
  /// p-degree of the code (sum of row degrees of a reduced p-basis).
  std::size_t delta() const noexcept { return delta_; }
  bool delay_free() const noexcept { return delay_free_; }
  /// Leading coefficients p-independent, so delta equals the row degree sum.
  bool reduced() const noexcept { return reduced_; }
  /// Parameters of the block code spanned by G(0).
  const ParameterSet& block_parameters() const noexcept { return block_params_; }
  /// l_0, .., l_{r-1} when the encoder decomposes.
  const std::optional<std::vector<std::size_t>>& layer_parameters() const noexcept { return layers_; }

 private:
  PolyMatrix encoder_;
  std::size_t delta_ = 0;
  bool delay_free_ = false;
  bool reduced_ = false;
  ParameterSet block_params_;
  std::optional<std::vector<std::size_t>> layers_;
};

ParameterSet conv_parameters(const ConvCode& c);

struct DistanceOptions {
  /// Candidate inputs allowed per column distance.
  std::uint64_t budget = 100'000'000;
  unsigned workers = 1;
};

struct DistanceEntry {
  std::size_t j = 0;
  std::size_t value = 0;
  /// False for lower bounds carried over after the budget ran out.
  bool exact = true;
  /// Input blocks u_0, .., u_j reaching the minimum (empty for lower bounds).
  std::vector<Vector> witness;
};

struct DistanceProfile {
  std::vector<DistanceEntry> entries;
  bool complete() const noexcept;
  std::vector<std::size_t> values() const;
};

/// Number of inputs u in A_p^{k(j+1)} with u_0 != 0.
long double column_candidates(const RingParams& ring, std::size_t k, std::size_t j);

/// Exact j-th column distance with the lexicographically smallest minimizing
/// input. Throws BudgetExceeded when the candidate count exceeds the budget
/// and InvalidArgument for encoders that are not delay-free.
DistanceEntry column_distance(const ConvCode& c, std::size_t j, const DistanceOptions& options = {});
/// Same search on a bare encoder, which only needs to be delay-free.
DistanceEntry column_distance(const PolyMatrix& g, std::size_t j, const DistanceOptions& options = {});

/// Column distances for j = 0..j_max. Without `allow_partial` a budget miss
/// throws; with it, the remaining entries are lower bounds equal to the last
/// exact value.
DistanceProfile distance_profile(const ConvCode& c, std::size_t j_max, const DistanceOptions& options = {},
                                 bool allow_partial = false);

/// (n - ceil(k/r))(j + 1) + 1.
std::size_t bound_B(std::size_t n, std::size_t k, int r, std::size_t j);
/// (j + 1)(n - sum k_i) + 1.
std::size_t bound_dcj_params(std::size_t n, const ParameterSet& params, std::size_t j);

struct SingletonBound {
  long long sb = 0;
  Rational phi;
};

/// Generalized Singleton bound; both displayed forms are evaluated and must
/// agree.
SingletonBound generalized_singleton(std::size_t n, std::size_t k, int r, std::size_t delta);

struct LValue {
  std::size_t L = 0;
  Rational X;
};

/// L = floor(X), checked against max{j : B(j) <= SB}; InternalInconsistency if
/// they differ.
LValue L_value(std::size_t n, std::size_t k, int r, std::size_t delta);

struct BoundSet {
  std::size_t n = 0, k = 0, delta = 0;
  int r = 1;
  SingletonBound singleton;
  LValue l;
  std::size_t B(std::size_t j) const { return bound_B(n, k, r, j); }
};

BoundSet bound_set(std::size_t n, std::size_t k, int r, std::size_t delta);

struct MdpCheck {
  bool is_mdp = false;
  std::size_t L = 0;
  DistanceProfile profile;
};

/// Certifies d^c_j = B(j) for j <= L using the code's own k and delta.
MdpCheck is_MDP(const ConvCode& c, const DistanceOptions& options = {});

struct FreeDistanceOptions {
  /// Column distances up to this window give the lower bound.
  std::size_t window = 2;
  /// Inputs of degree at most this give the upper bound.
  std::size_t degree_budget = 2;
  std::uint64_t budget = 10'000'000;
  unsigned workers = 1;
};

struct FreeDistance {
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool exact = false;
  /// Upper bound equals the generalized Singleton bound without closure.
  bool matches_singleton = false;
  std::vector<Vector> witness;
};

/// Interval for the free distance: the lower end is the largest certified
/// column distance, the upper end the lightest codeword of a finite input.
FreeDistance free_distance_search(const ConvCode& c, const FreeDistanceOptions& options = {});

}  // namespace zpr
