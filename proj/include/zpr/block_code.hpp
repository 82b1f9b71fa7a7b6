#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "zpr/matrix.hpp"
#include "zpr/ring.hpp"

namespace zpr {

/// Parameters k_0, .., k_{r-1} of a block code.
struct ParameterSet {
  std::vector<std::size_t> k;

  std::size_t total() const noexcept;
  /// sum_i (r - i) k_i, the p-dimension of a code with these parameters.
  std::size_t p_dimension() const noexcept;
  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
  friend auto operator<=>(const ParameterSet&, const ParameterSet&) = default;
};

/// Generator matrix in standard form for the column-permuted code. Column t
/// of `matrix` is column perm[t] of the original code.
struct StandardForm {
  RingParams ring;
  Matrix matrix;
  std::vector<std::size_t> perm;
  ParameterSet params;
};

/// A block code given by any generating rows; the standard form is cached.
class BlockCode {
 public:
  BlockCode(RingParams ring, Matrix generators);

  const RingParams& ring() const noexcept { return ring_; }
  std::size_t length() const noexcept { return generators_.cols(); }
  const Matrix& generators() const noexcept { return generators_; }
  const StandardForm& standard() const noexcept { return standard_; }
  const ParameterSet& parameters() const noexcept { return standard_.params; }

 private:
  RingParams ring_;
  Matrix generators_;
  StandardForm standard_;
};

/// Standard form by valuation-minimal full pivoting (ties: smallest row,
/// then smallest column). Zero rows of the input are dropped.
StandardForm standard_form(const RingParams& ring, const Matrix& g);

/// Throws InvalidArgument unless `s` has the block shape of a standard form.
void check_standard_form(const StandardForm& s);

/// p-standard form: expands the standard form by powers of p, clears the blocks
/// left of each new identity block, and orders the rows by power of p, then
/// by block. The result uses the same permuted coordinates as `s.matrix`
/// and has sum_i k_i (r - i) rows.
Matrix p_standard_form(const StandardForm& s);

/// Undoes the column permutation of a standard form.
Matrix to_original_columns(const Matrix& m, const std::vector<std::size_t>& perm);

ParameterSet code_parameters(const RingParams& ring, const Matrix& g);

/// Minimum weight over all nonzero u G with u in A_p^k; G must be a p-encoder.
/// Throws BudgetExceeded when p^k - 1 exceeds `budget` and InvalidArgument for
/// the zero code.
std::size_t block_free_distance(const RingParams& ring, const Matrix& p_encoder,
                                std::uint64_t budget = 100'000'000);

/// n - sum k_i + 1.
std::size_t singleton_bound_params(std::size_t n, const ParameterSet& params);

struct SingletonValue {
  std::size_t value = 0;
  /// Set for k = 0, where the bound n + 1 says nothing.
  bool degenerate = false;
};

/// n - ceil(k / r) + 1.
SingletonValue singleton_bound_pdim(std::size_t n, std::size_t k, int r);

/// Every tuple minimizing sum k_i subject to sum (r - i) k_i = k, in
/// lexicographic order.
std::vector<ParameterSet> r_optimal_parameters(std::size_t k, int r);

}  // namespace zpr
