#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "zpr/poly.hpp"

namespace zpr {

/// Coefficients a_1(D)..a_k(D) of a p-linear combination; every scalar
/// coefficient lies in A_p = {0, .., p-1}.
struct PCombination {
  std::vector<Poly> coefficients;

  friend bool operator==(const PCombination&, const PCombination&) = default;
};

/// Rows together with the properties that make them a (reduced) p-basis.
struct PBasis {
  PolyMatrix rows;
  bool is_generator_sequence = false;
  bool is_independent = false;
  bool is_reduced = false;

  bool is_p_basis() const noexcept { return is_generator_sequence && is_independent; }
};

/// Upper bound on the number of trellis states visited by the digit search
/// behind membership and independence tests.
struct SearchLimits {
  std::size_t max_states = 2'000'000;
};

/// sum_j a_j(D) v_j(D). Throws InvalidArgument if a coefficient is outside
/// A_p or the counts differ.
PolyVec p_combination(const PCombination& c, const PolyMatrix& rows);

/// Digit search for a p-linear combination of `rows` equal to `v`, without
/// any assumption on the rows. Runs time step by time step: at each power of
/// D the next input digits solve a linear system mod p, the candidates are
/// filtered against the full equation mod p^r, and partial solutions are
/// merged by encoder state. Exact; throws BudgetExceeded past the limits.
std::optional<PCombination> find_p_combination(const PolyVec& v, const PolyMatrix& rows,
                                               const SearchLimits& limits = {});

/// A nontrivial p-linear combination of the rows that vanishes, if any.
std::optional<PCombination> find_p_dependency(const PolyMatrix& rows, const SearchLimits& limits = {});

/// Membership in the p-span of a p-generator sequence. Throws
/// InvalidArgument if the rows are not a p-generator sequence.
std::optional<PCombination> p_span_membership(const PolyVec& v, const PolyMatrix& rows,
                                              const SearchLimits& limits = {});

bool is_p_generator_sequence(const PolyMatrix& rows, const SearchLimits& limits = {});
bool is_p_independent(const PolyMatrix& rows, const SearchLimits& limits = {});
/// Leading-coefficient vectors p-independent (false if a row is zero).
bool has_reduced_leading_coefficients(const PolyMatrix& rows);

/// Replaces each row v by v, pv, .., p^{r-1}v, skipping multiples that vanish.
PolyMatrix expand_generator_sequence(const PolyMatrix& g);

/// Membership in the Z_{p^r}[D]-module generated by arbitrary rows, decided
/// by reduction against a leading-coefficient complete generating set. This
/// is independent of the digit search; for a p-generator sequence the module
/// equals the p-span.
bool in_module(const PolyVec& v, const PolyMatrix& generators);
/// A reduced p-basis of the module spanned by arbitrary generators.
PolyMatrix reduced_p_basis_of_span(const PolyMatrix& generators);

/// Reduced p-basis of the p-span of a p-generator sequence, with its flags
/// re-checked. Throws InvalidArgument if the input is not a p-generator
/// sequence.
PBasis reduced_p_basis(const PolyMatrix& rows, const SearchLimits& limits = {});

/// p-dimension of the module spanned by the rows.
std::size_t p_dimension(const PolyMatrix& rows);
/// Sum of row degrees of a reduced p-basis; throws InvalidArgument if the
/// rows are not one.
std::size_t p_degree(const PolyMatrix& rows, const SearchLimits& limits = {});

/// True iff both row sets span the same Z_{p^r}[D]-module, checked by
/// membership in both directions.
bool same_module(const PolyMatrix& a, const PolyMatrix& b, const SearchLimits& limits = {});

}  // namespace zpr
