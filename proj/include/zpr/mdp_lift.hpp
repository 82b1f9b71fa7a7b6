#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "zpr/conv_code.hpp"

namespace zpr {

/// Target parameters of the lifting construction and the derived field
/// parameters.
struct LiftSpec {
  std::size_t n = 0, k = 0, delta = 0;
  Scalar p = 2;
  int r = 1;
  std::size_t k0 = 0;       // floor(k / r)
  std::size_t nu = 0;       // delta / k
  std::size_t R = 0;        // k - k0 r
  std::size_t k_tilde = 0;  // k0 + 1 if R > 0, else k0
  std::size_t delta_tilde = 0;
  /// floor(delta~/k~) + floor(delta~/(n - k~))
  std::size_t L_tilde = 0;
};

/// Checks k >= 1, k | delta, ceil(k/r) < n and fills in the derived values.
LiftSpec make_lift_spec(std::size_t n, std::size_t k, std::size_t delta, Scalar p, int r);

enum class SearchMode { exhaustive, random };

struct FieldSearch {
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t seed = 0;
  /// Largest number of candidates examined.
  std::uint64_t cap = 1'000'000;
  DistanceOptions distance;
};

/// An encoder over Z_p together with its certified column distances.
struct FieldEncoder {
  PolyMatrix matrix;
  std::size_t L_tilde = 0;
  std::vector<std::size_t> profile;
  std::uint64_t attempts = 0;
};

/// Row degrees used for the candidates: delta split as evenly as possible,
/// larger degrees first.
std::vector<std::size_t> balanced_degrees(std::size_t delta, std::size_t k);

/// True iff `g` over Z_p has full-rank leading-coefficient and constant
/// matrices and column distances (j+1)(n-k)+1 for j <= L.
bool certify_field_mdp(const PolyMatrix& g, std::size_t L, const DistanceOptions& options,
                       std::vector<std::size_t>* profile = nullptr);

/// Searches encoders over Z_p with the given dimension and degree.
/// Exhaustive mode walks candidates in lexicographic order of their digits
/// (row, then power of D, then column, first digit most significant); random
/// mode draws candidates from a seeded generator. Throws ConstructionFailure
/// after `cap` candidates or when the space is exhausted.
FieldEncoder find_field_MDP(std::size_t n, std::size_t k, std::size_t delta, Scalar p, const FieldSearch& search);

/// Stacks p^i G~_0 for i = 0..r-1 followed by p^{r-R+i} times the last row
/// for i = 0..R-1.
PolyMatrix lift_encoder(const PolyMatrix& field, const LiftSpec& spec);

struct MdpConstruction {
  LiftSpec spec;
  FieldEncoder field;
  ConvCode code;
  MdpCheck check;
};

/// Finds a field MDP code, lifts it, and certifies the lift over Z_{p^r}.
/// Throws InternalInconsistency when the lift is not MDP or L differs from
/// L~.
MdpConstruction construct_mdp(std::size_t n, std::size_t k, std::size_t delta, Scalar p, int r,
                              const FieldSearch& search = {});

/// Image of a truncated codeword of the lift in the field code: with l the
/// largest order among the blocks and i the first block attaining it,
/// p^{l-1} v is p^{r-1} times `field_word`, which should equal u~ G~^c_j for a
/// field input with u~_0..u~_{i-1} = 0 and u~_i != 0.
struct FieldProjection {
  int level = 0;
  std::size_t first = 0;
  std::vector<Vector> field_word;
  std::optional<std::vector<Vector>> field_input;
};

FieldProjection project_to_field(const RingParams& ring, const PolyMatrix& field, const std::vector<Vector>& v);

}  // namespace zpr
