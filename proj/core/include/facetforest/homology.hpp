#pragma once

#include <optional>
#include <vector>

#include "facetforest/complex.hpp"
#include "facetforest/field.hpp"
#include "facetforest/ideal.hpp"
#include "facetforest/matrix.hpp"

namespace facetforest {

/// Reduced (augmented) simplicial chain complex with integer boundary
/// matrices. Degree k holds the k-dimensional faces; the empty face sits in
/// degree -1 whenever the complex is not void, so boundaries[0] is the
/// augmentation row.
struct ChainComplex {
  std::vector<std::vector<Mask>> faces_by_dim;  // index k = dimension k
  bool has_empty_face = false;
  std::vector<IntMat> boundaries;  // boundaries[k] : C_k -> C_{k-1}

  static ChainComplex of_complex(const SimplicialComplex& c);

  /// ∂_k ∘ ∂_{k+1} = 0 for all k.
  bool d_squared_is_zero() const;
};

/// Ranks of the reduced homology groups H̃_i(Δ; k) for i = -1 .. dim Δ.
struct HomologyRanks {
  std::vector<int> ranks;  // ranks[i + 1] = rank of H̃_i

  int rank(int i) const { return ranks.at(static_cast<std::size_t>(i + 1)); }
  int max_index() const { return static_cast<int>(ranks.size()) - 2; }
  bool all_zero_below(int dim) const {
    for (int i = -1; i < dim; ++i)
      if (rank(i) != 0) return false;
    return true;
  }
};

HomologyRanks reduced_homology_ranks(const SimplicialComplex& c, const FieldSpec& field);

/// The face and reduced-homology index at which the link condition fails.
struct CMWitness {
  VertexSet face;
  int homology_index;
};

struct CMReport {
  bool cm = false;
  FieldSpec field;
  std::optional<CMWitness> witness;
  int depth = 0;
  int dim = 0;
};

/// Cohen-Macaulayness of k[universe]/facet_ideal(Δ) over the given field,
/// decided on the non-face complex of the facet ideal: for every face F of
/// it (including ∅) the reduced homology of the link must vanish below the
/// link's dimension. The report carries depth and Krull dimension of the
/// quotient; cm holds iff they agree.
CMReport is_CM(const SimplicialComplex& c, const FieldSpec& field);

/// Depth of k[universe]/facet_ideal(Δ): one plus the largest i whose
/// i-skeleton of the non-face complex is Cohen-Macaulay. The zero ideal
/// (void Δ) has the full polynomial ring, depth = universe size.
int depth_SR(const SimplicialComplex& c, const FieldSpec& field);

namespace detail {
/// Reisner scan over the faces of the Stanley-Reisner complex gamma itself;
/// nullopt when Cohen-Macaulay.
std::optional<CMWitness> reisner_witness(const SimplicialComplex& gamma, const FieldSpec& field);
}  // namespace detail

}  // namespace facetforest
