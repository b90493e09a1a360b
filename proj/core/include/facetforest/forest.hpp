#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "facetforest/complex.hpp"

namespace facetforest {

/// Why F is a leaf: the facets realizing the universal containments, and the
/// vertices of F that belong to no other facet. A leaf always has a free
/// vertex.
struct LeafWitness {
  VertexSet leaf;
  std::vector<VertexSet> universal_set;
  VertexSet free_vertices;
};

/// All facets G != F with F ∩ F' ⊆ F ∩ G for every facet F' != F.
/// NotFoundError if F is not a facet.
std::vector<VertexSet> universal_set(const SimplicialComplex& c, const VertexSet& facet);

/// F is a leaf iff it is the only facet or its universal set is nonempty.
bool is_leaf(const SimplicialComplex& c, const VertexSet& facet);
std::optional<LeafWitness> leaf_witness(const SimplicialComplex& c, const VertexSet& facet);

/// One entry per facet of a leafless subcomplex: for every candidate G the
/// blocking facet whose intersection with F is not contained in F ∩ G.
struct LeafRejection {
  VertexSet facet;
  struct Against {
    VertexSet candidate;
    VertexSet blocker;
    VertexSet facet_blocker_intersection;   // F ∩ blocker
    VertexSet facet_candidate_intersection; // F ∩ candidate
  };
  std::vector<Against> against;
};

struct TreeCertificate {
  bool tree = false;
  /// Removal order when the answer is positive.
  std::vector<VertexSet> leaf_order;
  /// A leafless nonempty subcomplex when the answer is negative, with the
  /// per-facet rejection evidence.
  std::optional<SimplicialComplex> failing_subcomplex;
  std::vector<LeafRejection> rejections;
};

struct ForestOptions {
  int max_facets = SubcomplexRange::kDefaultSubcomplexBound;
};

/// Definitional tree test for a connected complex: every nonempty subcomplex
/// has a leaf. Greedy leaf removal runs first as a fast reject; a greedy
/// success is then confirmed by exhaustive enumeration of connected
/// subcomplexes (greedy success alone certifies only the weaker quasi-forest
/// property). DomainError on disconnected input, ResourceLimitError past the
/// facet bound.
TreeCertificate is_tree_certified(const SimplicialComplex& c, const ForestOptions& opts = {});
bool is_tree(const SimplicialComplex& c, const ForestOptions& opts = {});

/// Every connected component is a tree. Degenerate complexes (void, <∅>)
/// are forests.
bool is_forest(const SimplicialComplex& c, const ForestOptions& opts = {});

/// Repeatedly removes the lowest-index leaf of what remains. Success does
/// not certify a forest; failure certifies a non-forest.
std::optional<std::vector<VertexSet>> greedy_leaf_order(const SimplicialComplex& c);

/// Random forest on at most v vertices with at most q facets: each facet is
/// attached as a leaf of the current complex, and the result is verified by
/// is_forest with rejection resampling. GenerationError after bounded
/// retries.
SimplicialComplex random_forest(int v, int q, std::uint64_t seed);

}  // namespace facetforest
