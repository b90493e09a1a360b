#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "facetforest/universe.hpp"

namespace facetforest {

/// A simplicial complex given by its facet list over a named universe.
///
/// The facet list is always a normalized antichain in canonical order:
/// duplicates and contained sets are removed at construction. Two degenerate
/// values are representable: the void complex (no facets at all) and the
/// complex whose only face is the empty set (a single empty facet). A facet
/// list mixing the empty set with nonempty sets normalizes the empty set
/// away. The universe may contain vertices that appear in no facet; they are
/// ring variables, not faces.
class SimplicialComplex {
 public:
  /// Normalizing constructor.
  SimplicialComplex(UniversePtr universe, std::vector<Mask> facets);

  static SimplicialComplex from_vertex_sets(const UniversePtr& universe,
                                            const std::vector<VertexSet>& facets);

  const UniversePtr& universe() const { return universe_; }
  const std::vector<Mask>& facet_masks() const { return facets_; }
  std::vector<VertexSet> facets() const;
  VertexSet facet(int i) const { return VertexSet(universe_, facets_.at(static_cast<std::size_t>(i))); }

  int facet_count() const { return static_cast<int>(facets_.size()); }
  bool is_void() const { return facets_.empty(); }

  /// Max facet cardinality minus one; -1 for the void complex and for <∅>.
  int dim() const;
  bool is_pure() const;

  /// Union of all facets.
  Mask support_mask() const;

  /// Index of the given facet in the canonical list, if present.
  std::optional<int> facet_index(Mask facet) const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.facets_ == b.facets_ && same_universe(a.universe_, b.universe_);
  }

 private:
  struct AlreadyNormalized {};
  SimplicialComplex(UniversePtr universe, std::vector<Mask> facets, AlreadyNormalized);

  UniversePtr universe_;
  std::vector<Mask> facets_;

  friend SimplicialComplex subcomplex_of(const SimplicialComplex&, std::uint32_t);
};

/// Antichain normalization of an arbitrary facet list.
SimplicialComplex normalize(const UniversePtr& universe, const std::vector<Mask>& facets);

/// Partition of the facets into maximal groups chained by shared vertices.
/// Each component carries the induced sub-universe (its own vertices, in the
/// original order). An empty facet forms its own component.
std::vector<SimplicialComplex> connected_components(const SimplicialComplex& c);

/// Number of components without building the induced complexes.
int connected_component_count(const SimplicialComplex& c);

/// Complex with the given facet removed. NotFoundError if not a facet.
SimplicialComplex remove_facet(const SimplicialComplex& c, const VertexSet& facet);

/// Removes vertex v from every facet, re-normalizes, and drops v from the
/// universe. DomainError if v is not a universe vertex.
SimplicialComplex delete_vertex(const SimplicialComplex& c, int v);
SimplicialComplex delete_vertex(const SimplicialComplex& c, const std::string& name);

/// The i-skeleton as a facet antichain: all i-dimensional faces together
/// with the facets of dimension < i. Requires -1 <= i <= dim.
SimplicialComplex skeleton(const SimplicialComplex& c, int i);

/// link(c, F) = { G : G ∩ F = ∅, G ∪ F a face }, over the same universe.
/// DomainError if F is not a face.
SimplicialComplex link(const SimplicialComplex& c, const VertexSet& face);

bool is_face(const SimplicialComplex& c, Mask m);

/// All faces, including the empty face, sorted by (cardinality, mask).
/// ResourceLimitError when the count would exceed max_faces.
std::vector<Mask> all_faces(const SimplicialComplex& c, std::size_t max_faces = (1u << 22));

/// The subcomplex spanned by the facets selected by `selector` (bit i picks
/// facet i). Facet subsets of an antichain need no re-normalization.
SimplicialComplex subcomplex_of(const SimplicialComplex& c, std::uint32_t selector);

/// Range over all 2^q - 1 nonempty facet-subset subcomplexes.
/// ResourceLimitError at construction when q exceeds the bound.
class SubcomplexRange {
 public:
  explicit SubcomplexRange(const SimplicialComplex& c, int max_facets = kDefaultSubcomplexBound);

  static constexpr int kDefaultSubcomplexBound = 20;

  class Iterator {
   public:
    Iterator(const SimplicialComplex* c, std::uint32_t selector) : c_(c), selector_(selector) {}
    SimplicialComplex operator*() const { return subcomplex_of(*c_, selector_); }
    Iterator& operator++() {
      ++selector_;
      return *this;
    }
    bool operator!=(const Iterator& other) const { return selector_ != other.selector_; }

   private:
    const SimplicialComplex* c_;
    std::uint32_t selector_;
  };

  Iterator begin() const { return Iterator(&complex_, 1); }
  Iterator end() const { return Iterator(&complex_, end_); }
  std::size_t size() const { return end_ - 1; }

 private:
  SimplicialComplex complex_;
  std::uint32_t end_;
};

namespace detail {

/// Facet-level leaf test on raw masks; q == 1 counts as a leaf. `alive`
/// selects the live subset, `fi` the candidate (must be alive).
bool is_leaf_masks(std::span<const Mask> facets, std::uint32_t alive, int fi);

/// Indices of all facets G realizing the leaf containments for facet fi.
std::vector<int> universal_set_masks(std::span<const Mask> facets, std::uint32_t alive, int fi);

/// First (lowest-index) live leaf, or -1.
int first_leaf(std::span<const Mask> facets, std::uint32_t alive);

}  // namespace detail

}  // namespace facetforest
