#pragma once

#include <vector>

#include "facetforest/complex.hpp"
#include "facetforest/universe.hpp"

namespace facetforest {

/// A square-free monomial ideal, stored as the minimal generating set of
/// supports over a variable universe.
///
/// Generators always form an antichain under divisibility (= support
/// containment) in canonical order. The zero ideal has an empty generator
/// list. The unit ideal is not constructible from user data — a generator
/// with empty support is rejected — but it is representable, because
/// localizing at a prime that does not contain the ideal produces it.
class MonomialIdeal {
 public:
  static MonomialIdeal zero(UniversePtr universe);
  static MonomialIdeal unit(UniversePtr universe);

  /// Minimalizing constructor; throws MalformedInputError on an empty
  /// support (that would be the unit ideal).
  static MonomialIdeal of_generators(const UniversePtr& universe, std::vector<Mask> generators);
  static MonomialIdeal of_vertex_sets(const UniversePtr& universe,
                                      const std::vector<VertexSet>& generators);

  const UniversePtr& universe() const { return universe_; }
  const std::vector<Mask>& generator_masks() const { return generators_; }
  std::vector<VertexSet> generators() const;

  int generator_count() const { return static_cast<int>(generators_.size()); }
  bool is_zero() const { return !unit_ && generators_.empty(); }
  bool is_unit() const { return unit_; }

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
    return a.unit_ == b.unit_ && a.generators_ == b.generators_ &&
           same_universe(a.universe_, b.universe_);
  }

 private:
  MonomialIdeal(UniversePtr universe, std::vector<Mask> generators, bool unit);

  UniversePtr universe_;
  std::vector<Mask> generators_;
  bool unit_ = false;
};

/// Ideal generated by one square-free monomial per facet. The void complex
/// gives the zero ideal; the complex <∅> gives the unit ideal.
MonomialIdeal facet_ideal(const SimplicialComplex& c);

/// Stanley-Reisner ideal: minimal square-free monomials whose support is not
/// a face. Computed level by level over the subset lattice.
MonomialIdeal nonface_ideal(const SimplicialComplex& c);

/// Inverse of facet_ideal. Lives on the variables that actually divide a
/// generator, in declared order; unused variables are dropped.
SimplicialComplex facet_complex(const MonomialIdeal& ideal);

/// Stanley-Reisner complex: faces are the supports of square-free monomials
/// outside the ideal, over the full declared universe.
SimplicialComplex nonface_complex(const MonomialIdeal& ideal);

/// Monomial membership: some generator support is contained in m.
bool contains(const MonomialIdeal& ideal, const VertexSet& monomial);

/// Image of the ideal in the localization at the monomial prime generated by
/// the variables S: every generator is restricted to S and the result is
/// minimalized; the universe shrinks to S. When some generator misses S
/// entirely the localized ideal is the unit ideal.
MonomialIdeal localize(const MonomialIdeal& ideal, const VertexSet& prime_support);

}  // namespace facetforest
