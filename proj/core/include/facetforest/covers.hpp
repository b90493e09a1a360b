#pragma once

#include <vector>

#include "facetforest/complex.hpp"
#include "facetforest/ideal.hpp"

namespace facetforest {

/// A vertex cover together with its minimality flag.
struct CoverSet {
  VertexSet cover;
  bool minimal;
};

/// True iff A meets every facet. The void complex is covered by anything,
/// including the empty set; a complex containing the empty facet by nothing.
bool is_vertex_cover(const SimplicialComplex& c, const VertexSet& candidate);

/// All inclusion-minimal vertex covers in canonical order, found by
/// branch-and-bound over an uncovered facet per level. The 2^n scan lives in
/// the test suite as the oracle for this search.
std::vector<VertexSet> minimal_vertex_covers(const SimplicialComplex& c);

/// Smallest cardinality of a minimal vertex cover. DomainError when no cover
/// exists (only the complex <∅> has none).
int covering_number(const SimplicialComplex& c);

/// All minimal vertex covers share one cardinality; vacuously true without
/// covers.
bool is_unmixed(const SimplicialComplex& c);

/// Minimal primes of the ideal: the minimal vertex covers of its facet
/// complex, lifted to the ideal's universe. Zero ideal has none.
std::vector<VertexSet> minimal_primes(const MonomialIdeal& ideal);

/// Recomputes the ideal as the intersection of its minimal monomial primes
/// by square-free membership scan, re-minimalized. Must equal the input.
MonomialIdeal primary_decomposition_expand(const MonomialIdeal& ideal);

/// height = vertex covering number of the facet complex; 0 for the zero
/// ideal.
int height(const MonomialIdeal& ideal);

/// dim of the quotient ring: number of variables minus height.
int dim_quotient(const MonomialIdeal& ideal);

/// Self-check of the facet/cover dictionary: the facets of the non-face
/// complex are exactly the universe-complements of the minimal vertex covers
/// of the facet complex.
bool cover_complement_duality(const MonomialIdeal& ideal);

}  // namespace facetforest
