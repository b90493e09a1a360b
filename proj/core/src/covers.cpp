#include "facetforest/covers.hpp"

#include <algorithm>
#include <unordered_set>

namespace facetforest {

bool is_vertex_cover(const SimplicialComplex& c, const VertexSet& candidate) {
  if (!same_universe(candidate.universe(), c.universe()))
    throw MalformedInputError("cover candidate over a different universe");
  return std::all_of(c.facet_masks().begin(), c.facet_masks().end(),
                     [&](Mask f) { return (f & candidate.mask()) != 0; });
}

namespace {

void cover_search(const std::vector<Mask>& facets, std::size_t next, Mask chosen,
                  std::unordered_set<Mask>& out) {
  // Invariant: facets before `next` are already met by `chosen`.
  while (next < facets.size() && (facets[next] & chosen) != 0) ++next;
  if (next == facets.size()) {
    out.insert(chosen);
    return;
  }
  for_each_bit(facets[next], [&](int v) { cover_search(facets, next + 1, chosen | bit(v), out); });
}

std::vector<Mask> minimal_cover_masks(const SimplicialComplex& c) {
  for (Mask f : c.facet_masks())
    if (f == 0) return {};  // the empty facet meets nothing
  if (c.is_void()) return {Mask{0}};
  // Branch on the smallest facet first: fewer children per level.
  std::vector<Mask> facets = c.facet_masks();
  std::sort(facets.begin(), facets.end(),
            [](Mask a, Mask b) { return popcount(a) < popcount(b); });
  std::unordered_set<Mask> found;
  cover_search(facets, 0, 0, found);
  std::vector<Mask> covers(found.begin(), found.end());
  std::vector<Mask> minimal;
  for (Mask a : covers) {
    bool keep = true;
    for (Mask b : covers)
      if (b != a && is_subset(b, a)) {
        keep = false;
        break;
      }
    if (keep) minimal.push_back(a);
  }
  canonical_sort(minimal, *c.universe());
  return minimal;
}

}  // namespace

std::vector<VertexSet> minimal_vertex_covers(const SimplicialComplex& c) {
  std::vector<VertexSet> out;
  for (Mask m : minimal_cover_masks(c)) out.emplace_back(c.universe(), m);
  return out;
}

int covering_number(const SimplicialComplex& c) {
  auto covers = minimal_cover_masks(c);
  if (covers.empty()) throw DomainError("complex has no vertex cover");
  int best = kMaxUniverseSize + 1;
  for (Mask m : covers) best = std::min(best, popcount(m));
  return best;
}

bool is_unmixed(const SimplicialComplex& c) {
  auto covers = minimal_cover_masks(c);
  if (covers.size() <= 1) return true;
  int s = popcount(covers.front());
  return std::all_of(covers.begin(), covers.end(), [&](Mask m) { return popcount(m) == s; });
}

std::vector<VertexSet> minimal_primes(const MonomialIdeal& ideal) {
  if (ideal.is_zero() || ideal.is_unit()) return {};
  auto fc = facet_complex(ideal);
  std::vector<VertexSet> out;
  for (Mask m : minimal_cover_masks(fc)) {
    // Lift from the used-variable universe back to the ideal's universe.
    Mask lifted = 0;
    for_each_bit(m, [&](int v) { lifted |= bit(*ideal.universe()->index_of(fc.universe()->name(v))); });
    out.emplace_back(ideal.universe(), lifted);
  }
  return out;
}

MonomialIdeal primary_decomposition_expand(const MonomialIdeal& ideal) {
  if (ideal.is_zero() || ideal.is_unit()) return ideal;
  int n = ideal.universe()->size();
  if (n > 24) throw ResourceLimitError("primary decomposition scan over > 24 variables");
  auto primes = minimal_primes(ideal);
  std::vector<Mask> members;
  for (Mask m = 1, total = ideal.universe()->full_mask(); ; ++m) {
    bool in_all = std::all_of(primes.begin(), primes.end(),
                              [&](const VertexSet& p) { return (p.mask() & m) != 0; });
    if (in_all) members.push_back(m);
    if (m == total) break;
  }
  return MonomialIdeal::of_generators(ideal.universe(), std::move(members));
}

int height(const MonomialIdeal& ideal) {
  if (ideal.is_unit()) throw DomainError("unit ideal has no height over the quotient");
  if (ideal.is_zero()) return 0;
  return covering_number(facet_complex(ideal));
}

int dim_quotient(const MonomialIdeal& ideal) { return ideal.universe()->size() - height(ideal); }

bool cover_complement_duality(const MonomialIdeal& ideal) {
  if (ideal.is_unit()) throw DomainError("unit ideal has no non-face complex dictionary");
  Mask full = ideal.universe()->full_mask();
  std::vector<Mask> complements;
  if (!ideal.is_zero()) {
    for (const auto& p : minimal_primes(ideal)) complements.push_back(full & ~p.mask());
  } else {
    complements.push_back(full);  // zero ideal: sole cover is ∅
  }
  std::sort(complements.begin(), complements.end());
  std::vector<Mask> facets = nonface_complex(ideal).facet_masks();
  std::sort(facets.begin(), facets.end());
  return facets == complements;
}

}  // namespace facetforest
