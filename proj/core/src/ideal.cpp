#include "facetforest/ideal.hpp"

#include <algorithm>
#include <unordered_set>

namespace facetforest {

namespace {

std::vector<Mask> minimalize(const UniversePtr& universe, std::vector<Mask> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Mask> keep;
  keep.reserve(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (i == j) continue;
      if (is_subset(gens[j], gens[i]) && gens[j] != gens[i]) {
        minimal = false;
        break;
      }
    }
    if (minimal) keep.push_back(gens[i]);
  }
  canonical_sort(keep, *universe);
  return keep;
}

}  // namespace

MonomialIdeal::MonomialIdeal(UniversePtr universe, std::vector<Mask> generators, bool unit)
    : universe_(std::move(universe)), generators_(std::move(generators)), unit_(unit) {
  if (!universe_) throw MalformedInputError("ideal without universe");
}

MonomialIdeal MonomialIdeal::zero(UniversePtr universe) {
  return MonomialIdeal(std::move(universe), {}, false);
}

MonomialIdeal MonomialIdeal::unit(UniversePtr universe) {
  return MonomialIdeal(std::move(universe), {}, true);
}

MonomialIdeal MonomialIdeal::of_generators(const UniversePtr& universe, std::vector<Mask> generators) {
  for (Mask g : generators) {
    if ((g & ~universe->full_mask()) != 0)
      throw MalformedInputError("generator outside universe");
    if (g == 0)
      throw MalformedInputError("generator with empty support (unit ideal) is rejected");
  }
  return MonomialIdeal(universe, minimalize(universe, std::move(generators)), false);
}

MonomialIdeal MonomialIdeal::of_vertex_sets(const UniversePtr& universe,
                                            const std::vector<VertexSet>& generators) {
  std::vector<Mask> masks;
  masks.reserve(generators.size());
  for (const auto& g : generators) {
    if (!same_universe(g.universe(), universe))
      throw MalformedInputError("generator over a different universe");
    masks.push_back(g.mask());
  }
  return of_generators(universe, std::move(masks));
}

std::vector<VertexSet> MonomialIdeal::generators() const {
  std::vector<VertexSet> out;
  out.reserve(generators_.size());
  for (Mask g : generators_) out.emplace_back(universe_, g);
  return out;
}

MonomialIdeal facet_ideal(const SimplicialComplex& c) {
  if (c.is_void()) return MonomialIdeal::zero(c.universe());
  if (c.facet_count() == 1 && c.facet_masks()[0] == 0) return MonomialIdeal::unit(c.universe());
  return MonomialIdeal::of_generators(c.universe(), c.facet_masks());
}

MonomialIdeal nonface_ideal(const SimplicialComplex& c) {
  if (c.is_void()) return MonomialIdeal::unit(c.universe());
  int n = c.universe()->size();
  // Level-by-level walk: candidates of size s+1 are face ∪ {v}; a candidate
  // all of whose maximal proper subsets are faces is either a face or a
  // minimal non-face.
  std::unordered_set<Mask> faces_prev;  // faces of size s
  faces_prev.insert(Mask{0});
  std::vector<Mask> minimal_nonfaces;
  for (int s = 0; s < n && !faces_prev.empty(); ++s) {
    std::unordered_set<Mask> candidates;
    for (Mask f : faces_prev)
      for (int v = 0; v < n; ++v)
        if (!(f & bit(v))) candidates.insert(f | bit(v));
    std::unordered_set<Mask> faces_next;
    for (Mask cnd : candidates) {
      bool all_subsets_faces = true;
      for_each_bit(cnd, [&](int v) {
        if (!faces_prev.count(cnd & ~bit(v))) all_subsets_faces = false;
      });
      if (!all_subsets_faces) continue;  // contains a smaller non-face
      if (is_face(c, cnd)) {
        faces_next.insert(cnd);
      } else {
        minimal_nonfaces.push_back(cnd);
      }
    }
    faces_prev = std::move(faces_next);
  }
  if (minimal_nonfaces.empty()) return MonomialIdeal::zero(c.universe());
  return MonomialIdeal::of_generators(c.universe(), std::move(minimal_nonfaces));
}

SimplicialComplex facet_complex(const MonomialIdeal& ideal) {
  Mask used = 0;
  for (Mask g : ideal.generator_masks()) used |= g;
  std::vector<std::string> names;
  std::vector<int> old_of_new;
  for_each_bit(used, [&](int v) {
    names.push_back(ideal.universe()->name(v));
    old_of_new.push_back(v);
  });
  auto sub = Universe::make(std::move(names));
  if (ideal.is_unit()) return SimplicialComplex(sub, {Mask{0}});
  std::vector<Mask> facets;
  facets.reserve(ideal.generator_masks().size());
  for (Mask g : ideal.generator_masks()) {
    Mask f = 0;
    for (std::size_t nv = 0; nv < old_of_new.size(); ++nv)
      if (g & bit(old_of_new[nv])) f |= bit(static_cast<int>(nv));
    facets.push_back(f);
  }
  return SimplicialComplex(sub, std::move(facets));
}

SimplicialComplex nonface_complex(const MonomialIdeal& ideal) {
  if (ideal.is_unit()) return SimplicialComplex(ideal.universe(), {});
  int n = ideal.universe()->size();
  if (n > 24) throw ResourceLimitError("non-face complex enumeration over > 24 variables");
  if (ideal.is_zero())
    return SimplicialComplex(ideal.universe(), {ideal.universe()->full_mask()});
  std::size_t total = std::size_t{1} << n;
  std::vector<bool> face(total);
  for (std::size_t m = 0; m < total; ++m) {
    bool in_ideal = false;
    for (Mask g : ideal.generator_masks())
      if (is_subset(g, static_cast<Mask>(m))) {
        in_ideal = true;
        break;
      }
    face[m] = !in_ideal;
  }
  std::vector<Mask> facets;
  for (std::size_t m = 0; m < total; ++m) {
    if (!face[m]) continue;
    bool maximal = true;
    for (int v = 0; v < n && maximal; ++v)
      if (!(m & bit(v)) && face[m | bit(v)]) maximal = false;
    if (maximal) facets.push_back(static_cast<Mask>(m));
  }
  return SimplicialComplex(ideal.universe(), std::move(facets));
}

bool contains(const MonomialIdeal& ideal, const VertexSet& monomial) {
  if (!same_universe(monomial.universe(), ideal.universe()))
    throw MalformedInputError("monomial over a different universe");
  if (ideal.is_unit()) return true;
  return std::any_of(ideal.generator_masks().begin(), ideal.generator_masks().end(),
                     [&](Mask g) { return is_subset(g, monomial.mask()); });
}

MonomialIdeal localize(const MonomialIdeal& ideal, const VertexSet& prime_support) {
  if (!same_universe(prime_support.universe(), ideal.universe()))
    throw MalformedInputError("localization target over a different universe");
  Mask s = prime_support.mask();
  std::vector<std::string> names;
  std::vector<int> old_of_new;
  for_each_bit(s, [&](int v) {
    names.push_back(ideal.universe()->name(v));
    old_of_new.push_back(v);
  });
  auto sub = Universe::make(std::move(names));
  if (ideal.is_unit()) return MonomialIdeal::unit(sub);
  if (ideal.is_zero()) return MonomialIdeal::zero(sub);
  std::vector<Mask> restricted;
  restricted.reserve(ideal.generator_masks().size());
  for (Mask g : ideal.generator_masks()) {
    Mask r = g & s;
    if (r == 0) return MonomialIdeal::unit(sub);  // generator becomes invertible
    Mask remapped = 0;
    for (std::size_t nv = 0; nv < old_of_new.size(); ++nv)
      if (r & bit(old_of_new[nv])) remapped |= bit(static_cast<int>(nv));
    restricted.push_back(remapped);
  }
  return MonomialIdeal::of_generators(sub, std::move(restricted));
}

}  // namespace facetforest
