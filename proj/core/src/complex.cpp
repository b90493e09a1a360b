#include "facetforest/complex.hpp"

#include <algorithm>
#include <unordered_set>

namespace facetforest {

namespace {

std::vector<Mask> normalize_masks(const UniversePtr& universe, std::vector<Mask> facets) {
  std::sort(facets.begin(), facets.end());
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
  std::vector<Mask> keep;
  keep.reserve(facets.size());
  for (std::size_t i = 0; i < facets.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < facets.size(); ++j) {
      if (i == j) continue;
      if (facets[i] == facets[j]) continue;  // impossible after unique
      if (is_subset(facets[i], facets[j])) {
        maximal = false;
        break;
      }
    }
    if (maximal) keep.push_back(facets[i]);
  }
  // The empty set survives only as the sole facet.
  if (keep.size() > 1) {
    keep.erase(std::remove(keep.begin(), keep.end(), Mask{0}), keep.end());
  }
  canonical_sort(keep, *universe);
  return keep;
}

}  // namespace

SimplicialComplex::SimplicialComplex(UniversePtr universe, std::vector<Mask> facets)
    : universe_(std::move(universe)) {
  if (!universe_) throw MalformedInputError("complex without universe");
  for (Mask f : facets) {
    if ((f & ~universe_->full_mask()) != 0)
      throw MalformedInputError("facet outside universe");
  }
  facets_ = normalize_masks(universe_, std::move(facets));
}

SimplicialComplex::SimplicialComplex(UniversePtr universe, std::vector<Mask> facets, AlreadyNormalized)
    : universe_(std::move(universe)), facets_(std::move(facets)) {}

SimplicialComplex SimplicialComplex::from_vertex_sets(const UniversePtr& universe,
                                                      const std::vector<VertexSet>& facets) {
  std::vector<Mask> masks;
  masks.reserve(facets.size());
  for (const auto& f : facets) {
    if (!same_universe(f.universe(), universe))
      throw MalformedInputError("facet over a different universe");
    masks.push_back(f.mask());
  }
  return SimplicialComplex(universe, std::move(masks));
}

std::vector<VertexSet> SimplicialComplex::facets() const {
  std::vector<VertexSet> out;
  out.reserve(facets_.size());
  for (Mask f : facets_) out.emplace_back(universe_, f);
  return out;
}

int SimplicialComplex::dim() const {
  int d = -1;
  for (Mask f : facets_) d = std::max(d, popcount(f) - 1);
  return d;
}

bool SimplicialComplex::is_pure() const {
  if (facets_.size() <= 1) return true;
  int s = popcount(facets_.front());
  return std::all_of(facets_.begin(), facets_.end(),
                     [&](Mask f) { return popcount(f) == s; });
}

Mask SimplicialComplex::support_mask() const {
  Mask m = 0;
  for (Mask f : facets_) m |= f;
  return m;
}

std::optional<int> SimplicialComplex::facet_index(Mask facet) const {
  for (int i = 0; i < facet_count(); ++i)
    if (facets_[static_cast<std::size_t>(i)] == facet) return i;
  return std::nullopt;
}

SimplicialComplex normalize(const UniversePtr& universe, const std::vector<Mask>& facets) {
  return SimplicialComplex(universe, facets);
}

namespace {

std::vector<int> component_labels(const std::vector<Mask>& facets) {
  int q = static_cast<int>(facets.size());
  std::vector<int> parent(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      if ((facets[static_cast<std::size_t>(i)] & facets[static_cast<std::size_t>(j)]) != 0) {
        int a = find(i), b = find(j);
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
      }
  std::vector<int> label(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) label[static_cast<std::size_t>(i)] = find(i);
  return label;
}

}  // namespace

int connected_component_count(const SimplicialComplex& c) {
  auto label = component_labels(c.facet_masks());
  std::vector<int> roots;
  for (std::size_t i = 0; i < label.size(); ++i)
    if (label[i] == static_cast<int>(i)) roots.push_back(label[i]);
  return static_cast<int>(roots.size());
}

std::vector<SimplicialComplex> connected_components(const SimplicialComplex& c) {
  const auto& facets = c.facet_masks();
  auto label = component_labels(facets);
  std::vector<int> roots;
  for (std::size_t i = 0; i < label.size(); ++i)
    if (label[i] == static_cast<int>(i)) roots.push_back(static_cast<int>(i));

  std::vector<SimplicialComplex> out;
  out.reserve(roots.size());
  for (int r : roots) {
    std::vector<Mask> group;
    Mask support = 0;
    for (std::size_t i = 0; i < facets.size(); ++i)
      if (label[i] == label[static_cast<std::size_t>(r)]) {
        group.push_back(facets[i]);
        support |= facets[i];
      }
    // Induced sub-universe in original vertex order.
    std::vector<std::string> names;
    std::vector<int> old_of_new;
    for_each_bit(support, [&](int v) {
      names.push_back(c.universe()->name(v));
      old_of_new.push_back(v);
    });
    auto sub = Universe::make(std::move(names));
    std::vector<Mask> remapped;
    remapped.reserve(group.size());
    for (Mask f : group) {
      Mask g = 0;
      for (std::size_t nv = 0; nv < old_of_new.size(); ++nv)
        if (f & bit(old_of_new[nv])) g |= bit(static_cast<int>(nv));
      remapped.push_back(g);
    }
    out.emplace_back(sub, std::move(remapped));
  }
  return out;
}

SimplicialComplex remove_facet(const SimplicialComplex& c, const VertexSet& facet) {
  auto idx = c.facet_index(facet.mask());
  if (!idx || !same_universe(facet.universe(), c.universe()))
    throw NotFoundError("not a facet of the complex");
  std::vector<Mask> rest;
  rest.reserve(c.facet_masks().size() - 1);
  for (int i = 0; i < c.facet_count(); ++i)
    if (i != *idx) rest.push_back(c.facet_masks()[static_cast<std::size_t>(i)]);
  return SimplicialComplex(c.universe(), std::move(rest));
}

SimplicialComplex delete_vertex(const SimplicialComplex& c, int v) {
  if (v < 0 || v >= c.universe()->size()) throw DomainError("vertex index out of range");
  std::vector<std::string> names;
  std::vector<int> old_of_new;
  for (int i = 0; i < c.universe()->size(); ++i) {
    if (i == v) continue;
    names.push_back(c.universe()->name(i));
    old_of_new.push_back(i);
  }
  auto sub = Universe::make(std::move(names));
  std::vector<Mask> remapped;
  remapped.reserve(c.facet_masks().size());
  for (Mask f : c.facet_masks()) {
    Mask g = 0;
    for (std::size_t nv = 0; nv < old_of_new.size(); ++nv)
      if (f & bit(old_of_new[nv])) g |= bit(static_cast<int>(nv));
    remapped.push_back(g);
  }
  return SimplicialComplex(sub, std::move(remapped));
}

SimplicialComplex delete_vertex(const SimplicialComplex& c, const std::string& name) {
  auto idx = c.universe()->index_of(name);
  if (!idx) throw DomainError("unknown vertex: '" + name + "'");
  return delete_vertex(c, *idx);
}

namespace {

// All k-subsets of the set bits of `of`, appended to out.
void subsets_of_size(Mask of, int k, std::vector<Mask>& out) {
  std::vector<int> idx = mask_indices(of);
  int n = static_cast<int>(idx.size());
  if (k < 0 || k > n) return;
  std::vector<int> comb(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
  while (true) {
    Mask m = 0;
    for (int i : comb) m |= bit(idx[static_cast<std::size_t>(i)]);
    out.push_back(m);
    int i = k - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

SimplicialComplex skeleton(const SimplicialComplex& c, int i) {
  if (i < -1 || i > c.dim()) throw DomainError("skeleton index out of range");
  if (i == -1) return SimplicialComplex(c.universe(), {Mask{0}});
  std::vector<Mask> pieces;
  for (Mask f : c.facet_masks()) {
    if (popcount(f) - 1 < i) {
      pieces.push_back(f);
    } else {
      subsets_of_size(f, i + 1, pieces);
    }
  }
  return SimplicialComplex(c.universe(), std::move(pieces));
}

bool is_face(const SimplicialComplex& c, Mask m) {
  return std::any_of(c.facet_masks().begin(), c.facet_masks().end(),
                     [&](Mask f) { return is_subset(m, f); });
}

SimplicialComplex link(const SimplicialComplex& c, const VertexSet& face) {
  if (!same_universe(face.universe(), c.universe()) || !is_face(c, face.mask()))
    throw DomainError("not a face of the complex");
  std::vector<Mask> out;
  for (Mask f : c.facet_masks())
    if (is_subset(face.mask(), f)) out.push_back(f & ~face.mask());
  return SimplicialComplex(c.universe(), std::move(out));
}

std::vector<Mask> all_faces(const SimplicialComplex& c, std::size_t max_faces) {
  std::unordered_set<Mask> seen;
  for (Mask f : c.facet_masks()) {
    // Iterate all submasks of f, including 0 and f itself.
    Mask sub = f;
    while (true) {
      seen.insert(sub);
      if (seen.size() > max_faces) throw ResourceLimitError("face enumeration exceeds cap");
      if (sub == 0) break;
      sub = (sub - 1) & f;
    }
  }
  std::vector<Mask> faces(seen.begin(), seen.end());
  std::sort(faces.begin(), faces.end(), [](Mask a, Mask b) {
    int pa = popcount(a), pb = popcount(b);
    if (pa != pb) return pa < pb;
    return a < b;
  });
  return faces;
}

SimplicialComplex subcomplex_of(const SimplicialComplex& c, std::uint32_t selector) {
  std::vector<Mask> chosen;
  for (int i = 0; i < c.facet_count(); ++i)
    if (selector & (std::uint32_t{1} << i)) chosen.push_back(c.facet_masks()[static_cast<std::size_t>(i)]);
  return SimplicialComplex(c.universe(), std::move(chosen), SimplicialComplex::AlreadyNormalized{});
}

SubcomplexRange::SubcomplexRange(const SimplicialComplex& c, int max_facets) : complex_(c) {
  if (c.facet_count() > max_facets)
    throw ResourceLimitError("subcomplex enumeration over " + std::to_string(c.facet_count()) +
                             " facets exceeds bound " + std::to_string(max_facets));
  end_ = std::uint32_t{1} << c.facet_count();
}

namespace detail {

bool is_leaf_masks(std::span<const Mask> facets, std::uint32_t alive, int fi) {
  return universal_set_masks(facets, alive, fi).size() > 0 ||
         std::popcount(alive) == 1;
}

std::vector<int> universal_set_masks(std::span<const Mask> facets, std::uint32_t alive, int fi) {
  std::vector<int> out;
  Mask f = facets[static_cast<std::size_t>(fi)];
  int q = static_cast<int>(facets.size());
  for (int g = 0; g < q; ++g) {
    if (g == fi || !(alive & (std::uint32_t{1} << g))) continue;
    Mask fg = f & facets[static_cast<std::size_t>(g)];
    bool universal = true;
    for (int o = 0; o < q; ++o) {
      if (o == fi || !(alive & (std::uint32_t{1} << o))) continue;
      if (!is_subset(f & facets[static_cast<std::size_t>(o)], fg)) {
        universal = false;
        break;
      }
    }
    if (universal) out.push_back(g);
  }
  return out;
}

int first_leaf(std::span<const Mask> facets, std::uint32_t alive) {
  int q = static_cast<int>(facets.size());
  if (std::popcount(alive) == 1) {
    for (int i = 0; i < q; ++i)
      if (alive & (std::uint32_t{1} << i)) return i;
  }
  for (int i = 0; i < q; ++i) {
    if (!(alive & (std::uint32_t{1} << i))) continue;
    // Leaf iff some live G != i dominates every live intersection with i.
    Mask f = facets[static_cast<std::size_t>(i)];
    for (int g = 0; g < q; ++g) {
      if (g == i || !(alive & (std::uint32_t{1} << g))) continue;
      Mask fg = f & facets[static_cast<std::size_t>(g)];
      bool universal = true;
      for (int o = 0; o < q; ++o) {
        if (o == i || !(alive & (std::uint32_t{1} << o))) continue;
        if (!is_subset(f & facets[static_cast<std::size_t>(o)], fg)) {
          universal = false;
          break;
        }
      }
      if (universal) return i;
    }
  }
  return -1;
}

}  // namespace detail

}  // namespace facetforest
