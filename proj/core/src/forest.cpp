#include "facetforest/forest.hpp"

#include <algorithm>
#include <random>
#include <span>

namespace facetforest {

namespace {

int find_facet_or_throw(const SimplicialComplex& c, const VertexSet& facet) {
  if (!same_universe(facet.universe(), c.universe()))
    throw NotFoundError("facet over a different universe");
  auto idx = c.facet_index(facet.mask());
  if (!idx) throw NotFoundError("not a facet of the complex");
  return *idx;
}

std::uint32_t all_alive(int q) { return q == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << q) - 1; }

}  // namespace

std::vector<VertexSet> universal_set(const SimplicialComplex& c, const VertexSet& facet) {
  int fi = find_facet_or_throw(c, facet);
  auto gs = detail::universal_set_masks(c.facet_masks(), all_alive(c.facet_count()), fi);
  std::vector<VertexSet> out;
  out.reserve(gs.size());
  for (int g : gs) out.push_back(c.facet(g));
  return out;
}

bool is_leaf(const SimplicialComplex& c, const VertexSet& facet) {
  int fi = find_facet_or_throw(c, facet);
  return detail::is_leaf_masks(c.facet_masks(), all_alive(c.facet_count()), fi);
}

std::optional<LeafWitness> leaf_witness(const SimplicialComplex& c, const VertexSet& facet) {
  int fi = find_facet_or_throw(c, facet);
  if (!detail::is_leaf_masks(c.facet_masks(), all_alive(c.facet_count()), fi)) return std::nullopt;
  Mask others = 0;
  for (int i = 0; i < c.facet_count(); ++i)
    if (i != fi) others |= c.facet_masks()[static_cast<std::size_t>(i)];
  LeafWitness w{c.facet(fi), universal_set(c, facet),
                VertexSet(c.universe(), c.facet_masks()[static_cast<std::size_t>(fi)] & ~others)};
  return w;
}

namespace {

struct GreedyResult {
  bool ok;
  std::vector<int> order;       // facet indices in removal order
  std::uint32_t residue = 0;    // live set at failure
};

GreedyResult greedy_on_masks(std::span<const Mask> facets) {
  int q = static_cast<int>(facets.size());
  std::uint32_t alive = all_alive(q);
  GreedyResult r{true, {}, 0};
  while (alive) {
    int leaf = detail::first_leaf(facets, alive);
    if (leaf < 0) return {false, std::move(r.order), alive};
    r.order.push_back(leaf);
    alive &= ~(std::uint32_t{1} << leaf);
  }
  return r;
}

// Facet adjacency restricted to a live subset; used to pull one connected
// component out of a leafless residue (a leafless complex has a leafless
// component, and a connected witness reads better).
std::uint32_t component_of(std::span<const Mask> facets, std::uint32_t alive, int start) {
  std::uint32_t comp = std::uint32_t{1} << start;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int i = 0; i < static_cast<int>(facets.size()); ++i) {
      if (!(alive & (std::uint32_t{1} << i)) || (comp & (std::uint32_t{1} << i))) continue;
      for (int j = 0; j < static_cast<int>(facets.size()); ++j) {
        if (!(comp & (std::uint32_t{1} << j))) continue;
        if ((facets[static_cast<std::size_t>(i)] & facets[static_cast<std::size_t>(j)]) != 0) {
          comp |= std::uint32_t{1} << i;
          grew = true;
          break;
        }
      }
    }
  }
  return comp;
}

std::uint32_t leafless_connected_witness(std::span<const Mask> facets, std::uint32_t leafless) {
  for (int i = 0; i < static_cast<int>(facets.size()); ++i) {
    if (!(leafless & (std::uint32_t{1} << i))) continue;
    std::uint32_t comp = component_of(facets, leafless, i);
    if (detail::first_leaf(facets, comp) < 0) return comp;
  }
  return leafless;  // unreachable: some component of a leafless set is leafless
}

// ESU-style enumeration of connected facet subsets, each visited once.
// Returns a leafless subset or 0.
std::uint32_t find_leafless_connected(std::span<const Mask> facets, const std::vector<std::uint32_t>& adj) {
  int q = static_cast<int>(facets.size());
  std::uint32_t found = 0;
  struct Frame {
    std::uint32_t sub;
    std::uint32_t ext;
  };
  for (int root = 0; root < q && !found; ++root) {
    std::uint32_t above = ~((std::uint32_t{1} << (root + 1)) - 1);
    std::vector<Frame> stack;
    stack.push_back({std::uint32_t{1} << root, adj[static_cast<std::size_t>(root)] & above});
    while (!stack.empty() && !found) {
      Frame fr = stack.back();
      stack.pop_back();
      if (detail::first_leaf(facets, fr.sub) < 0) {
        found = fr.sub;
        break;
      }
      std::uint32_t ext = fr.ext;
      while (ext) {
        int w = std::countr_zero(ext);
        ext &= ext - 1;
        std::uint32_t nsub = fr.sub | (std::uint32_t{1} << w);
        // Extensions: the remaining candidates plus exclusive new neighbors
        // of w, all above the root and outside the current neighborhood.
        std::uint32_t nbhd = 0;
        std::uint32_t s = fr.sub;
        while (s) {
          int j = std::countr_zero(s);
          s &= s - 1;
          nbhd |= adj[static_cast<std::size_t>(j)];
        }
        std::uint32_t next = (ext | (adj[static_cast<std::size_t>(w)] & above & ~nbhd)) & ~nsub;
        stack.push_back({nsub, next});
      }
    }
  }
  return found;
}

std::vector<std::uint32_t> facet_adjacency(std::span<const Mask> facets) {
  int q = static_cast<int>(facets.size());
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(q), 0);
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      if ((facets[static_cast<std::size_t>(i)] & facets[static_cast<std::size_t>(j)]) != 0) {
        adj[static_cast<std::size_t>(i)] |= std::uint32_t{1} << j;
        adj[static_cast<std::size_t>(j)] |= std::uint32_t{1} << i;
      }
  return adj;
}

void fill_rejections(const SimplicialComplex& c, std::uint32_t witness, TreeCertificate& cert) {
  const auto& facets = c.facet_masks();
  int q = c.facet_count();
  for (int fi = 0; fi < q; ++fi) {
    if (!(witness & (std::uint32_t{1} << fi))) continue;
    Mask f = facets[static_cast<std::size_t>(fi)];
    LeafRejection rej{c.facet(fi), {}};
    for (int g = 0; g < q; ++g) {
      if (g == fi || !(witness & (std::uint32_t{1} << g))) continue;
      Mask fg = f & facets[static_cast<std::size_t>(g)];
      for (int o = 0; o < q; ++o) {
        if (o == fi || !(witness & (std::uint32_t{1} << o))) continue;
        Mask fo = f & facets[static_cast<std::size_t>(o)];
        if (!is_subset(fo, fg)) {
          rej.against.push_back({c.facet(g), c.facet(o), VertexSet(c.universe(), fo),
                                 VertexSet(c.universe(), fg)});
          break;
        }
      }
    }
    cert.rejections.push_back(std::move(rej));
  }
}

}  // namespace

TreeCertificate is_tree_certified(const SimplicialComplex& c, const ForestOptions& opts) {
  if (c.facet_count() > opts.max_facets)
    throw ResourceLimitError("tree check over " + std::to_string(c.facet_count()) +
                             " facets exceeds bound " + std::to_string(opts.max_facets));
  if (connected_component_count(c) > 1)
    throw DomainError("is_tree requires a connected complex; use is_forest");
  TreeCertificate cert;
  if (c.is_void()) {
    cert.tree = true;  // vacuous: no nonempty subcomplex
    return cert;
  }
  auto greedy = greedy_on_masks(c.facet_masks());
  if (!greedy.ok) {
    cert.tree = false;
    std::uint32_t witness = leafless_connected_witness(c.facet_masks(), greedy.residue);
    cert.failing_subcomplex = subcomplex_of(c, witness);
    fill_rejections(c, witness, cert);
    return cert;
  }
  auto adj = facet_adjacency(c.facet_masks());
  std::uint32_t leafless = find_leafless_connected(c.facet_masks(), adj);
  if (leafless) {
    cert.tree = false;
    cert.failing_subcomplex = subcomplex_of(c, leafless);
    fill_rejections(c, leafless, cert);
    return cert;
  }
  cert.tree = true;
  for (int i : greedy.order) cert.leaf_order.push_back(c.facet(i));
  return cert;
}

bool is_tree(const SimplicialComplex& c, const ForestOptions& opts) {
  return is_tree_certified(c, opts).tree;
}

bool is_forest(const SimplicialComplex& c, const ForestOptions& opts) {
  if (c.is_void()) return true;
  if (c.facet_count() > opts.max_facets)
    throw ResourceLimitError("forest check over " + std::to_string(c.facet_count()) +
                             " facets exceeds bound " + std::to_string(opts.max_facets));
  for (const auto& component : connected_components(c))
    if (!is_tree_certified(component, opts).tree) return false;
  return true;
}

std::optional<std::vector<VertexSet>> greedy_leaf_order(const SimplicialComplex& c) {
  auto r = greedy_on_masks(c.facet_masks());
  if (!r.ok) return std::nullopt;
  std::vector<VertexSet> order;
  order.reserve(r.order.size());
  for (int i : r.order) order.push_back(c.facet(i));
  return order;
}

SimplicialComplex random_forest(int v, int q, std::uint64_t seed) {
  if (v < 1 || q < 1) throw DomainError("random_forest needs v >= 1 and q >= 1");
  constexpr int kretries = 200;
  for (int attempt = 0; attempt < kretries; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt) * 0x9e3779b97f4a7c15ull);
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(v));
    for (int i = 0; i < v; ++i) names.push_back("x" + std::to_string(i));

    auto rand_int = [&](int lo, int hi) {  // inclusive
      return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };

    int fresh = 0;  // next unused vertex index
    std::vector<Mask> facets;
    int first_size = rand_int(1, std::min(v, 4));
    Mask first = 0;
    for (int i = 0; i < first_size; ++i) first |= bit(fresh++);
    facets.push_back(first);

    while (static_cast<int>(facets.size()) < q && fresh < v) {
      Mask parent = facets[static_cast<std::size_t>(rand_int(0, static_cast<int>(facets.size()) - 1))];
      // Proper nonempty subset of the parent plus at least one fresh vertex:
      // a leaf at attach time, and the antichain survives.
      auto pidx = mask_indices(parent);
      Mask inherited = 0;
      if (popcount(parent) >= 2) {
        int take = rand_int(1, popcount(parent) - 1);
        std::shuffle(pidx.begin(), pidx.end(), rng);
        for (int i = 0; i < take; ++i) inherited |= bit(pidx[static_cast<std::size_t>(i)]);
      } else {
        inherited = 0;  // a single-vertex parent admits only disjoint children
      }
      int max_fresh = std::min(v - fresh, 3);
      int take_fresh = rand_int(1, max_fresh);
      Mask grown = inherited;
      for (int i = 0; i < take_fresh; ++i) grown |= bit(fresh++);
      facets.push_back(grown);
    }

    // Shrink the universe to the vertices actually used.
    Mask used = 0;
    for (Mask f : facets) used |= f;
    std::vector<std::string> used_names;
    std::vector<int> old_of_new;
    for_each_bit(used, [&](int i) {
      used_names.push_back(names[static_cast<std::size_t>(i)]);
      old_of_new.push_back(i);
    });
    std::vector<Mask> remapped;
    for (Mask f : facets) {
      Mask g = 0;
      for (std::size_t nv = 0; nv < old_of_new.size(); ++nv)
        if (f & bit(old_of_new[nv])) g |= bit(static_cast<int>(nv));
      remapped.push_back(g);
    }
    SimplicialComplex out(Universe::make(used_names), remapped);
    if (out.facet_count() <= q && is_forest(out)) return out;
  }
  throw GenerationError("random_forest failed after bounded retries");
}

}  // namespace facetforest
