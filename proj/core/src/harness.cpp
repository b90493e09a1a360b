#include "facetforest/harness.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "facetforest/covers.hpp"
#include "facetforest/forest.hpp"
#include "facetforest/homology.hpp"
#include "facetforest/parallel.hpp"
#include "facetforest/textio.hpp"

namespace facetforest {

std::string property_name(PropertyId id) {
  switch (id) {
    case PropertyId::MinPrime: return "P-MINPRIME";
    case PropertyId::PureUnmixed: return "P-PUREUNMIXED";
    case PropertyId::CMUnmixed: return "P-CMUNMIXED";
    case PropertyId::LocForest: return "P-LOCFOREST";
    case PropertyId::Mu: return "P-MU";
    case PropertyId::F1: return "P-F1";
    case PropertyId::Slide: return "P-SLIDE";
    case PropertyId::Scm: return "P-SCM";
    case PropertyId::Dim: return "P-DIM";
    case PropertyId::FreeVertex: return "P-FREEVERTEX";
  }
  return "?";
}

std::optional<PropertyId> parse_property_id(const std::string& name) {
  for (PropertyId id : all_properties())
    if (property_name(id) == name) return id;
  return std::nullopt;
}

std::vector<PropertyId> all_properties() {
  return {PropertyId::MinPrime, PropertyId::PureUnmixed, PropertyId::CMUnmixed,
          PropertyId::LocForest, PropertyId::Mu,         PropertyId::F1,
          PropertyId::Slide,     PropertyId::Scm,        PropertyId::Dim,
          PropertyId::FreeVertex};
}

// ---------------------------------------------------------------------------
// Enumeration up to relabeling

namespace {

Mask apply_perm(Mask m, const std::vector<int>& perm) {
  Mask out = 0;
  for_each_bit(m, [&](int v) { out |= bit(perm[static_cast<std::size_t>(v)]); });
  return out;
}

/// Vertex invariant: sorted sizes of the facets through the vertex, one
/// refinement round with the neighbor multiset folded in.
std::vector<std::vector<std::int64_t>> vertex_keys(int v, const std::vector<Mask>& facets) {
  std::vector<std::vector<std::int64_t>> key(static_cast<std::size_t>(v));
  for (int u = 0; u < v; ++u) {
    std::vector<std::int64_t> sizes;
    for (Mask f : facets)
      if (f & bit(u)) sizes.push_back(popcount(f));
    std::sort(sizes.begin(), sizes.end());
    key[static_cast<std::size_t>(u)] = std::move(sizes);
  }
  std::vector<std::vector<std::int64_t>> refined(static_cast<std::size_t>(v));
  for (int u = 0; u < v; ++u) {
    std::vector<std::int64_t> acc = key[static_cast<std::size_t>(u)];
    acc.push_back(-1);
    std::vector<std::int64_t> neighbor_hashes;
    for (Mask f : facets) {
      if (!(f & bit(u))) continue;
      std::int64_t h = 1469598103934665603ll;
      std::vector<std::int64_t> members;
      for_each_bit(f, [&](int w) {
        std::int64_t wh = 14695981039ll;
        for (std::int64_t x : key[static_cast<std::size_t>(w)]) wh = wh * 1099511628211ll + x + 7;
        members.push_back(wh);
      });
      std::sort(members.begin(), members.end());
      for (std::int64_t x : members) h = h * 1099511628211ll + x;
      neighbor_hashes.push_back(h);
    }
    std::sort(neighbor_hashes.begin(), neighbor_hashes.end());
    acc.insert(acc.end(), neighbor_hashes.begin(), neighbor_hashes.end());
    refined[static_cast<std::size_t>(u)] = std::move(acc);
  }
  return refined;
}

struct CanonContext {
  int v;
  std::vector<std::vector<int>> classes;  // vertex groups with equal keys, in key order
  std::vector<int> class_offset;          // first target label of each class
};

CanonContext canon_context(int v, const std::vector<Mask>& facets) {
  auto keys = vertex_keys(v, facets);
  std::vector<int> order(static_cast<std::size_t>(v));
  for (int i = 0; i < v; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)];
  });
  CanonContext ctx;
  ctx.v = v;
  int offset = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    std::vector<int> group;
    while (j < order.size() &&
           keys[static_cast<std::size_t>(order[j])] == keys[static_cast<std::size_t>(order[i])]) {
      group.push_back(order[j]);
      ++j;
    }
    ctx.classes.push_back(std::move(group));
    ctx.class_offset.push_back(offset);
    offset += static_cast<int>(j - i);
    i = j;
  }
  return ctx;
}

void canon_search(const CanonContext& ctx, const std::vector<Mask>& facets, std::size_t class_idx,
                  std::vector<int>& perm, std::vector<Mask>& best, bool& have_best) {
  if (class_idx == ctx.classes.size()) {
    std::vector<Mask> relabeled;
    relabeled.reserve(facets.size());
    for (Mask f : facets) relabeled.push_back(apply_perm(f, perm));
    std::sort(relabeled.begin(), relabeled.end(), [](Mask a, Mask b) {
      int pa = popcount(a), pb = popcount(b);
      if (pa != pb) return pa < pb;
      return a < b;
    });
    if (!have_best || relabeled < best) {
      best = std::move(relabeled);
      have_best = true;
    }
    return;
  }
  std::vector<int> members = ctx.classes[class_idx];
  std::sort(members.begin(), members.end());
  int offset = ctx.class_offset[class_idx];
  do {
    for (std::size_t k = 0; k < members.size(); ++k)
      perm[static_cast<std::size_t>(members[k])] = offset + static_cast<int>(k);
    canon_search(ctx, facets, class_idx + 1, perm, best, have_best);
  } while (std::next_permutation(members.begin(), members.end()));
}

std::vector<Mask> canonical_form(int v, const std::vector<Mask>& facets) {
  auto ctx = canon_context(v, facets);
  std::vector<int> perm(static_cast<std::size_t>(v));
  std::vector<Mask> best;
  bool have_best = false;
  canon_search(ctx, facets, 0, perm, best, have_best);
  return best;
}

void antichain_search(int v, Mask next, std::vector<Mask>& current, int q_max,
                      const std::function<void(const std::vector<Mask>&)>& handle) {
  Mask full = (Mask{1} << v) - 1;
  if (!current.empty()) {
    Mask covered = 0;
    for (Mask f : current) covered |= f;
    if (covered == full) handle(current);
  }
  if (q_max > 0 && static_cast<int>(current.size()) >= q_max) return;
  for (Mask m = next; m <= full; ++m) {
    bool compatible = true;
    for (Mask f : current) {
      if (is_subset(f, m) || is_subset(m, f)) {
        compatible = false;
        break;
      }
    }
    if (!compatible) continue;
    current.push_back(m);
    antichain_search(v, m + 1, current, q_max, handle);
    current.pop_back();
  }
}

UniversePtr labeled_universe(int v) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(v));
  for (int i = 0; i < v; ++i) names.push_back("x" + std::to_string(i));
  return Universe::make(names);
}

}  // namespace

void for_each_complex_class(int v_max, int q_max,
                            const std::function<void(const SimplicialComplex&)>& fn) {
  if (v_max < 1 || v_max > 6)
    throw ResourceLimitError("complex enumeration supports 1 <= v_max <= 6");
  for (int v = 1; v <= v_max; ++v) {
    auto universe = labeled_universe(v);
    std::set<std::vector<Mask>> seen;
    std::vector<Mask> current;
    antichain_search(v, 1, current, q_max, [&](const std::vector<Mask>& facets) {
      auto canon = canonical_form(v, facets);
      if (seen.insert(canon).second) fn(SimplicialComplex(universe, canon));
    });
  }
}

std::vector<SimplicialComplex> enumerate_complexes(int v_max, int q_max) {
  std::vector<SimplicialComplex> out;
  for_each_complex_class(v_max, q_max, [&](const SimplicialComplex& c) { out.push_back(c); });
  return out;
}

std::int64_t count_complex_classes(int v_max, int q_max) {
  std::int64_t n = 0;
  for_each_complex_class(v_max, q_max, [&](const SimplicialComplex&) { ++n; });
  return n;
}

SimplicialComplex random_complex(int v, int q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Mask full = (Mask{1} << v) - 1;
  std::vector<Mask> facets;
  for (int i = 0; i < q; ++i) {
    Mask f = 0;
    while (f == 0) f = rng() & full;
    facets.push_back(f);
  }
  // Shrink to the used vertices so the instance is a complex in its own
  // right rather than an ideal with idle variables.
  Mask used = 0;
  for (Mask f : facets) used |= f;
  std::vector<std::string> names;
  std::vector<int> old_of_new;
  for_each_bit(used, [&](int i) {
    names.push_back("x" + std::to_string(i));
    old_of_new.push_back(i);
  });
  std::vector<Mask> remapped;
  for (Mask f : facets) {
    Mask g = 0;
    for (std::size_t nv = 0; nv < old_of_new.size(); ++nv)
      if (f & bit(old_of_new[nv])) g |= bit(static_cast<int>(nv));
    remapped.push_back(g);
  }
  return SimplicialComplex(Universe::make(names), remapped);
}

// ---------------------------------------------------------------------------
// Property checkers

namespace {

struct Outcome {
  std::int64_t cases = 0;
  std::int64_t passed = 0;
  std::int64_t failed = 0;
  std::int64_t skipped = 0;
  std::vector<FailureCase> failures;

  void record(bool ok, const SimplicialComplex& instance, const std::string& detail,
              std::optional<std::string> localization = std::nullopt) {
    ++cases;
    if (ok) {
      ++passed;
      return;
    }
    ++failed;
    failures.push_back({serialize(instance), std::move(localization), detail});
  }
};

std::string names_of(const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& n : s.names()) {
    if (!first) out += ",";
    out += n;
    first = false;
  }
  return out + "}";
}

bool is_connected_tree(const SimplicialComplex& c) {
  return !c.is_void() && connected_component_count(c) == 1 && is_tree(c);
}

/// All vertex subsets S with (S) ⊇ I, i.e. the vertex covers of the complex.
std::vector<Mask> all_cover_masks(const SimplicialComplex& c) {
  std::vector<Mask> out;
  Mask full = c.universe()->full_mask();
  for (Mask s = 0;; ++s) {
    bool covers = true;
    for (Mask f : c.facet_masks())
      if ((f & s) == 0) {
        covers = false;
        break;
      }
    if (covers) out.push_back(s);
    if (s == full) break;
  }
  return out;
}

void check_minprime(const SimplicialComplex& c, Outcome& out) {
  auto ideal = facet_ideal(c);
  std::set<Mask> fast;
  for (const auto& p : minimal_primes(ideal)) fast.insert(p.mask());
  // Independent oracle: scan every variable subset, keep those whose prime
  // contains the ideal, minimalize by inclusion.
  std::vector<Mask> containing = all_cover_masks(c);
  std::set<Mask> oracle;
  for (Mask s : containing) {
    bool minimal = true;
    for (Mask t : containing)
      if (t != s && is_subset(t, s)) {
        minimal = false;
        break;
      }
    if (minimal) oracle.insert(s);
  }
  std::ostringstream detail;
  detail << "minimal primes disagree with the subset-scan oracle: " << fast.size() << " vs "
         << oracle.size();
  out.record(fast == oracle, c, detail.str());
}

void check_pure_unmixed(const SimplicialComplex& c, Outcome& out) {
  auto ideal = facet_ideal(c);
  bool unmixed = is_unmixed(c);
  bool pure = nonface_complex(ideal).is_pure();
  out.record(unmixed == pure, c,
             std::string("unmixed=") + (unmixed ? "true" : "false") + " but non-face complex pure=" +
                 (pure ? "true" : "false"));
}

void check_cm_unmixed(const SimplicialComplex& c, Outcome& out) {
  for (const auto& field : {FieldSpec::Q(), FieldSpec::Fp(2)}) {
    auto report = is_CM(c, field);
    bool ok = !report.cm || is_unmixed(c);
    out.record(ok, c, "Cohen-Macaulay over " + field.label() + " but not unmixed");
  }
}

void check_dim(const SimplicialComplex& c, Outcome& out) {
  auto ideal = facet_ideal(c);
  int n = ideal.universe()->size();
  int h = height(ideal);
  int d = dim_quotient(ideal);
  int nonface_dim = nonface_complex(ideal).dim();
  int cover_number = covering_number(c);
  bool ok = h == cover_number && d == n - cover_number && d == nonface_dim + 1;
  std::ostringstream detail;
  detail << "height=" << h << " dim=" << d << " covering=" << cover_number
         << " dim(nonface)+1=" << nonface_dim + 1;
  out.record(ok, c, detail.str());
}

void check_free_vertex(const SimplicialComplex& c, Outcome& out) {
  for (const auto& facet : c.facets()) {
    auto witness = leaf_witness(c, facet);
    if (!witness) continue;
    if (witness->free_vertices.is_empty()) {
      out.record(false, c, "leaf " + names_of(facet) + " has no free vertex");
      return;
    }
  }
  out.record(true, c, "");
}

void check_loc_forest(const SimplicialComplex& c, Outcome& out) {
  if (!is_connected_tree(c)) return;
  auto ideal = facet_ideal(c);
  Mask full = c.universe()->full_mask();
  for (Mask s = 0;; ++s) {
    VertexSet target(c.universe(), s);
    auto localized = facet_complex(localize(ideal, target));
    out.record(is_forest(localized), c, "localized facet complex is not a forest",
               names_of(target));
    if (s == full) break;
  }
}

void check_f1(const SimplicialComplex& c, Outcome& out) {
  if (!is_connected_tree(c)) return;
  auto ideal = facet_ideal(c);
  for (Mask s : all_cover_masks(c)) {
    VertexSet target(c.universe(), s);
    int mu = localize(ideal, target).generator_count();
    int ht_p = popcount(s);
    std::ostringstream detail;
    detail << "mu(I_p)=" << mu << " > dim R_p=" << ht_p;
    out.record(mu <= ht_p, c, detail.str(), names_of(target));
  }
}

void check_mu(const SimplicialComplex& c, Outcome& out) {
  if (!is_connected_tree(c)) return;
  if (!is_CM(c, FieldSpec::Q()).cm) return;
  auto ideal = facet_ideal(c);
  int ht = height(ideal);
  for (Mask s : all_cover_masks(c)) {
    VertexSet target(c.universe(), s);
    int mu = localize(ideal, target).generator_count();
    int bound = std::max(ht, popcount(s) - 1);
    std::ostringstream detail;
    detail << "mu(I_p)=" << mu << " > max{ht I, ht p - 1}=" << bound;
    out.record(mu <= bound, c, detail.str(), names_of(target));
  }
}

bool within_caps(const SimplicialComplex& c, const KoszulCaps& caps) {
  return c.universe()->size() <= caps.max_vars && c.facet_count() <= caps.max_gens;
}

void check_slide(const SimplicialComplex& c, Outcome& out, const KoszulCaps& caps) {
  if (!is_connected_tree(c)) return;
  if (!within_caps(c, caps)) {
    ++out.skipped;
    return;
  }
  auto ideal = facet_ideal(c);
  auto report = sliding_depth_check(ideal, FieldSpec::Q(), caps);
  std::ostringstream detail;
  for (const auto& row : report.per_i)
    if (row.nonzero && !row.sliding_pass)
      detail << "depth H_" << row.i << " = " << *row.depth << " < " << row.sliding_bound << "; ";
  out.record(report.sliding_depth, c, "sliding depth fails: " + detail.str());

  // Two-algorithm agreement on H_0: Auslander-Buchsbaum depth of the
  // presentation versus the skeleton criterion on the non-face complex.
  int via_koszul = depth_module(koszul_homology_presentation(ideal, 0, FieldSpec::Q(), caps), caps);
  int via_skeleton = depth_SR(c, FieldSpec::Q());
  std::ostringstream agree;
  agree << "depth_module(H_0)=" << via_koszul << " != depth_SR=" << via_skeleton;
  out.record(via_koszul == via_skeleton, c, agree.str());
}

void check_scm(const SimplicialComplex& c, Outcome& out, const KoszulCaps& caps) {
  if (!is_connected_tree(c)) return;
  if (!is_CM(c, FieldSpec::Q()).cm) return;
  if (!within_caps(c, caps)) {
    ++out.skipped;
    return;
  }
  auto ideal = facet_ideal(c);
  auto report = strongly_cm_check(ideal, FieldSpec::Q(), caps);
  std::ostringstream detail;
  for (const auto& row : report.per_i)
    if (row.nonzero && !row.cm_pass)
      detail << "depth H_" << row.i << " = " << *row.depth << " != dim R/I = " << report.quotient_dim
             << "; ";
  out.record(report.strongly_cm.value_or(false), c, "strongly CM fails: " + detail.str());
}

bool tree_conditioned(PropertyId id) {
  switch (id) {
    case PropertyId::LocForest:
    case PropertyId::Mu:
    case PropertyId::F1:
    case PropertyId::Slide:
    case PropertyId::Scm:
      return true;
    default:
      return false;
  }
}

void check_instance(PropertyId id, const SimplicialComplex& c, Outcome& out,
                    const KoszulCaps& caps) {
  switch (id) {
    case PropertyId::MinPrime: check_minprime(c, out); break;
    case PropertyId::PureUnmixed: check_pure_unmixed(c, out); break;
    case PropertyId::CMUnmixed: check_cm_unmixed(c, out); break;
    case PropertyId::LocForest: check_loc_forest(c, out); break;
    case PropertyId::Mu: check_mu(c, out); break;
    case PropertyId::F1: check_f1(c, out); break;
    case PropertyId::Slide: check_slide(c, out, caps); break;
    case PropertyId::Scm: check_scm(c, out, caps); break;
    case PropertyId::Dim: check_dim(c, out); break;
    case PropertyId::FreeVertex: check_free_vertex(c, out); break;
  }
}

}  // namespace

PropertyReport verify_property(PropertyId id, const VerifyScope& scope) {
  std::vector<SimplicialComplex> instances;
  if (scope.random) {
    const auto& r = *scope.random;
    for (std::int64_t k = 0; k < r.count; ++k) {
      std::uint64_t seed = r.seed + static_cast<std::uint64_t>(k) * 0x100000001b3ull;
      if (tree_conditioned(id)) {
        std::mt19937_64 rng(seed);
        int v = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, r.v_max - 1)));
        int q = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(r.q_max));
        instances.push_back(random_forest(v, q, seed));
      } else {
        std::mt19937_64 rng(seed);
        int v = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, r.v_max - 1)));
        int q = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(r.q_max));
        instances.push_back(random_complex(v, q, seed));
      }
    }
  } else {
    instances = enumerate_complexes(scope.v_max, scope.q_max);
  }

  std::vector<Outcome> slots(instances.size());
  parallel_for(static_cast<std::int64_t>(instances.size()), scope.threads, [&](std::int64_t i) {
    check_instance(id, instances[static_cast<std::size_t>(i)], slots[static_cast<std::size_t>(i)],
                   scope.caps);
  });

  PropertyReport report;
  report.id = id;
  for (const auto& slot : slots) {
    report.cases += slot.cases;
    report.passed += slot.passed;
    report.failed += slot.failed;
    report.skipped += slot.skipped;
    for (const auto& f : slot.failures)
      if (report.failures.size() < scope.max_recorded_failures) report.failures.push_back(f);
  }
  return report;
}

}  // namespace facetforest
