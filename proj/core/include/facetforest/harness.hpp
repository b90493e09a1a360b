#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "facetforest/complex.hpp"
#include "facetforest/koszul.hpp"

namespace facetforest {

/// The executable properties. Each encodes one proposition as a check over
/// enumerated or randomly generated instances.
enum class PropertyId {
  MinPrime,     // minimal primes = minimal vertex covers
  PureUnmixed,  // facet complex unmixed <=> non-face complex pure
  CMUnmixed,    // Cohen-Macaulay => unmixed (over Q and F_2)
  LocForest,    // localization of a tree is a forest, all vertex subsets
  Mu,           // mu(I_p) <= max{ht I, ht p - 1} for CM trees
  F1,           // mu(I_p) <= dim R_p for trees
  Slide,        // trees have sliding depth (+ two-algorithm H_0 depth check)
  Scm,          // CM trees are strongly Cohen-Macaulay
  Dim,          // dim R/I = dim non-face complex + 1 = n - covering number
  FreeVertex,   // every leaf has a free vertex
};

std::string property_name(PropertyId id);                      // "P-MINPRIME", ...
std::optional<PropertyId> parse_property_id(const std::string& name);
std::vector<PropertyId> all_properties();

/// Exhaustive enumeration of simplicial complexes: for every v <= v_max, all
/// facet antichains over exactly v labeled vertices (every vertex in some
/// facet), with at most q_max facets when q_max > 0, deduplicated up to
/// vertex relabeling. The canonical form is the lexicographically least
/// relabeled facet list over the permutations preserving vertex invariants.
/// Representatives are labeled x0, x1, ...
void for_each_complex_class(int v_max, int q_max,
                            const std::function<void(const SimplicialComplex&)>& fn);
std::vector<SimplicialComplex> enumerate_complexes(int v_max, int q_max = 0);
std::int64_t count_complex_classes(int v_max, int q_max = 0);

/// Uniform random complex: q facets drawn over v labeled vertices, then
/// normalized; the universe shrinks to the used vertices.
SimplicialComplex random_complex(int v, int q, std::uint64_t seed);

struct RandomScope {
  std::int64_t count = 100;
  std::uint64_t seed = 1;
  int v_max = 6;
  int q_max = 4;
};

struct VerifyScope {
  int v_max = 5;
  int q_max = 0;  // 0 = unbounded
  std::optional<RandomScope> random;
  int threads = 1;
  KoszulCaps caps;
  std::size_t max_recorded_failures = 25;
};

/// One failing case: the instance in the module text format, the
/// localization target when the property quantifies over primes, and a
/// human-readable discrepancy.
struct FailureCase {
  std::string instance;
  std::optional<std::string> localization;
  std::string detail;
};

struct PropertyReport {
  PropertyId id{};
  std::int64_t cases = 0;
  std::int64_t passed = 0;
  std::int64_t failed = 0;
  std::int64_t skipped = 0;  // instances past the koszul caps
  std::vector<FailureCase> failures;

  bool ok() const { return failed == 0; }
};

/// Runs one property over the scope: exhaustive enumeration by default,
/// random instances when scope.random is set (forest-shaped generation for
/// the tree-conditioned properties, uniform sampling otherwise). Failures
/// are data, not errors; reports are deterministic given the scope.
PropertyReport verify_property(PropertyId id, const VerifyScope& scope);

}  // namespace facetforest
