#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "facetforest/errors.hpp"

namespace facetforest {

/// Vertex/variable sets are stored as bit masks over a universe of at most 64
/// named slots. Bit i corresponds to universe index i.
using Mask = std::uint64_t;

inline constexpr int kMaxUniverseSize = 64;

inline int popcount(Mask m) { return std::popcount(m); }
inline bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline Mask bit(int i) { return Mask{1} << i; }

/// Calls fn(index) for each set bit, ascending.
template <class Fn>
void for_each_bit(Mask m, Fn&& fn) {
  while (m) {
    int i = std::countr_zero(m);
    fn(i);
    m &= m - Mask{1};
  }
}

inline std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(popcount(m)));
  for_each_bit(m, [&](int i) { out.push_back(i); });
  return out;
}

class Universe;
using UniversePtr = std::shared_ptr<const Universe>;

/// Ordered list of vertex (or variable) names. Index order is declaration
/// order and is the identity used by masks; immutable and shared.
class Universe {
 public:
  static UniversePtr make(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> index_of(std::string_view name) const;

  /// Rank of each index in name-lexicographic order; used for the canonical
  /// (size, lexicographic names) ordering without string compares.
  int name_rank(int i) const { return rank_.at(static_cast<std::size_t>(i)); }

  Mask full_mask() const {
    return size() == kMaxUniverseSize ? ~Mask{0} : (Mask{1} << size()) - 1;
  }

  bool same_names(const Universe& other) const { return names_ == other.names_; }

 private:
  explicit Universe(std::vector<std::string> names);

  std::vector<std::string> names_;
  std::map<std::string, int, std::less<>> index_;
  std::vector<int> rank_;
};

inline bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  return a == b || (a && b && a->same_names(*b));
}

/// True for names matching [A-Za-z][A-Za-z0-9_]*.
bool is_valid_vertex_name(std::string_view name);

/// A subset of a universe's vertices. Value type; equality compares universe
/// names and member set only.
class VertexSet {
 public:
  VertexSet(UniversePtr universe, Mask mask);

  static VertexSet of_names(const UniversePtr& universe, const std::vector<std::string>& names);
  static VertexSet of_indices(const UniversePtr& universe, const std::vector<int>& indices);
  static VertexSet empty(UniversePtr universe) { return VertexSet(std::move(universe), 0); }

  const UniversePtr& universe() const { return universe_; }
  Mask mask() const { return mask_; }
  int size() const { return popcount(mask_); }
  bool is_empty() const { return mask_ == 0; }
  bool contains(int index) const { return (mask_ & bit(index)) != 0; }
  bool subset_of(const VertexSet& other) const { return is_subset(mask_, other.mask_); }

  std::vector<int> indices() const { return mask_indices(mask_); }
  std::vector<std::string> names() const;

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.mask_ == b.mask_ && same_universe(a.universe_, b.universe_);
  }

 private:
  UniversePtr universe_;
  Mask mask_;
};

/// Canonical order on sets over one universe: by cardinality, then by the
/// name sequences (members listed in universe order) compared with
/// name-lexicographic element order.
bool canonical_mask_less(Mask a, Mask b, const Universe& universe);

/// Sorts masks canonically (ascending) in place.
void canonical_sort(std::vector<Mask>& masks, const Universe& universe);

}  // namespace facetforest
