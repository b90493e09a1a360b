#include "facetforest/universe.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace facetforest {

Universe::Universe(std::vector<std::string> names) : names_(std::move(names)) {
  for (int i = 0; i < size(); ++i) index_.emplace(names_[static_cast<std::size_t>(i)], i);
  rank_.resize(names_.size());
  std::vector<int> order(names_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return names_[static_cast<std::size_t>(a)] < names_[static_cast<std::size_t>(b)];
  });
  for (int r = 0; r < size(); ++r) rank_[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r;
}

UniversePtr Universe::make(std::vector<std::string> names) {
  if (names.size() > static_cast<std::size_t>(kMaxUniverseSize))
    throw ResourceLimitError("universe exceeds " + std::to_string(kMaxUniverseSize) + " vertices");
  for (const auto& n : names) {
    if (!is_valid_vertex_name(n)) throw MalformedInputError("invalid vertex name: '" + n + "'");
  }
  auto u = UniversePtr(new Universe(std::move(names)));
  if (static_cast<int>(u->index_.size()) != u->size())
    throw MalformedInputError("duplicate vertex name in universe");
  return u;
}

std::optional<int> Universe::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool is_valid_vertex_name(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

VertexSet::VertexSet(UniversePtr universe, Mask mask) : universe_(std::move(universe)), mask_(mask) {
  if (!universe_) throw MalformedInputError("vertex set without universe");
  if ((mask_ & ~universe_->full_mask()) != 0)
    throw MalformedInputError("vertex set mask outside universe");
}

VertexSet VertexSet::of_names(const UniversePtr& universe, const std::vector<std::string>& names) {
  Mask m = 0;
  for (const auto& n : names) {
    auto idx = universe->index_of(n);
    if (!idx) throw MalformedInputError("unknown vertex name: '" + n + "'");
    m |= bit(*idx);
  }
  return VertexSet(universe, m);
}

VertexSet VertexSet::of_indices(const UniversePtr& universe, const std::vector<int>& indices) {
  Mask m = 0;
  for (int i : indices) {
    if (i < 0 || i >= universe->size()) throw MalformedInputError("vertex index out of range");
    m |= bit(i);
  }
  return VertexSet(universe, m);
}

std::vector<std::string> VertexSet::names() const {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each_bit(mask_, [&](int i) { out.push_back(universe_->name(i)); });
  return out;
}

bool canonical_mask_less(Mask a, Mask b, const Universe& universe) {
  int pa = popcount(a), pb = popcount(b);
  if (pa != pb) return pa < pb;
  // Element-wise comparison of the universe-ordered member sequences using
  // name ranks, so ties never depend on declaration order of the universe.
  Mask ma = a, mb = b;
  while (ma && mb) {
    int ia = std::countr_zero(ma), ib = std::countr_zero(mb);
    int ra = universe.name_rank(ia), rb = universe.name_rank(ib);
    if (ra != rb) return ra < rb;
    ma &= ma - 1;
    mb &= mb - 1;
  }
  return false;
}

void canonical_sort(std::vector<Mask>& masks, const Universe& universe) {
  std::sort(masks.begin(), masks.end(),
            [&](Mask a, Mask b) { return canonical_mask_less(a, b, universe); });
}

}  // namespace facetforest
