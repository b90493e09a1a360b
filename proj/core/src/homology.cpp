#include "facetforest/homology.hpp"

#include <algorithm>
#include <unordered_map>

#include "facetforest/covers.hpp"

namespace facetforest {

ChainComplex ChainComplex::of_complex(const SimplicialComplex& c) {
  ChainComplex out;
  if (c.is_void()) return out;
  out.has_empty_face = true;
  auto faces = all_faces(c);
  int dim = c.dim();
  out.faces_by_dim.assign(static_cast<std::size_t>(dim + 1), {});
  for (Mask f : faces) {
    if (f == 0) continue;
    out.faces_by_dim[static_cast<std::size_t>(popcount(f) - 1)].push_back(f);
  }
  // all_faces is sorted by (size, mask), so each dimension slice is sorted.
  out.boundaries.resize(static_cast<std::size_t>(dim + 1));
  const std::vector<Mask> augmentation_row{Mask{0}};
  for (int k = 0; k <= dim; ++k) {
    const auto& rows_faces = k == 0 ? augmentation_row : out.faces_by_dim[static_cast<std::size_t>(k - 1)];
    const auto& col_faces = out.faces_by_dim[static_cast<std::size_t>(k)];
    std::unordered_map<Mask, int> row_index;
    for (std::size_t i = 0; i < rows_faces.size(); ++i) row_index.emplace(rows_faces[i], static_cast<int>(i));
    IntMat d(static_cast<int>(rows_faces.size()), static_cast<int>(col_faces.size()));
    for (std::size_t j = 0; j < col_faces.size(); ++j) {
      Mask face = col_faces[j];
      int sign = 1;
      for_each_bit(face, [&](int v) {
        d.at(row_index.at(face & ~bit(v)), static_cast<int>(j)) = sign;
        sign = -sign;
      });
    }
    out.boundaries[static_cast<std::size_t>(k)] = std::move(d);
  }
  return out;
}

bool ChainComplex::d_squared_is_zero() const {
  for (std::size_t k = 1; k < boundaries.size(); ++k)
    if (!is_zero(multiply(boundaries[k - 1], boundaries[k]))) return false;
  return true;
}

HomologyRanks reduced_homology_ranks(const SimplicialComplex& c, const FieldSpec& field) {
  auto chain = ChainComplex::of_complex(c);
  int dim = c.dim();
  HomologyRanks out;
  out.ranks.assign(static_cast<std::size_t>(dim + 2), 0);
  if (!chain.has_empty_face) return out;  // void complex: everything vanishes

  // dims[k+1] = dim C_k, boundary ranks alongside.
  std::vector<int> cdim(static_cast<std::size_t>(dim + 2), 0);
  cdim[0] = 1;  // the empty face
  for (int k = 0; k <= dim; ++k) cdim[static_cast<std::size_t>(k + 1)] = static_cast<int>(chain.faces_by_dim[static_cast<std::size_t>(k)].size());
  std::vector<int> brank(static_cast<std::size_t>(dim + 3), 0);  // brank[k+1] = rank ∂_k
  for (int k = 0; k <= dim; ++k)
    brank[static_cast<std::size_t>(k + 1)] = rank_over(chain.boundaries[static_cast<std::size_t>(k)], field);
  for (int i = -1; i <= dim; ++i) {
    // H̃_i = ker ∂_i / im ∂_{i+1}; ∂_{-1} = 0.
    int kernel = cdim[static_cast<std::size_t>(i + 1)] - brank[static_cast<std::size_t>(i + 1)];
    out.ranks[static_cast<std::size_t>(i + 1)] = kernel - brank[static_cast<std::size_t>(i + 2)];
  }
  return out;
}

namespace detail {

std::optional<CMWitness> reisner_witness(const SimplicialComplex& gamma, const FieldSpec& field) {
  auto faces = all_faces(gamma);  // sorted by increasing dimension
  for (Mask face : faces) {
    auto lk = link(gamma, VertexSet(gamma.universe(), face));
    int lk_dim = lk.dim();
    if (lk_dim <= -1) continue;  // nothing below dimension -1
    auto ranks = reduced_homology_ranks(lk, field);
    for (int i = -1; i < lk_dim; ++i) {
      if (ranks.rank(i) != 0) return CMWitness{VertexSet(gamma.universe(), face), i};
    }
  }
  return std::nullopt;
}

}  // namespace detail

CMReport is_CM(const SimplicialComplex& c, const FieldSpec& field) {
  CMReport report;
  report.field = field;
  if (c.is_void()) {
    // Zero ideal: the quotient is the whole polynomial ring.
    report.cm = true;
    report.depth = report.dim = c.universe()->size();
    return report;
  }
  auto ideal = facet_ideal(c);
  if (ideal.is_unit()) throw DomainError("facet ideal is the unit ideal; the quotient ring is zero");
  auto gamma = nonface_complex(ideal);
  report.witness = detail::reisner_witness(gamma, field);
  report.cm = !report.witness.has_value();
  report.dim = dim_quotient(ideal);
  report.depth = report.cm ? report.dim : depth_SR(c, field);
  return report;
}

int depth_SR(const SimplicialComplex& c, const FieldSpec& field) {
  auto ideal = facet_ideal(c);
  if (ideal.is_zero()) return c.universe()->size();
  if (ideal.is_unit()) throw DomainError("facet ideal is the unit ideal; the quotient ring is zero");
  auto gamma = nonface_complex(ideal);
  for (int i = gamma.dim(); i >= -1; --i) {
    if (!detail::reisner_witness(skeleton(gamma, i), field)) return i + 1;
  }
  return 0;  // unreachable: the (-1)-skeleton <∅> is Cohen-Macaulay
}

}  // namespace facetforest
