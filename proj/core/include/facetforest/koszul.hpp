#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "facetforest/field.hpp"
#include "facetforest/ideal.hpp"
#include "facetforest/matrix.hpp"

namespace facetforest {

/// Z^n-degree: one non-negative exponent per variable.
struct Multidegree {
  std::vector<int> exponents;

  static Multidegree zeros(int n) { return Multidegree{std::vector<int>(static_cast<std::size_t>(n), 0)}; }

  int size() const { return static_cast<int>(exponents.size()); }
  int at(int v) const { return exponents.at(static_cast<std::size_t>(v)); }
  int total() const;
  bool is_zero() const;
  bool leq(const Multidegree& other) const;  // componentwise
  Multidegree plus(const Multidegree& other) const;
  Multidegree plus_e(int v) const;
  /// Componentwise difference; nullopt when any coordinate would go negative.
  std::optional<Multidegree> minus(const Multidegree& other) const;

  bool operator==(const Multidegree&) const = default;
  /// Lexicographic; used only for deterministic ordering of reports.
  bool operator<(const Multidegree& other) const { return exponents < other.exponents; }

  std::string str() const;  // "(1,0,2)"
};

/// Multidegree of a square-free monomial given by its support mask.
Multidegree degree_of_mask(Mask support, int nvars);

/// Basis element e_S of the Koszul complex on the generators, |S| = i, with
/// its degree sum.
struct KoszulBasisElement {
  std::uint32_t subset;  // bit j = generator j (in canonical generator order)
  Multidegree degree;
};

/// Koszul complex on the minimal generators of a square-free monomial
/// ideal: ranks C(q, i), differential entries are signed generators.
struct KoszulDescriptor {
  int q = 0;
  int nvars = 0;
  std::vector<std::vector<KoszulBasisElement>> levels;  // levels[i] = all e_S, |S| = i

  static KoszulDescriptor of(const MonomialIdeal& ideal);
};

/// One degree slice of K_{i+1} -> K_i -> K_{i-1}. Slice basis elements are
/// the pairs (e_S, x^m) with deg e_S + m = a.
struct KoszulSliceElement {
  std::uint32_t subset;
  Multidegree monomial;
};

struct KoszulSlice {
  int i = 0;
  Multidegree degree;
  std::vector<KoszulSliceElement> basis_above;  // level i+1
  std::vector<KoszulSliceElement> basis_here;   // level i
  std::vector<KoszulSliceElement> basis_below;  // level i-1
  IntMat d_above;  // ∂_{i+1} slice: above -> here
  IntMat d_here;   // ∂_i slice: here -> below
};

KoszulSlice koszul_component(const MonomialIdeal& ideal, int i, const Multidegree& a);

/// Finitely generated Z^n-graded module presented by generators and a
/// columnwise-homogeneous relation matrix whose entries are field scalars
/// times monomials. Scalars are stored as exact rationals; over a prime
/// field they are canonical representatives in [0, p).
struct PresentationEntry {
  int generator;
  Rational scalar;
  Multidegree monomial;
};

struct PresentationColumn {
  Multidegree degree;
  std::vector<PresentationEntry> entries;
};

struct MultigradedPresentation {
  int nvars = 0;
  FieldSpec field;
  std::vector<Multidegree> generator_degrees;
  std::vector<PresentationColumn> relations;
};

/// One multigraded Betti number: dim_k Tor_index(M, k) in the given degree.
struct BettiEntry {
  int index;
  Multidegree degree;
  int rank;

  bool operator==(const BettiEntry&) const = default;
};

/// Computation caps; degreewise boxes and generator counts past these fail
/// with ResourceLimitError unless enforcement is disabled.
struct KoszulCaps {
  int max_vars = 8;
  int max_gens = 6;
  std::int64_t max_box = std::int64_t{1} << 22;
  bool enforce = true;
};

/// Full multigraded Betti table of the cokernel module, computed degreewise
/// by tensoring with the Koszul complex on the variables over the module's
/// determining box, with the stability rule (rerun on the enlarged box, up
/// to three rounds, loud failure) applied.
std::vector<BettiEntry> tor_betti(const MultigradedPresentation& m, const KoszulCaps& caps = {});

/// max { index of a nonzero Betti entry }; 0 for a nonzero module with a
/// free presentation. DomainError on the zero module.
int projective_dimension(const MultigradedPresentation& m, const KoszulCaps& caps = {});

/// depth = nvars - projective dimension.
int depth_module(const MultigradedPresentation& m, const KoszulCaps& caps = {});

/// Minimal generators and relations of H_i of the Koszul complex on the
/// generators of the ideal, extracted degreewise over the stability-checked
/// box.
MultigradedPresentation koszul_homology_presentation(const MonomialIdeal& ideal, int i,
                                                     const FieldSpec& field = FieldSpec::Q(),
                                                     const KoszulCaps& caps = {});

struct DepthRow {
  int i = 0;
  bool nonzero = false;
  std::optional<int> depth;      // n - pd(H_i) when nonzero
  std::int64_t dim_in_box = 0;   // total k-dimension of H_i over the box
  int generators = 0;            // number of minimal generators
  int sliding_bound = 0;         // n - q + i
  bool sliding_pass = true;      // vacuous when H_i = 0
  bool cm_pass = true;           // depth == dim R/I, vacuous when H_i = 0
};

struct DepthReport {
  int n = 0;
  int q = 0;
  FieldSpec field;
  int quotient_dim = 0;
  Multidegree box_top;       // accepted box
  int stability_rounds = 1;  // boxes evaluated until agreement
  std::vector<DepthRow> per_i;
  bool sliding_depth = true;
  std::optional<bool> strongly_cm;
};

/// depth H_i(K) >= n - q + i for every i with H_i != 0.
DepthReport sliding_depth_check(const MonomialIdeal& ideal, const FieldSpec& field = FieldSpec::Q(),
                                const KoszulCaps& caps = {});

/// depth H_i(K) = dim R/I for every i with H_i != 0; also fills the sliding
/// verdict.
DepthReport strongly_cm_check(const MonomialIdeal& ideal, const FieldSpec& field = FieldSpec::Q(),
                              const KoszulCaps& caps = {});

}  // namespace facetforest
