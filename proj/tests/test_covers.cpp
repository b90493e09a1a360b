#include <doctest.h>

#include <random>

#include "facetforest/covers.hpp"
#include "facetforest/textio.hpp"
#include "helpers.hpp"

using namespace facetforest;

namespace {

// 2^n subset-scan oracle for minimal covers.
std::set<Mask> minimal_cover_oracle(const SimplicialComplex& c) {
  int n = c.universe()->size();
  std::vector<Mask> covers;
  for (Mask s = 0; s < (Mask{1} << n); ++s) {
    bool ok = true;
    for (Mask f : c.facet_masks())
      if ((f & s) == 0) ok = false;
    if (ok) covers.push_back(s);
  }
  std::set<Mask> minimal;
  for (Mask s : covers) {
    bool keep = true;
    for (Mask t : covers)
      if (t != s && is_subset(t, s)) keep = false;
    if (keep) minimal.insert(s);
  }
  return minimal;
}

std::set<Mask> mask_set(const std::vector<VertexSet>& v) {
  std::set<Mask> out;
  for (const auto& s : v) out.insert(s.mask());
  return out;
}

}  // namespace

TEST_CASE("vertex cover membership on the worked complex") {
  auto c = cx("vertices: x,y,u,v,w\nu,v,w\nx,w\nx,y");
  CHECK(is_vertex_cover(c, VertexSet::of_names(c.universe(), {"x", "w"})));
  CHECK_FALSE(is_vertex_cover(c, VertexSet::of_names(c.universe(), {"x"})));
  CHECK(is_vertex_cover(c, VertexSet(c.universe(), c.universe()->full_mask())));
}

TEST_CASE("minimal covers of the worked complex are the paper's four") {
  auto c = cx("vertices: x,y,u,v,w\nu,v,w\nx,w\nx,y");
  CHECK(name_sets(minimal_vertex_covers(c)) ==
        sets_of({{"x", "w"}, {"y", "w"}, {"x", "v"}, {"x", "u"}}));
}

TEST_CASE("minimal covers of the two-edge star and a point") {
  CHECK(name_sets(minimal_vertex_covers(cx("x,y\nx,z"))) == sets_of({{"x"}, {"y", "z"}}));
  CHECK(name_sets(minimal_vertex_covers(cx("a"))) == sets_of({{"a"}}));
}

TEST_CASE("branch-and-bound equals the subset oracle on random instances") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    int v = 1 + static_cast<int>(rng() % 7);
    std::vector<std::string> names;
    for (int i = 0; i < v; ++i) names.push_back("v" + std::to_string(i));
    auto u = Universe::make(names);
    std::vector<Mask> facets;
    for (int i = 0, q = 1 + static_cast<int>(rng() % 5); i < q; ++i) {
      Mask f = rng() & ((Mask{1} << v) - 1);
      if (f) facets.push_back(f);
    }
    if (facets.empty()) continue;
    SimplicialComplex c(u, facets);
    CHECK(mask_set(minimal_vertex_covers(c)) == minimal_cover_oracle(c));
  }
}

TEST_CASE("every minimal cover is a cover and loses coverage vertexwise") {
  auto c = cx("vertices: x,y,u,v,w\nu,v,w\nx,w\nx,y");
  for (const auto& cover : minimal_vertex_covers(c)) {
    CHECK(is_vertex_cover(c, cover));
    for (int v : cover.indices()) {
      VertexSet smaller(c.universe(), cover.mask() & ~bit(v));
      CHECK_FALSE(is_vertex_cover(c, smaller));
    }
  }
}

TEST_CASE("covering numbers") {
  CHECK(covering_number(cx("x,y\nx,z")) == 1);
  CHECK(covering_number(cx("vertices: x,y,u,v,w\nu,v,w\nx,w\nx,y")) == 2);
  CHECK(covering_number(cx("a")) == 1);
}

TEST_CASE("unmixedness") {
  CHECK(is_unmixed(cx("vertices: x,y,u,v,w\nu,v,w\nx,w\nx,y")));
  CHECK_FALSE(is_unmixed(cx("x,y\nx,z")));
  CHECK(is_unmixed(cx("a,b,c")));
}

TEST_CASE("minimal primes") {
  auto star = id("x*y\nx*z");
  CHECK(name_sets(minimal_primes(star)) == sets_of({{"x"}, {"y", "z"}}));
  auto paper = facet_ideal(cx("vertices: x,y,u,v,w\nu,v,w\nx,w\nx,y"));
  CHECK(name_sets(minimal_primes(paper)) ==
        sets_of({{"x", "w"}, {"y", "w"}, {"x", "v"}, {"x", "u"}}));
  CHECK(name_sets(minimal_primes(id("a"))) == sets_of({{"a"}}));
  CHECK(minimal_primes(MonomialIdeal::zero(Universe::make({"a"}))).empty());
}

TEST_CASE("primary decomposition expands back to the ideal") {
  for (const char* text : {"x*y\nx*z", "a", "vertices: x,y,u,v,w\nu*v*w\nx*w\nx*y"}) {
    auto i = id(text);
    CHECK(primary_decomposition_expand(i) == i);
  }
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 120; ++trial) {
    int v = 1 + static_cast<int>(rng() % 5);
    std::vector<std::string> names;
    for (int i = 0; i < v; ++i) names.push_back("v" + std::to_string(i));
    auto u = Universe::make(names);
    std::vector<Mask> gens;
    for (int i = 0, q = 1 + static_cast<int>(rng() % 4); i < q; ++i) {
      Mask f = rng() & ((Mask{1} << v) - 1);
      if (f) gens.push_back(f);
    }
    if (gens.empty()) continue;
    auto ideal = MonomialIdeal::of_generators(u, gens);
    CHECK(primary_decomposition_expand(ideal) == ideal);
  }
}

TEST_CASE("height and quotient dimension") {
  auto star = id("x*y\nx*z");
  CHECK(height(star) == 1);
  CHECK(dim_quotient(star) == 2);

  auto paper = facet_ideal(cx("vertices: x,y,u,v,w\nu,v,w\nx,w\nx,y"));
  CHECK(height(paper) == 2);
  CHECK(dim_quotient(paper) == 3);
  CHECK(dim_quotient(paper) == nonface_complex(paper).dim() + 1);

  auto point = id("a");
  CHECK(height(point) == 1);
  CHECK(dim_quotient(point) == 0);

  auto zero = MonomialIdeal::zero(Universe::make({"a", "b"}));
  CHECK(height(zero) == 0);
  CHECK(dim_quotient(zero) == 2);
}

TEST_CASE("cover/facet complement duality") {
  CHECK(cover_complement_duality(id("x*y\nx*z")));
  CHECK(cover_complement_duality(id("a*b")));
  CHECK(cover_complement_duality(id("vertices: a,b\na\nb")));  // δN facet is ∅
  CHECK(cover_complement_duality(facet_ideal(cx("vertices: x,y,u,v,w\nu,v,w\nx,w\nx,y"))));
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    int v = 1 + static_cast<int>(rng() % 5);
    std::vector<std::string> names;
    for (int i = 0; i < v; ++i) names.push_back("v" + std::to_string(i));
    auto u = Universe::make(names);
    std::vector<Mask> gens;
    for (int i = 0, q = 1 + static_cast<int>(rng() % 4); i < q; ++i) {
      Mask f = rng() & ((Mask{1} << v) - 1);
      if (f) gens.push_back(f);
    }
    if (gens.empty()) continue;
    CHECK(cover_complement_duality(MonomialIdeal::of_generators(u, gens)));
  }
}

TEST_CASE("height plus quotient dimension is the variable count") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    int v = 1 + static_cast<int>(rng() % 6);
    std::vector<std::string> names;
    for (int i = 0; i < v; ++i) names.push_back("v" + std::to_string(i));
    auto u = Universe::make(names);
    std::vector<Mask> gens;
    for (int i = 0, q = 1 + static_cast<int>(rng() % 4); i < q; ++i) {
      Mask f = rng() & ((Mask{1} << v) - 1);
      if (f) gens.push_back(f);
    }
    if (gens.empty()) continue;
    auto ideal = MonomialIdeal::of_generators(u, gens);
    CHECK(height(ideal) + dim_quotient(ideal) == v);
  }
}
