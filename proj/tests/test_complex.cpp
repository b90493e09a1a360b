#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "facetforest/complex.hpp"
#include "facetforest/textio.hpp"
#include "helpers.hpp"

using namespace facetforest;

namespace {

// Face-set oracle: closure of the facet list under taking subsets.
std::set<Mask> face_set_oracle(const SimplicialComplex& c) {
  std::set<Mask> faces;
  for (Mask f : c.facet_masks()) {
    Mask sub = f;
    while (true) {
      faces.insert(sub);
      if (sub == 0) break;
      sub = (sub - 1) & f;
    }
  }
  return faces;
}

// Union-find oracle for facet connectivity.
int component_count_oracle(const SimplicialComplex& c) {
  std::vector<Mask> fs = c.facet_masks();
  std::vector<int> parent(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = 0; j < fs.size(); ++j)
      if (i != j && (fs[i] & fs[j])) parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
  std::set<int> roots;
  for (std::size_t i = 0; i < fs.size(); ++i) roots.insert(find(static_cast<int>(i)));
  return static_cast<int>(roots.size());
}

}  // namespace

TEST_CASE("normalize removes contained facets") {
  auto c = cx("x,y\nx");
  CHECK(facet_names(c) == sets_of({{"x", "y"}}));
}

TEST_CASE("normalize keeps the worked three-facet complex") {
  auto c = cx("u,v,w\nx,w\nx,y");
  CHECK(c.facet_count() == 3);
  CHECK(facet_names(c) == sets_of({{"u", "v", "w"}, {"w", "x"}, {"x", "y"}}));
}

TEST_CASE("normalize collapses a full powerset to the simplex") {
  auto u = Universe::make({"a", "b", "c"});
  std::vector<Mask> all;
  for (Mask m = 1; m < 8; ++m) all.push_back(m);
  auto c = SimplicialComplex(u, all);
  CHECK(c.facet_count() == 1);
  CHECK(c.facet_masks()[0] == 0b111);
}

TEST_CASE("normalize is idempotent and order-insensitive") {
  auto u = Universe::make({"a", "b", "c", "d"});
  std::vector<Mask> base = {0b0011, 0b0110, 0b1100, 0b0001, 0b1000};
  std::mt19937_64 rng(7);
  auto reference = SimplicialComplex(u, base);
  for (int trial = 0; trial < 50; ++trial) {
    auto shuffled = base;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto c = SimplicialComplex(u, shuffled);
    CHECK(c == reference);
    CHECK(SimplicialComplex(u, c.facet_masks()) == c);
  }
}

TEST_CASE("dim of the worked complex, the empty complex, and a point") {
  CHECK(cx("u,v,w\nx,w\nx,y").dim() == 2);
  CHECK(cx("{}").dim() == -1);
  CHECK(cx("a").dim() == 0);
}

TEST_CASE("purity") {
  CHECK_FALSE(cx("u,v,w\nx,w\nx,y").is_pure());
  CHECK_FALSE(cx("x\ny,z").is_pure());
  CHECK(cx("a,b\nb,c").is_pure());
}

TEST_CASE("connected components") {
  CHECK(connected_components(cx("a,b\nc,d")).size() == 2);
  auto paper = cx("u,v,w\nx,w\nx,y");
  CHECK(connected_components(paper).size() == 1);
  CHECK(component_count_oracle(paper) == 1);
  CHECK(connected_components(cx("a")).size() == 1);

  // Components carry the induced sub-universe.
  auto parts = connected_components(cx("a,b\nc,d"));
  CHECK(parts[0].universe()->size() == 2);
  CHECK(parts[1].universe()->size() == 2);
}

TEST_CASE("connected components agree with the union-find oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int v = 2 + static_cast<int>(rng() % 5);
    auto u = Universe::make([&] {
      std::vector<std::string> names;
      for (int i = 0; i < v; ++i) names.push_back("v" + std::to_string(i));
      return names;
    }());
    std::vector<Mask> facets;
    int q = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < q; ++i) {
      Mask f = rng() & ((Mask{1} << v) - 1);
      if (f) facets.push_back(f);
    }
    if (facets.empty()) continue;
    SimplicialComplex c(u, facets);
    CHECK(static_cast<int>(connected_components(c).size()) == component_count_oracle(c));
  }
}

TEST_CASE("subcomplex enumeration counts") {
  CHECK(SubcomplexRange(cx("a,b\nb,c")).size() == 3);
  CHECK(SubcomplexRange(cx("u,v,w\nx,w\nx,y")).size() == 7);
  CHECK(SubcomplexRange(cx("a")).size() == 1);
  int seen = 0;
  for (const auto& sub : SubcomplexRange(cx("u,v,w\nx,w\nx,y"))) {
    ++seen;
    CHECK(sub.facet_count() >= 1);
  }
  CHECK(seen == 7);
}

TEST_CASE("subcomplex enumeration respects the facet bound") {
  CHECK_THROWS_AS(SubcomplexRange(cx("a,b\nb,c"), 1), ResourceLimitError);
}

TEST_CASE("remove_facet") {
  auto paper = cx("u,v,w\nx,w\nx,y");
  auto removed = remove_facet(paper, VertexSet::of_names(paper.universe(), {"u", "v", "w"}));
  CHECK(facet_names(removed) == sets_of({{"w", "x"}, {"x", "y"}}));

  auto point = cx("a");
  CHECK(remove_facet(point, VertexSet::of_names(point.universe(), {"a"})).is_void());

  CHECK_THROWS_AS(remove_facet(paper, VertexSet::of_names(paper.universe(), {"u", "v"})),
                  NotFoundError);
}

TEST_CASE("delete_vertex drops redundant restricted facets") {
  auto c = cx("a,b,c\nc,d");
  auto d = delete_vertex(c, "c");
  CHECK(facet_names(d) == sets_of({{"a", "b"}, {"d"}}));
  CHECK(d.universe()->size() == 3);

  auto e = delete_vertex(cx("a,b\na,c"), "a");
  CHECK(facet_names(e) == sets_of({{"b"}, {"c"}}));

  // Deleting an unused universe vertex leaves the facets alone.
  auto f = cx("vertices: a,b,z\na,b");  // z loads as a singleton facet
  auto g = delete_vertex(f, "z");
  CHECK(facet_names(g) == sets_of({{"a", "b"}}));
}

TEST_CASE("delete_vertex never increases the facet count") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    int v = 2 + static_cast<int>(rng() % 5);
    std::vector<std::string> names;
    for (int i = 0; i < v; ++i) names.push_back("v" + std::to_string(i));
    auto u = Universe::make(names);
    std::vector<Mask> facets;
    for (int i = 0, q = 1 + static_cast<int>(rng() % 6); i < q; ++i) {
      Mask f = rng() & ((Mask{1} << v) - 1);
      if (f) facets.push_back(f);
    }
    if (facets.empty()) continue;
    SimplicialComplex c(u, facets);
    int victim = static_cast<int>(rng() % static_cast<std::uint64_t>(v));
    CHECK(delete_vertex(c, victim).facet_count() <= c.facet_count());
  }
}

TEST_CASE("skeleton of the triangle and of a simplex plus point") {
  auto tri = skeleton(cx("a,b,c"), 1);
  CHECK(facet_names(tri) == sets_of({{"a", "b"}, {"a", "c"}, {"b", "c"}}));

  auto pure = cx("a,b\nb,c");
  CHECK(skeleton(pure, pure.dim()) == pure);

  auto mixed = skeleton(cx("a,b,c\nd"), 1);
  CHECK(facet_names(mixed) == sets_of({{"a", "b"}, {"a", "c"}, {"b", "c"}, {"d"}}));

  CHECK_THROWS_AS(skeleton(cx("a,b"), 2), DomainError);
}

TEST_CASE("skeleton faces are faces of the original (face-set oracle)") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    int v = 2 + static_cast<int>(rng() % 4);  // up to 5 vertices
    std::vector<std::string> names;
    for (int i = 0; i < v; ++i) names.push_back("v" + std::to_string(i));
    auto u = Universe::make(names);
    std::vector<Mask> facets;
    for (int i = 0, q = 1 + static_cast<int>(rng() % 4); i < q; ++i) {
      Mask f = rng() & ((Mask{1} << v) - 1);
      if (f) facets.push_back(f);
    }
    if (facets.empty()) continue;
    SimplicialComplex c(u, facets);
    auto faces = face_set_oracle(c);
    for (int i = -1; i <= c.dim(); ++i) {
      auto sk = skeleton(c, i);
      for (Mask f : face_set_oracle(sk)) CHECK(faces.count(f) == 1);
      CHECK(sk.dim() <= i);
    }
  }
}

TEST_CASE("link") {
  auto simplex = cx("a,b,c");
  auto lk = link(simplex, VertexSet::of_names(simplex.universe(), {"a"}));
  CHECK(facet_names(lk) == sets_of({{"b", "c"}}));

  auto paper = cx("u,v,w\nx,w\nx,y");
  CHECK(link(paper, VertexSet::empty(paper.universe())) == paper);

  auto path = cx("a,b\nb,c");
  auto lkb = link(path, VertexSet::of_names(path.universe(), {"b"}));
  CHECK(facet_names(lkb) == sets_of({{"a"}, {"c"}}));

  CHECK_THROWS_AS(link(path, VertexSet::of_names(path.universe(), {"a", "c"})), DomainError);
}

TEST_CASE("link matches its definition on random complexes") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    int v = 2 + static_cast<int>(rng() % 4);
    std::vector<std::string> names;
    for (int i = 0; i < v; ++i) names.push_back("v" + std::to_string(i));
    auto u = Universe::make(names);
    std::vector<Mask> facets;
    for (int i = 0, q = 1 + static_cast<int>(rng() % 4); i < q; ++i) {
      Mask f = rng() & ((Mask{1} << v) - 1);
      if (f) facets.push_back(f);
    }
    if (facets.empty()) continue;
    SimplicialComplex c(u, facets);
    auto faces = face_set_oracle(c);
    for (Mask face : faces) {
      auto lk = link(c, VertexSet(u, face));
      // Definition replay: G in link iff G ∩ F = ∅ and G ∪ F a face.
      std::set<Mask> expected;
      for (Mask g : faces)
        if ((g & face) == 0 && faces.count(g | face)) expected.insert(g);
      CHECK(face_set_oracle(lk) == expected);
    }
  }
}

TEST_CASE("operations are invariant under vertex relabeling") {
  auto c = cx("u,v,w\nx,w\nx,y");
  // Relabel through a name bijection and compare structural outputs.
  std::map<std::string, std::string> rename = {
      {"u", "p4"}, {"v", "p0"}, {"w", "p3"}, {"x", "p1"}, {"y", "p2"}};
  std::vector<std::string> new_names;
  for (int i = 0; i < c.universe()->size(); ++i) new_names.push_back(rename.at(c.universe()->name(i)));
  auto relabeled_universe = Universe::make(new_names);
  SimplicialComplex relabeled(relabeled_universe, c.facet_masks());

  CHECK(relabeled.dim() == c.dim());
  CHECK(relabeled.is_pure() == c.is_pure());
  CHECK(connected_components(relabeled).size() == connected_components(c).size());
  for (int i = -1; i <= c.dim(); ++i)
    CHECK(skeleton(relabeled, i).facet_count() == skeleton(c, i).facet_count());
}

TEST_CASE("complex text round trip is canonical and byte-stable") {
  auto c = cx("# the worked example\nvertices: x,y,u,v,w\nu, v ,w\nx,w\nx,y\n");
  auto text = serialize(c);
  CHECK(text == "vertices: x,y,u,v,w\nx,w\nx,y\nu,v,w\n");
  CHECK(serialize(parse_complex(text)) == text);
}

TEST_CASE("vertices header declares isolated vertices as singleton facets") {
  auto c = cx("vertices: a,b,c\na,b");
  CHECK(facet_names(c) == sets_of({{"a", "b"}, {"c"}}));
}

TEST_CASE("the empty-facet complex survives a round trip") {
  auto c = cx("vertices: a,b\n{}");
  CHECK(c.facet_count() == 1);
  CHECK(c.dim() == -1);
  CHECK(serialize(parse_complex(serialize(c))) == serialize(c));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(cx("vertices: a\nb,c"), ParseError);
  CHECK_THROWS_AS(cx("a,,b"), ParseError);
  CHECK_THROWS_AS(cx("a,1b"), ParseError);
  try {
    cx("vertices: a\nb");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);
  }
}

TEST_CASE("facet index is canonically ordered for the CLI") {
  auto c = cx("vertices: x,y,u,v,w\nu,v,w\nx,w\nx,y");
  // Sorted by (size, lexicographic names): {w,x} renders "x,w" first.
  CHECK(c.facet(0).names() == std::vector<std::string>{"x", "w"});
  CHECK(c.facet(1).names() == std::vector<std::string>{"x", "y"});
  CHECK(c.facet(2).names() == std::vector<std::string>{"u", "v", "w"});
}
