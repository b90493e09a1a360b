#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "facetforest/complex.hpp"
#include "facetforest/ideal.hpp"
#include "facetforest/textio.hpp"

namespace ff = facetforest;

/// Complex literal from the text format, e.g. cx("u,v,w\nx,w\nx,y").
inline ff::SimplicialComplex cx(const std::string& text) { return ff::parse_complex(text); }

/// Ideal literal, e.g. id("x*y\nx*z").
inline ff::MonomialIdeal id(const std::string& text) { return ff::parse_ideal(text); }

/// Facet/generator name lists as a canonical set-of-sets for comparisons.
inline std::set<std::vector<std::string>> name_sets(const std::vector<ff::VertexSet>& sets) {
  std::set<std::vector<std::string>> out;
  for (const auto& s : sets) {
    auto names = s.names();
    std::sort(names.begin(), names.end());
    out.insert(names);
  }
  return out;
}

inline std::set<std::vector<std::string>> facet_names(const ff::SimplicialComplex& c) {
  return name_sets(c.facets());
}

inline std::set<std::vector<std::string>> generator_names(const ff::MonomialIdeal& i) {
  return name_sets(i.generators());
}

inline std::set<std::vector<std::string>> sets_of(std::initializer_list<std::vector<std::string>> lists) {
  std::set<std::vector<std::string>> out;
  for (auto l : lists) {
    std::sort(l.begin(), l.end());
    out.insert(l);
  }
  return out;
}
