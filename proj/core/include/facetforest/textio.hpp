#pragma once

#include <string>
#include <string_view>

#include "facetforest/complex.hpp"
#include "facetforest/ideal.hpp"

namespace facetforest {

/// Complex text format. UTF-8 lines; '#' starts a comment; an optional first
/// line `vertices: v1,v2,...` declares the universe; every other nonblank
/// line is one facet as comma-separated vertex names. Declared vertices that
/// appear in no facet are loaded as singleton facets (an isolated vertex is
/// a facet of its own). The degenerate complex whose only face is the empty
/// set is written as the single line `{}`; a file containing `{}` suppresses
/// the singleton convention.
SimplicialComplex parse_complex(std::string_view text);

/// Ideal text format: same lexical rules, each line one square-free monomial
/// written as asterisk-separated variable names (`x*y*z`). A header plus no
/// monomial lines is the zero ideal.
MonomialIdeal parse_ideal(std::string_view text);

/// Canonical byte-stable serialization: always a `vertices:` header, then
/// facets sorted by (size, lexicographic names), members in universe order,
/// LF line endings.
std::string serialize(const SimplicialComplex& c);

/// Canonical ideal serialization, generators sorted by (size, lexicographic
/// names). The unit ideal has no text form and is rejected.
std::string serialize(const MonomialIdeal& ideal);

}  // namespace facetforest
