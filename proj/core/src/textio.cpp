#include "facetforest/textio.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace facetforest {

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

struct Line {
  int number;  // 1-based
  std::string text;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    ++number;
    std::string line(raw);
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    bool blank = std::all_of(line.begin(), line.end(),
                             [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (!blank) out.push_back({number, line});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

std::vector<Token> split_names(const Line& line, std::string_view body, int body_offset, char sep) {
  std::vector<Token> out;
  std::size_t start = 0;
  while (true) {
    std::size_t end = body.find(sep, start);
    std::string_view piece = body.substr(start, end == std::string_view::npos ? end : end - start);
    std::size_t a = piece.find_first_not_of(" \t\r");
    std::size_t b = piece.find_last_not_of(" \t\r");
    int col = body_offset + static_cast<int>(start) + (a == std::string_view::npos ? 0 : static_cast<int>(a)) + 1;
    if (a == std::string_view::npos) {
      throw ParseError(line.number, col, "empty name");
    }
    std::string name(piece.substr(a, b - a + 1));
    if (!is_valid_vertex_name(name))
      throw ParseError(line.number, col, "invalid name '" + name + "'");
    out.push_back({std::move(name), col});
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

bool is_vertices_header(const std::string& text) {
  std::size_t i = text.find_first_not_of(" \t\r");
  return i != std::string::npos && text.compare(i, 9, "vertices:") == 0;
}

struct ParsedFile {
  UniversePtr universe;
  bool had_header = false;
  std::vector<std::vector<Token>> set_lines;  // one entry per facet/monomial line
  std::vector<bool> empty_set;                // `{}` marker lines (complexes only)
};

ParsedFile parse_file(std::string_view text, char sep, bool allow_empty_set) {
  ParsedFile out;
  auto lines = content_lines(text);
  std::size_t first = 0;
  std::vector<std::string> declared;
  if (!lines.empty() && is_vertices_header(lines[0].text)) {
    out.had_header = true;
    const auto& line = lines[0];
    std::size_t colon = line.text.find(':');
    std::string_view body = std::string_view(line.text).substr(colon + 1);
    std::size_t nonblank = body.find_first_not_of(" \t\r");
    if (nonblank != std::string_view::npos) {
      auto tokens = split_names(line, body, static_cast<int>(colon) + 1, ',');
      for (auto& t : tokens) {
        if (std::find(declared.begin(), declared.end(), t.text) != declared.end())
          throw ParseError(line.number, t.column, "duplicate vertex '" + t.text + "'");
        declared.push_back(t.text);
      }
    }
    first = 1;
  }
  std::vector<std::string> appearance = declared;
  for (std::size_t li = first; li < lines.size(); ++li) {
    const auto& line = lines[li];
    if (is_vertices_header(line.text))
      throw ParseError(line.number, 1, "vertices: header must be the first content line");
    std::size_t a = line.text.find_first_not_of(" \t\r");
    std::size_t b = line.text.find_last_not_of(" \t\r");
    std::string trimmed = line.text.substr(a, b - a + 1);
    if (allow_empty_set && trimmed == "{}") {
      out.set_lines.emplace_back();
      out.empty_set.push_back(true);
      continue;
    }
    auto tokens = split_names(line, line.text, 0, sep);
    for (const auto& t : tokens) {
      if (std::find(appearance.begin(), appearance.end(), t.text) == appearance.end()) {
        if (out.had_header)
          throw ParseError(line.number, t.column, "vertex '" + t.text + "' not declared in vertices: header");
        appearance.push_back(t.text);
      }
    }
    for (std::size_t i = 0; i < tokens.size(); ++i)
      for (std::size_t j = i + 1; j < tokens.size(); ++j)
        if (tokens[i].text == tokens[j].text)
          throw ParseError(line.number, tokens[j].column, "repeated name '" + tokens[j].text + "'");
    out.set_lines.push_back(std::move(tokens));
    out.empty_set.push_back(false);
  }
  out.universe = Universe::make(appearance);
  return out;
}

}  // namespace

SimplicialComplex parse_complex(std::string_view text) {
  auto file = parse_file(text, ',', /*allow_empty_set=*/true);
  std::vector<Mask> facets;
  bool has_empty_marker = false;
  Mask covered = 0;
  for (std::size_t i = 0; i < file.set_lines.size(); ++i) {
    if (file.empty_set[i]) {
      has_empty_marker = true;
      facets.push_back(0);
      continue;
    }
    Mask m = 0;
    for (const auto& t : file.set_lines[i]) m |= bit(*file.universe->index_of(t.text));
    covered |= m;
    facets.push_back(m);
  }
  if (!has_empty_marker) {
    for (int v = 0; v < file.universe->size(); ++v)
      if (!(covered & bit(v))) facets.push_back(bit(v));
  }
  return SimplicialComplex(file.universe, std::move(facets));
}

MonomialIdeal parse_ideal(std::string_view text) {
  auto file = parse_file(text, '*', /*allow_empty_set=*/false);
  std::vector<Mask> gens;
  gens.reserve(file.set_lines.size());
  for (const auto& tokens : file.set_lines) {
    Mask m = 0;
    for (const auto& t : tokens) m |= bit(*file.universe->index_of(t.text));
    gens.push_back(m);
  }
  if (gens.empty()) return MonomialIdeal::zero(file.universe);
  return MonomialIdeal::of_generators(file.universe, std::move(gens));
}

namespace {

std::string join_names(const Universe& universe, Mask m, char sep) {
  std::string out;
  bool leading = true;
  for_each_bit(m, [&](int v) {
    if (!leading) out.push_back(sep);
    out += universe.name(v);
    leading = false;
  });
  return out;
}

std::string header(const Universe& universe) {
  std::string out = "vertices:";
  for (int i = 0; i < universe.size(); ++i) {
    out += i == 0 ? " " : ",";
    out += universe.name(i);
  }
  out.push_back('\n');
  return out;
}

}  // namespace

std::string serialize(const SimplicialComplex& c) {
  std::string out = header(*c.universe());
  for (Mask f : c.facet_masks())
    out += f == 0 ? std::string("{}\n") : join_names(*c.universe(), f, ',') + "\n";
  return out;
}

std::string serialize(const MonomialIdeal& ideal) {
  if (ideal.is_unit()) throw MalformedInputError("the unit ideal has no text form");
  std::string out = header(*ideal.universe());
  for (Mask g : ideal.generator_masks()) out += join_names(*ideal.universe(), g, '*') + "\n";
  return out;
}

}  // namespace facetforest
