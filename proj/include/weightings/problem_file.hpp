#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph_subbundle.hpp"

namespace wtg {

/// INI-like input file. Sections:
///   [weights]      var = int            (one per variable)
///   [target-weights] var = int          (codomain of [map], defaults to [weights])
///   [options]      order, degree, level, names, chart, sign, seed
///   [expressions]  f = expr
///   [map]          target var = expr    (coordinate change)
///   [field]        var = expr           (component along d/dvar)
///   [frame]        V<k>.<var> = expr    (frame field k, component along d/dvar)
///   [coordinates]  name = expr          (new coordinates, listed in weight order)
///   [graph]        graph subbundle text, passed through verbatim
/// Lines starting with '#' are comments. Section order is irrelevant.
struct ProblemFile {
  struct Entry {
    std::string key;
    std::string value;
    std::size_t line = 0;
  };
  std::map<std::string, std::vector<Entry>> sections;
  std::string graph_text;
  bool has_graph = false;

  bool has(const std::string& section) const {
    return section == "graph" ? has_graph : sections.count(section) > 0;
  }
  const std::vector<Entry>& entries(const std::string& section) const {
    static const std::vector<Entry> none;
    auto it = sections.find(section);
    return it == sections.end() ? none : it->second;
  }
  const Entry* find(const std::string& section, const std::string& key) const {
    for (const auto& e : entries(section))
      if (e.key == key) return &e;
    return nullptr;
  }
};

namespace detail {

inline bool is_identifier(const std::string& s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

inline bool valid_key(const std::string& section, const std::string& key) {
  static const std::set<std::string> options{"order", "degree", "level", "names", "chart", "sign", "seed"};
  if (section == "options") return options.count(key) > 0;
  if (section == "expressions") return key == "f";
  if (section == "frame") {
    auto dot = key.find('.');
    if (dot == std::string::npos || dot < 2 || key[0] != 'V') return false;
    for (std::size_t i = 1; i < dot; ++i)
      if (!std::isdigit(static_cast<unsigned char>(key[i]))) return false;
    return is_identifier(key.substr(dot + 1));
  }
  return is_identifier(key);
}

}  // namespace detail

inline ProblemFile parse_problem_file(const std::string& text) {
  static const std::set<std::string> known{"weights", "target-weights", "options", "expressions", "map",
                                           "field", "frame", "coordinates", "graph"};
  ProblemFile pf;
  std::istringstream in(text);
  std::string raw, section;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::trim(raw);
    if (!line.empty() && line.front() == '[' && line.back() == ']') {
      section = detail::trim(line.substr(1, line.size() - 2));
      if (!known.count(section)) throw ParseError("line " + std::to_string(lineno) + ": unknown section [" + section + "]", 0);
      if (pf.has(section)) throw ParseError("line " + std::to_string(lineno) + ": duplicate section [" + section + "]", 0);
      if (section == "graph")
        pf.has_graph = true;
      else
        pf.sections[section];
      continue;
    }
    if (section == "graph") {
      pf.graph_text += raw + "\n";
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    if (section.empty()) throw ParseError("line " + std::to_string(lineno) + ": entry outside of a section", 0);
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value'", 0);
    std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));
    if (!detail::valid_key(section, key))
      throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "' in [" + section + "]", 0);
    if (pf.find(section, key)) throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'", 0);
    if (value.empty()) throw ParseError("line " + std::to_string(lineno) + ": empty value for '" + key + "'", 0);
    pf.sections[section].push_back({key, value, lineno});
  }
  return pf;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace wtg
