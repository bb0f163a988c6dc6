#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "eqcalc/group.hpp"

namespace eqcalc {

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"C1", "C2", "C3", "C4", "C5", "C6", "V4", "S3", "D4", "Q8"};
  return names;
}

inline FiniteGroup catalog_group(const std::string& name) {
  auto perms = [](std::vector<std::string> gens, std::size_t degree) {
    std::vector<Permutation> ps;
    for (auto& g : gens) ps.push_back(Permutation::parse(g, degree));
    return FiniteGroup::from_permutations(ps, degree);
  };
  if (name == "C1") return perms({}, 1);
  if (name.size() == 2 && name[0] == 'C' && name[1] >= '2' && name[1] <= '6') {
    std::size_t n = static_cast<std::size_t>(name[1] - '0');
    std::string cyc = "(";
    for (std::size_t i = 1; i <= n; ++i) cyc += std::to_string(i) + (i == n ? ")" : " ");
    return perms({cyc}, n);
  }
  if (name == "V4") return perms({"(1 2)", "(3 4)"}, 4);
  if (name == "S3") return perms({"(1 2 3)", "(1 2)"}, 3);
  if (name == "D4") return perms({"(1 2 3 4)", "(1 3)"}, 4);
  // Regular representation of the quaternion group on 8 points.
  if (name == "Q8") return perms({"(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"}, 8);
  throw InputError("unknown catalog group: " + name);
}

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Group file grammar ('#' starts a comment):
//   catalog: <name>
// or
//   permutations: <degree>
//   <generator in cycle notation>     (one per line)
inline FiniteGroup parse_group_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<std::size_t> degree;
  std::vector<std::string> gens;
  std::optional<std::string> catalog;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon != std::string::npos && !degree && !catalog) {
      std::string key = trim(line.substr(0, colon));
      std::string value = trim(line.substr(colon + 1));
      if (key == "catalog") {
        catalog = value;
        continue;
      }
      if (key == "permutations") {
        try {
          degree = std::stoul(value);
        } catch (const std::exception&) {
          throw InputError("line " + std::to_string(lineno) + ": expected a degree after 'permutations:'");
        }
        if (*degree == 0) throw InputError("permutation degree must be positive");
        continue;
      }
      throw InputError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (!degree) throw InputError("line " + std::to_string(lineno) + ": generator before 'permutations:' header");
    gens.push_back(line);
  }
  if (catalog) {
    if (degree || !gens.empty()) throw InputError("catalog and permutation input cannot be mixed");
    return catalog_group(*catalog);
  }
  if (!degree) throw InputError("group file needs 'catalog:' or 'permutations:'");
  std::vector<Permutation> ps;
  for (auto& g : gens) ps.push_back(Permutation::parse(g, *degree));
  return FiniteGroup::from_permutations(ps, *degree);
}

}  // namespace eqcalc
