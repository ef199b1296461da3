#pragma once

// Line-oriented problem files:
//
//   # comment
//   degree 10
//   group H = (1,2,3,4,5,6,7,8,9,10), (2,10)(3,9)(4,8)(5,7)
//   stab-set H {1,5}
//   option mode PreOrbital
//
// Directives: stab-set <group> {..}, stab-partition <group> [..|..],
// intersect <group> <group>. Options: mode, size-limit, seed, trace.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pbt/backtrack.hpp"
#include "pbt/group.hpp"
#include "pbt/ordered_partition.hpp"
#include "pbt/permutation.hpp"
#include "pbt/refiners.hpp"

namespace pbt {

class ProblemFileError : public std::runtime_error {
 public:
  ProblemFileError(const std::string& file, std::size_t line, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct StabSetDirective {
  std::string group;
  PointSet set;
};

struct StabPartitionDirective {
  std::string group;
  OrderedPartition partition;
};

struct IntersectDirective {
  std::string left, right;
};

using Directive = std::variant<StabSetDirective, StabPartitionDirective, IntersectDirective>;

struct ProblemFile {
  std::size_t degree = 0;
  std::map<std::string, GeneratedGroup> groups;
  std::vector<std::string> group_order;  ///< names in definition order
  std::optional<Directive> directive;
  RefinerMode mode = RefinerMode::FirstOrbital;
  std::optional<std::size_t> size_limit;
  std::uint64_t seed = 0;
  bool trace = false;

  const GeneratedGroup& group(const std::string& name) const { return groups.at(name); }

  /// Requires a directive.
  Problem to_problem() const {
    Problem p;
    p.degree = degree;
    p.mode = mode;
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, StabSetDirective>) {
            p.properties = {InGroup{group(d.group)}, StabilizesSet{d.set}};
          } else if constexpr (std::is_same_v<T, StabPartitionDirective>) {
            p.properties = {InGroup{group(d.group)}, StabilizesPartition{d.partition}};
          } else {
            p.properties = {InGroup{group(d.left)}, InGroup{group(d.right)}};
          }
        },
        *directive);
    return p;
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string_view next_word(std::string_view& rest) {
  rest = trim(rest);
  std::size_t end = 0;
  while (end < rest.size() && !std::isspace(static_cast<unsigned char>(rest[end]))) ++end;
  std::string_view word = rest.substr(0, end);
  rest = trim(rest.substr(end));
  return word;
}

/// Generators separated by commas outside parentheses.
inline std::vector<Permutation> parse_generators(std::string_view text, std::size_t degree) {
  std::vector<Permutation> gens;
  text = trim(text);
  if (text.empty()) return gens;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      std::string_view item = trim(text.substr(start, i - start));
      if (item.empty()) throw ParseError("empty generator", start);
      gens.push_back(parse_cycles(item, degree));
      start = i + 1;
    }
  }
  return gens;
}

inline PointSet parse_point_set(std::string_view text, std::size_t degree) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') throw ParseError("expected {..}", 0);
  text = text.substr(1, text.size() - 2);
  PointSet out;
  std::vector<bool> used(degree, false);
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    std::string_view t = trim(item);
    if (t.empty()) {
      if (out.empty() && trim(text).empty()) break;
      throw ParseError("empty set element", 0);
    }
    std::size_t value = 0;
    for (char c : t) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad point '" + std::string(t) + "'", 0);
      value = value * 10 + static_cast<std::size_t>(c - '0');
      if (value > degree) break;
    }
    if (value == 0 || value > degree) throw ParseError("point " + std::string(t) + " out of range", 0);
    if (used[value - 1]) throw ParseError("repeated point " + std::string(t), 0);
    used[value - 1] = true;
    out.push_back(static_cast<Point>(value - 1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t parse_count(std::string_view word, const char* what) {
  if (word.empty()) throw std::invalid_argument(std::string("missing ") + what);
  std::size_t value = 0;
  for (char c : word) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument(std::string("bad ") + what);
    value = value * 10 + static_cast<std::size_t>(c - '0');
    if (value > 1'000'000'000) throw std::invalid_argument(std::string(what) + " too large");
  }
  return value;
}

}  // namespace detail

/// Parses a whole problem file. `name` labels error messages.
inline ProblemFile parse_problem(std::istream& in, const std::string& name = "<input>") {
  ProblemFile pf;
  std::string raw;
  std::size_t line_no = 0;
  auto need_degree = [&] {
    if (pf.degree == 0) throw std::invalid_argument("'degree' must come first");
  };
  auto need_group = [&](std::string_view g) -> std::string {
    std::string key(g);
    if (key.empty()) throw std::invalid_argument("missing group name");
    if (!pf.groups.count(key)) throw std::invalid_argument("undefined group '" + key + "'");
    return key;
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    try {
      std::string_view rest = line;
      std::string_view keyword = detail::next_word(rest);
      if (keyword == "degree") {
        if (pf.degree) throw std::invalid_argument("degree given twice");
        pf.degree = detail::parse_count(detail::next_word(rest), "degree");
        if (pf.degree == 0) throw std::invalid_argument("degree must be positive");
        if (pf.degree > 1'000'000) throw std::invalid_argument("degree too large");
        if (!rest.empty()) throw std::invalid_argument("trailing text after degree");
      } else if (keyword == "group") {
        need_degree();
        std::string_view gname = detail::next_word(rest);
        if (gname.empty() || gname.find('=') != std::string_view::npos)
          throw std::invalid_argument("expected 'group <name> = <generators>'");
        if (rest.empty() || rest.front() != '=') throw std::invalid_argument("expected '=' after group name");
        std::string key(gname);
        if (pf.groups.count(key)) throw std::invalid_argument("group '" + key + "' defined twice");
        pf.groups.emplace(key, GeneratedGroup(pf.degree, detail::parse_generators(rest.substr(1), pf.degree)));
        pf.group_order.push_back(key);
      } else if (keyword == "stab-set" || keyword == "stab-partition" || keyword == "intersect") {
        need_degree();
        if (pf.directive) throw std::invalid_argument("more than one directive");
        std::string g = need_group(detail::next_word(rest));
        if (keyword == "stab-set") {
          pf.directive = StabSetDirective{g, detail::parse_point_set(rest, pf.degree)};
        } else if (keyword == "stab-partition") {
          pf.directive = StabPartitionDirective{g, parse_partition(rest, pf.degree)};
        } else {
          std::string h = need_group(detail::next_word(rest));
          if (!rest.empty()) throw std::invalid_argument("trailing text after intersect");
          pf.directive = IntersectDirective{g, h};
        }
      } else if (keyword == "option") {
        std::string_view key = detail::next_word(rest);
        std::string_view value = detail::next_word(rest);
        if (!rest.empty()) throw std::invalid_argument("trailing text after option");
        if (key == "mode") {
          auto m = parse_mode(value);
          if (!m) throw std::invalid_argument("unknown mode '" + std::string(value) + "'");
          pf.mode = *m;
        } else if (key == "size-limit") {
          pf.size_limit = detail::parse_count(value, "size-limit");
        } else if (key == "seed") {
          pf.seed = detail::parse_count(value, "seed");
        } else if (key == "trace") {
          if (value != "on" && value != "off") throw std::invalid_argument("trace must be on or off");
          pf.trace = value == "on";
        } else {
          throw std::invalid_argument("unknown option '" + std::string(key) + "'");
        }
      } else {
        throw std::invalid_argument("unknown keyword '" + std::string(keyword) + "'");
      }
    } catch (const std::exception& e) {
      throw ProblemFileError(name, line_no, e.what());
    }
  }
  if (pf.degree == 0) throw ProblemFileError(name, line_no, "no degree given");
  return pf;
}

inline ProblemFile parse_problem_text(const std::string& text, const std::string& name = "<input>") {
  std::istringstream in(text);
  return parse_problem(in, name);
}

inline ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProblemFileError(path, 0, "cannot open file");
  return parse_problem(in, path);
}

}  // namespace pbt
