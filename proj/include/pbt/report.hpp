#pragma once

// Stats records for solve and bench output. Requires nlohmann/json.

#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pbt/backtrack.hpp"
#include "pbt/refiners.hpp"

namespace pbt {

enum class StatsFormat { Text, Csv, JsonLines };

inline std::optional<StatsFormat> parse_stats_format(std::string_view text) {
  if (text == "text") return StatsFormat::Text;
  if (text == "csv") return StatsFormat::Csv;
  if (text == "json-lines" || text == "jsonl") return StatsFormat::JsonLines;
  return std::nullopt;
}

struct StatsRecord {
  std::size_t instance = 0;
  std::uint64_t seed = 0;
  RefinerMode mode = RefinerMode::FirstOrbital;
  std::size_t degree = 0;
  std::string order;
  SearchStats stats;
  bool completed = true;
  double wall_ms = 0;
};

inline StatsRecord make_record(std::size_t instance, std::uint64_t seed, RefinerMode mode, std::size_t degree,
                               const SearchResult& result, double wall_ms) {
  return {instance, seed, mode, degree, result.order.str(), result.stats, result.completed, wall_ms};
}

/// Column order of the CSV form. wall_ms is always last so rows can be
/// compared across runs by dropping the final field.
inline constexpr std::string_view csv_header =
    "instance,seed,mode,degree,order,nodes_visited,solutions_found,graphs_built,"
    "prunes_by_shape,prunes_by_witness,prunes_by_orbit,max_depth,completed,wall_ms";

inline nlohmann::ordered_json to_json(const StatsRecord& r) {
  nlohmann::ordered_json j;
  j["instance"] = r.instance;
  j["seed"] = r.seed;
  j["mode"] = std::string(to_string(r.mode));
  j["degree"] = r.degree;
  j["order"] = r.order;
  j["nodes_visited"] = r.stats.nodes_visited;
  j["solutions_found"] = r.stats.solutions_found;
  j["graphs_built"] = r.stats.graphs_built;
  j["prunes_by_shape"] = r.stats.prunes_by_shape;
  j["prunes_by_witness"] = r.stats.prunes_by_witness;
  j["prunes_by_orbit"] = r.stats.prunes_by_orbit;
  j["max_depth"] = r.stats.max_depth;
  j["completed"] = r.completed;
  j["wall_ms"] = r.wall_ms;
  return j;
}

inline std::string format_wall(double ms) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << ms;
  return out.str();
}

inline void emit_stats(std::ostream& out, const StatsRecord& r, StatsFormat format) {
  const auto& s = r.stats;
  switch (format) {
    case StatsFormat::Csv:
      out << r.instance << ',' << r.seed << ',' << to_string(r.mode) << ',' << r.degree << ',' << r.order << ','
          << s.nodes_visited << ',' << s.solutions_found << ',' << s.graphs_built << ',' << s.prunes_by_shape << ','
          << s.prunes_by_witness << ',' << s.prunes_by_orbit << ',' << s.max_depth << ','
          << (r.completed ? "true" : "false") << ',' << format_wall(r.wall_ms) << '\n';
      break;
    case StatsFormat::JsonLines:
      out << to_json(r).dump() << '\n';
      break;
    case StatsFormat::Text:
      out << "instance " << r.instance << " seed " << r.seed << " mode " << to_string(r.mode) << " degree "
          << r.degree << " order " << r.order << " nodes " << s.nodes_visited << " solutions " << s.solutions_found
          << " graphs " << s.graphs_built << " prunes " << s.prunes_by_shape << '/' << s.prunes_by_witness << '/'
          << s.prunes_by_orbit << " depth " << s.max_depth << (r.completed ? "" : " (node limit)") << " time "
          << format_wall(r.wall_ms) << "ms\n";
      break;
  }
}

inline std::string emit_stats(const StatsRecord& r, StatsFormat format) {
  std::ostringstream out;
  emit_stats(out, r, format);
  return out.str();
}

}  // namespace pbt
