// pbt: command-line front end for the partition backtrack solver.
//
// Exit codes: 0 ok, 1 node limit hit, 2 input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pbt/bench.hpp"
#include "pbt/pbt.hpp"
#include "pbt/problem_file.hpp"
#include "pbt/report.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_limit = 1;
constexpr int exit_input = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<pbt::RefinerMode> modes_from(const std::string& text) {
  if (text == "all") return {std::begin(pbt::all_modes), std::end(pbt::all_modes)};
  auto m = pbt::parse_mode(text);
  if (!m) throw InputError("unknown mode '" + text + "' (expected Fixed, PreOrbital, DeepOrbital, FirstOrbital or all)");
  return {*m};
}

pbt::StatsFormat format_from(const std::string& text) {
  auto f = pbt::parse_stats_format(text);
  if (!f) throw InputError("unknown format '" + text + "' (expected text, csv or json-lines)");
  return *f;
}

struct SolveArgs {
  std::string file;
  std::string mode;
  std::string format = "text";
  std::uint64_t node_limit = 0;
  bool trace = false;
};

int run_solve(const SolveArgs& args) {
  pbt::ProblemFile pf = pbt::load_problem(args.file);
  if (!pf.directive) throw InputError(args.file + ": no stab-set, stab-partition or intersect directive");
  if (!args.mode.empty()) pf.mode = modes_from(args.mode).front();
  pbt::Problem problem = pf.to_problem();

  pbt::SearchOptions options;
  if (pf.size_limit) options.size_limit = *pf.size_limit;
  options.node_limit = args.node_limit;
  if (args.trace || pf.trace) options.trace = &std::cout;

  auto start = std::chrono::steady_clock::now();
  pbt::SearchResult result = pbt::solve(problem, options);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  std::cout << "order: " << result.order << "\n";
  std::cout << "generators:";
  if (result.generators.empty()) std::cout << " none";
  std::cout << "\n";
  for (const auto& g : result.generators) std::cout << "  " << pbt::format_cycles(g) << "\n";
  auto record = pbt::make_record(0, pf.seed, problem.mode, problem.degree, result, ms);
  auto format = format_from(args.format);
  if (format == pbt::StatsFormat::Csv) std::cout << pbt::csv_header << "\n";
  pbt::emit_stats(std::cout, record, format);
  if (!result.completed) {
    std::cerr << "node limit reached; result is a subgroup of the answer\n";
    return exit_limit;
  }
  return exit_ok;
}

struct BenchArgs {
  std::string mode = "all";
  std::uint64_t seed = 1;
  std::size_t count = 10;
  std::string format = "csv";
  std::uint64_t node_limit = 10'000'000;
  std::size_t size_limit = 0;
  std::size_t threads = 1;
};

int print_bench(const std::vector<std::vector<pbt::BenchInstance>>& per_mode, const BenchArgs& args) {
  auto format = format_from(args.format);
  pbt::SearchOptions options;
  options.node_limit = args.node_limit;
  if (args.size_limit) options.size_limit = args.size_limit;
  if (format == pbt::StatsFormat::Csv) std::cout << pbt::csv_header << "\n";
  bool limited = false;
  for (const auto& instances : per_mode) {
    for (const auto& record : pbt::run_bench(instances, options, args.threads)) {
      pbt::emit_stats(std::cout, record, format);
      limited |= !record.completed;
    }
  }
  return limited ? exit_limit : exit_ok;
}

int run_bench_grid(std::size_t m, const std::string& variant_text, const BenchArgs& args) {
  if (m == 0) throw InputError("--m must be positive");
  auto variant = pbt::parse_grid_variant(variant_text);
  if (!variant) throw InputError("unknown variant '" + variant_text + "' (expected random or row-balanced)");
  std::vector<std::vector<pbt::BenchInstance>> per_mode;
  for (auto mode : modes_from(args.mode))
    per_mode.push_back(pbt::grid_instances(m, *variant, args.count, mode, args.seed));
  return print_bench(per_mode, args);
}

int run_bench_intersect(const std::string& group_file, const std::string& group_name, const std::string& wreath,
                        const BenchArgs& args) {
  pbt::ProblemFile pf = pbt::load_problem(group_file);
  if (pf.group_order.empty()) throw InputError(group_file + ": no group defined");
  std::string name = group_name.empty() ? pf.group_order.front() : group_name;
  if (!pf.groups.count(name)) throw InputError(group_file + ": undefined group '" + name + "'");

  std::size_t a = 0, b = 0;
  char comma = 0;
  std::istringstream in(wreath);
  if (!(in >> a >> comma >> b) || comma != ',' || !in.eof() || a == 0 || b == 0)
    throw InputError("--wreath expects a,b with positive integers");
  if (a * b != pf.degree)
    throw InputError("wreath product degree " + std::to_string(a * b) + " does not match degree " +
                     std::to_string(pf.degree));
  std::vector<std::vector<pbt::BenchInstance>> per_mode;
  for (auto mode : modes_from(args.mode))
    per_mode.push_back(pbt::intersect_instances(pf.group(name), a, b, args.count, mode, args.seed));
  return print_bench(per_mode, args);
}

int run_selftest() {
  using namespace pbt;
  int failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
    failures += !ok;
  };
  const std::size_t n = 10;
  GeneratedGroup h1(n, {parse_cycles("(1,2,3,4,5,6,7,8,9,10)", n), parse_cycles("(2,10)(3,9)(4,8)(5,7)", n)});
  check(StabilizerChain(h1).order() == 20, "dihedral group of degree 10 has order 20");
  for (auto mode : all_modes) {
    std::string tag = std::string(" (") + std::string(to_string(mode)) + ")";
    check(set_stabilizer(h1, {0, 4}, mode).order == 2, "stabilizer of {1,5} has order 2" + tag);
    check(set_stabilizer(h1, {0, 5}, mode).order == 4, "stabilizer of {1,6} has order 4" + tag);
  }
  check(StabilizerChain(make_grid_group(4)).order() == 576, "4x4 grid group has order 576");
  check(set_stabilizer(make_grid_group(3), {0, 1, 2}, RefinerMode::PreOrbital).order == 12,
        "row stabilizer in the 3x3 grid group has order 12");
  check(orbital_base(StabilizerChain(symmetric_group(6))).empty(), "S_6 has no useful orbital graphs");
  return failures ? exit_limit : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition backtrack search in permutation groups"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve a problem file");
  solve->add_option("file", solve_args.file, "Problem file")->required();
  solve->add_option("--mode", solve_args.mode, "Override the file's refiner mode");
  solve->add_option("--format", solve_args.format, "Stats format: text, csv or json-lines");
  solve->add_option("--node-limit", solve_args.node_limit, "Stop after this many nodes (0 = none)");
  solve->add_flag("--trace", solve_args.trace, "Print every cell split");

  BenchArgs grid_args;
  std::size_t grid_m = 0;
  std::string grid_variant = "random";
  auto* grid = app.add_subcommand("bench-grid", "Set stabilizers in the m x m grid group");
  grid->add_option("--m", grid_m, "Grid side")->required();
  grid->add_option("--variant", grid_variant, "random or row-balanced");
  grid->add_option("--count", grid_args.count, "Instances per mode");
  grid->add_option("--mode", grid_args.mode, "Refiner mode or 'all'");
  grid->add_option("--seed", grid_args.seed, "Seed of instance 0; instance i uses seed+i");
  grid->add_option("--format", grid_args.format, "csv, text or json-lines");
  grid->add_option("--node-limit", grid_args.node_limit, "Per-instance node limit (0 = none)");
  grid->add_option("--size-limit", grid_args.size_limit, "Largest orbital graph to build, in arcs (0 = none)");
  grid->add_option("--threads", grid_args.threads, "Worker threads");

  BenchArgs isect_args;
  isect_args.count = 1;
  std::string group_file, group_name, wreath;
  auto* isect = app.add_subcommand("bench-intersect", "Intersect a group with conjugated wreath products");
  isect->add_option("--group-file", group_file, "Problem file defining the group")->required();
  isect->add_option("--group", group_name, "Group name in the file (default: first defined)");
  isect->add_option("--wreath", wreath, "Block size and block count, a,b")->required();
  isect->add_option("--count", isect_args.count, "Instances per mode");
  isect->add_option("--mode", isect_args.mode, "Refiner mode or 'all'");
  isect->add_option("--seed", isect_args.seed, "Seed of instance 0; instance i uses seed+i");
  isect->add_option("--format", isect_args.format, "csv, text or json-lines");
  isect->add_option("--node-limit", isect_args.node_limit, "Per-instance node limit (0 = none)");
  isect->add_option("--size-limit", isect_args.size_limit, "Largest orbital graph to build, in arcs (0 = none)");
  isect->add_option("--threads", isect_args.threads, "Worker threads");

  auto* selftest = app.add_subcommand("selftest", "Run built-in sanity checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    if (*solve) return run_solve(solve_args);
    if (*grid) return run_bench_grid(grid_m, grid_variant, grid_args);
    if (*isect) return run_bench_intersect(group_file, group_name, wreath, isect_args);
    if (*selftest) return run_selftest();
  } catch (const pbt::ProblemFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  }
  return exit_ok;
}
