#include "cablegraph/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <regex>

#include <CLI11.hpp>
#include <json.hpp>

#include "cablegraph/corpus.hpp"
#include "cablegraph/mcd.hpp"
#include "cablegraph/planner.hpp"

#ifndef CABLEGRAPH_DEFAULT_CORPUS
#define CABLEGRAPH_DEFAULT_CORPUS "corpus"
#endif

namespace cablegraph {

namespace fs = std::filesystem;

namespace {

struct SourceOptions {
  std::string input;
  std::string knot;
  bool random = false;
  std::optional<unsigned> n;
  unsigned slack = 0;
  unsigned cables = 2;
  unsigned crossings = 4;
};

struct NoiseOptions {
  double p_fail = 0.0;
  double p_spawn = 0.0;
  std::uint64_t seed = 0;

  std::optional<NoiseConfig> config() const {
    if (p_fail == 0.0 && p_spawn == 0.0) return std::nullopt;
    return NoiseConfig{p_fail, p_spawn, seed};
  }
};

// Thrown for errors that map to a specific exit code.
struct CliFailure {
  int code;
  std::string message;
};

void add_source_options(CLI::App* cmd, SourceOptions& src, NoiseOptions& noise) {
  cmd->add_option("--input", src.input, "MCD file to read");
  cmd->add_option("--knot", src.knot, "knot class to generate");
  cmd->add_flag("--random", src.random, "generate a random tangle");
  cmd->add_option("--n", src.n, "twist crossings or braid3 generators");
  cmd->add_option("--slack", src.slack, "trivial monogons to add");
  cmd->add_option("--cables", src.cables, "cables in a random tangle");
  cmd->add_option("--crossings", src.crossings, "crossings in a random tangle");
  cmd->add_option("--seed", noise.seed, "seed for random tangles and noise");
}

struct Source {
  Diagram diagram;
  int tier = 0;
  std::string label;
};

int tier_from_path(const std::string& path) {
  static const std::regex pattern(R"(^tier(\d+)_)");
  std::smatch m;
  const std::string stem = fs::path(path).filename().string();
  if (std::regex_search(stem, m, pattern)) return std::stoi(m[1].str());
  return 0;
}

Source load_source(const SourceOptions& src, std::uint64_t seed) {
  const int given = (src.input.empty() ? 0 : 1) + (src.knot.empty() ? 0 : 1) + (src.random ? 1 : 0);
  if (given != 1) throw CliFailure{exit_code::usage, "give exactly one of --input, --knot, --random"};
  if (!src.input.empty()) {
    try {
      return {read_mcd_file(src.input), tier_from_path(src.input), src.input};
    } catch (const ParseError& e) {
      throw CliFailure{exit_code::failure, src.input + ": " + e.what()};
    } catch (const Error& e) {
      throw CliFailure{exit_code::failure, e.what()};
    }
  }
  KnotSpec spec;
  if (src.random) {
    spec.kind = KnotClass::Random;
    spec.seed = seed;
    spec.cables = src.cables;
    spec.crossings = src.crossings;
  } else {
    auto kind = knot_class_from_name(src.knot);
    if (!kind) throw CliFailure{exit_code::usage, "unknown knot class '" + src.knot + "'"};
    spec.kind = *kind;
    if (spec.kind == KnotClass::Random) {
      spec.seed = seed;
      spec.cables = src.cables;
      spec.crossings = src.crossings;
    }
  }
  spec.slack = src.slack;
  if (spec.kind == KnotClass::Twist) spec.n = src.n.value_or(3);
  if (spec.kind == KnotClass::Braid3) spec.n = src.n.value_or(6);
  try {
    return {generate(spec), tier_of(spec.kind), corpus_file_name(spec)};
  } catch (const InvalidSpecError& e) {
    throw CliFailure{exit_code::usage, e.what()};
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text)) throw CliFailure{exit_code::failure, "cannot write " + path};
}

int cmd_gen(const SourceOptions& src, const NoiseOptions& noise, const std::string& out_path, std::ostream& out) {
  if (!src.input.empty()) throw CliFailure{exit_code::usage, "gen takes --knot or --random, not --input"};
  Source source = load_source(src, noise.seed);
  const std::string text = serialize_mcd(source.diagram);
  std::ostringstream summary;
  summary << "crossings " << source.diagram.crossings().size() << " tier " << source.tier;
  if (out_path.empty()) {
    out << text;
  } else {
    write_text_file(out_path, text);
    out << "wrote " << out_path << " | " << summary.str() << '\n';
    return exit_code::ok;
  }
  out << "# " << summary.str() << '\n';
  return exit_code::ok;
}

int outcome_code(Outcome outcome) {
  switch (outcome) {
    case Outcome::Success: return exit_code::ok;
    case Outcome::BudgetExceeded: return exit_code::budget_exceeded;
    case Outcome::Stuck: return exit_code::stuck;
    case Outcome::NoiseStall: return exit_code::noise_stall;
  }
  return exit_code::failure;
}

int cmd_run(const SourceOptions& src, const NoiseOptions& noise, std::optional<std::size_t> budget,
            const std::string& trace_out, const std::string& format, std::ostream& out) {
  Source source = load_source(src, noise.seed);
  const Budget limit = budget ? Budget{*budget} : default_budget(source.tier);
  std::optional<NoiseConfig> cfg = noise.config();
  if (cfg) {
    try {
      check_noise(*cfg);
    } catch (const Error& e) {
      throw CliFailure{exit_code::usage, e.what()};
    }
  }
  const RolloutTrace trace = run(source.diagram, limit, cfg);
  const std::string rendered = format == "json" ? format_trace_jsonl(trace) : format_trace_text(trace);
  if (trace_out.empty()) {
    out << rendered;
  } else {
    write_text_file(trace_out, rendered);
    if (format == "json") {
      // The summary record is the last line of the JSON trace.
      out << rendered.substr(rendered.rfind('\n', rendered.size() - 2) + 1);
    } else {
      out << "outcome " << to_string(trace.outcome) << " | disentangling=" << trace.disentangling_actions
          << " | recovery=" << trace.recovery_actions << " | total=" << trace.total_actions << '\n';
    }
  }
  if (trace.outcome == Outcome::Stuck) out << "stuck: " << trace.detail << '\n';
  return outcome_code(trace.outcome);
}

fs::path corpus_dir() {
  if (const char* env = std::getenv("CABLEGRAPH_CORPUS"); env != nullptr && *env != '\0') return env;
  return CABLEGRAPH_DEFAULT_CORPUS;
}

std::vector<BenchEntry> load_corpus(const fs::path& dir, int tier_filter) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw CliFailure{exit_code::failure, "golden corpus not found at " + dir.string()};
  std::vector<fs::path> files;
  for (const auto& item : fs::directory_iterator(dir, ec)) {
    const auto name = item.path().filename().string();
    if (item.is_regular_file() && item.path().extension() == ".mcd" && name.starts_with("tier")) {
      files.push_back(item.path());
    }
  }
  if (files.empty()) throw CliFailure{exit_code::failure, "golden corpus at " + dir.string() + " has no tier*.mcd files"};
  std::sort(files.begin(), files.end());
  std::vector<BenchEntry> entries;
  for (const auto& path : files) {
    const int tier = tier_from_path(path.string());
    if (tier_filter != 0 && tier != tier_filter) continue;
    std::string name = path.stem().string();
    name = name.substr(name.find('_') + 1);
    try {
      entries.push_back({tier, name, read_mcd_file(path.string())});
    } catch (const Error& e) {
      throw CliFailure{exit_code::failure, path.string() + ": " + e.what()};
    }
  }
  return entries;
}

int cmd_bench(int tier, const NoiseOptions& noise, std::optional<std::size_t> budget, std::size_t repetitions,
              const std::string& format, std::ostream& out) {
  BenchConfig config;
  config.budget = budget;
  config.repetitions = repetitions;
  config.noise = noise.config();
  if (config.noise) {
    try {
      check_noise(*config.noise);
    } catch (const Error& e) {
      throw CliFailure{exit_code::usage, e.what()};
    }
  }
  const StatsTable table = bench(load_corpus(corpus_dir(), tier), config);
  out << (format == "json" ? format_table_json(table) : format_table_text(table));
  return exit_code::ok;
}

int cmd_oracle(const SourceOptions& src, const NoiseOptions& noise, std::size_t max_depth, const std::string& format,
               std::ostream& out) {
  Source source = load_source(src, noise.seed);
  const auto size = potential(source.diagram);
  if (size > kOracleBound) {
    throw CliFailure{exit_code::failure, "input has potential " + std::to_string(size) +
                                             ", above the oracle bound of " + std::to_string(kOracleBound)};
  }
  const OracleResult result = bfs_solve(source.diagram, max_depth);
  const bool verified = result.witness && replay_witness(source.diagram, *result.witness);
  if (format == "json") {
    nlohmann::ordered_json rec;
    rec["status"] = to_string(result.status);
    rec["min_moves"] = result.min_moves ? nlohmann::ordered_json(*result.min_moves) : nlohmann::ordered_json(nullptr);
    rec["states"] = result.states;
    auto witness = nlohmann::ordered_json::array();
    if (result.witness) {
      for (const auto& action : *result.witness) {
        witness.push_back({{"kind", to_string(action.kind)}, {"targets", describe_targets(action)}});
      }
    }
    rec["witness"] = witness;
    rec["replay_verified"] = verified;
    out << rec.dump() << '\n';
  } else if (result.reachable()) {
    out << "reachable in " << *result.min_moves << '\n';
    for (std::size_t i = 0; i < result.witness->size(); ++i) {
      const Action& action = (*result.witness)[i];
      out << "witness " << i << " | " << to_string(action.kind) << " | targets=" << describe_targets(action) << '\n';
    }
    out << "witness replay " << (verified ? "verified" : "FAILED") << '\n';
  } else {
    out << to_string(result.status) << " within depth " << max_depth << " (" << result.states << " states)\n";
  }
  if (result.reachable()) return verified ? exit_code::ok : exit_code::failure;
  return result.status == OracleResult::Status::Unknown ? exit_code::oracle_unknown : exit_code::oracle_unreachable;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-cable knot diagram engine", "cablegraph"};
  app.require_subcommand(1);

  SourceOptions src;
  NoiseOptions noise;
  std::optional<std::size_t> budget;
  std::string out_path, trace_out, format = "text";
  int tier = 0;
  std::size_t max_depth = 12;
  std::size_t repetitions = 1;
  const auto formats = CLI::IsMember({"text", "json"});

  auto* gen = app.add_subcommand("gen", "write a generated diagram as MCD");
  add_source_options(gen, src, noise);
  gen->add_option("--out", out_path, "output path (stdout if omitted)");

  auto* run_cmd = app.add_subcommand("run", "disentangle one diagram and print the trace");
  add_source_options(run_cmd, src, noise);
  run_cmd->add_option("--budget", budget, "maximum disentangling actions (tier default if omitted)");
  run_cmd->add_option("--noise-fail", noise.p_fail, "probability an action has no effect");
  run_cmd->add_option("--noise-spawn", noise.p_spawn, "probability an action leaves a new monogon");
  run_cmd->add_option("--trace-out", trace_out, "write the trace here instead of stdout");
  run_cmd->add_option("--format", format, "text or json")->check(formats);

  auto* bench_cmd = app.add_subcommand("bench", "run the golden corpus and print tier statistics");
  bench_cmd->add_option("--tier", tier, "restrict to one tier (0 = all)");
  bench_cmd->add_option("--budget", budget, "maximum disentangling actions (tier default if omitted)");
  bench_cmd->add_option("--noise-fail", noise.p_fail, "probability an action has no effect");
  bench_cmd->add_option("--noise-spawn", noise.p_spawn, "probability an action leaves a new monogon");
  bench_cmd->add_option("--seed", noise.seed, "base seed for per-rollout noise");
  bench_cmd->add_option("--repetitions", repetitions, "rollouts per corpus file")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--format", format, "text or json")->check(formats);

  auto* oracle = app.add_subcommand("oracle", "search for a shortest disentangling sequence");
  add_source_options(oracle, src, noise);
  oracle->add_option("--max-depth", max_depth, "disentangling-action depth limit");
  oracle->add_option("--format", format, "text or json")->check(formats);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    // Help requests print usage and succeed; anything else is a usage error.
    return app.exit(e, out, err) == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    if (gen->parsed()) return cmd_gen(src, noise, out_path, out);
    if (run_cmd->parsed()) return cmd_run(src, noise, budget, trace_out, format, out);
    if (bench_cmd->parsed()) return cmd_bench(tier, noise, budget, repetitions, format, out);
    if (oracle->parsed()) return cmd_oracle(src, noise, max_depth, format, out);
  } catch (const CliFailure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::failure;
  }
  return exit_code::usage;
}

}  // namespace cablegraph
