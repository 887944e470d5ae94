#include "cablegraph/planner.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

namespace cablegraph {

Budget default_budget(int tier) { return {tier == 1 ? std::size_t{20} : std::size_t{30}}; }

Action plan_step(const Diagram& diagram, const PlannerState& state) {
  if (diagram.workspace_empty()) return Action::done();
  const EndpointSelection sel = select_endpoints(diagram);
  if (!state.initial_reidemeister_done) return Action::reidemeister(sel);

  const TrivialityReport report = classify_trivial(diagram);
  const bool ready = is_semi_disentangled(report, sel.right.cable);
  if (state.extraction_since_reidemeister && !report.trivial.empty() && !ready) return Action::reidemeister(sel);
  if (ready) return Action::cable_extraction(sel.right.cable, sel.left);

  auto target = find_node_deletion_target(diagram, report.trivial);
  if (!target) throw StuckError("no non-trivial undercrossing reachable from any endpoint");
  return Action::node_deletion(*target);
}

Action plan_step(const Diagram& diagram, bool did_initial_reidemeister) {
  return plan_step(diagram, PlannerState{did_initial_reidemeister, false});
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Success: return "Success";
    case Outcome::BudgetExceeded: return "BudgetExceeded";
    case Outcome::Stuck: return "Stuck";
    case Outcome::NoiseStall: return "NoiseStall";
  }
  return "?";
}

RolloutTrace run(const Diagram& diagram, const Budget& budget, const std::optional<NoiseConfig>& noise,
                 const StepObserver& observer) {
  if (noise) check_noise(*noise);
  RolloutTrace trace;
  trace.final_diagram = diagram;
  Diagram& current = trace.final_diagram;
  PlannerState state;
  const std::size_t action_cap = 4 * budget.max_disentangling_actions + 8;

  auto record = [&](TraceStep step) {
    step.index = trace.steps.size();
    trace.steps.push_back(std::move(step));
    if (observer) observer(trace.steps.back(), current);
  };

  for (;;) {
    if (trace.total_actions >= action_cap) {
      trace.outcome = Outcome::NoiseStall;
      break;
    }
    Action action;
    try {
      action = plan_step(current, state);
    } catch (const StuckError& e) {
      trace.outcome = Outcome::Stuck;
      trace.detail = e.what();
      break;
    }
    const std::uint64_t before = potential(current);
    if (action.kind == ActionKind::Done) {
      record({0, action, before, before, true, std::nullopt});
      trace.outcome = Outcome::Success;
      break;
    }
    if (action.is_disentangling()) {
      if (trace.disentangling_actions >= budget.max_disentangling_actions) {
        trace.outcome = Outcome::BudgetExceeded;
        break;
      }
      ++trace.disentangling_actions;
    }

    NoisyOutcome result{current, true, std::nullopt};
    if (noise) {
      NoiseConfig step_noise = *noise;
      step_noise.seed = derive_seed(noise->seed, trace.steps.size());
      result = execute_noisy(current, action, step_noise);
    } else {
      result.diagram = apply(current, action);
    }
    current = std::move(result.diagram);
    ++trace.total_actions;

    if (action.kind == ActionKind::Reidemeister) state.initial_reidemeister_done = true;
    if (result.executed) {
      if (action.kind == ActionKind::Reidemeister) state.extraction_since_reidemeister = false;
      if (action.kind == ActionKind::CableExtraction) state.extraction_since_reidemeister = true;
    }
    record({0, action, before, potential(current), result.executed, result.spawned});

    if (!result.executed) {
      const std::uint64_t p = potential(current);
      record({0, Action::recovery(), p, p, true, std::nullopt});
      ++trace.recovery_actions;
      ++trace.total_actions;
    }
  }
  return trace;
}

std::string format_step(const TraceStep& step) {
  std::ostringstream out;
  out << "step " << step.index << " | " << to_string(step.action.kind) << " | targets=" << describe_targets(step.action)
      << " | potential " << step.potential_before << "->" << step.potential_after;
  return out.str();
}

std::string format_trace_text(const RolloutTrace& trace) {
  std::ostringstream out;
  for (const auto& step : trace.steps) out << format_step(step) << '\n';
  out << "outcome " << to_string(trace.outcome) << " | disentangling=" << trace.disentangling_actions
      << " | recovery=" << trace.recovery_actions << " | total=" << trace.total_actions << '\n';
  return out.str();
}

std::string format_trace_jsonl(const RolloutTrace& trace) {
  using nlohmann::ordered_json;
  std::ostringstream out;
  for (const auto& step : trace.steps) {
    ordered_json rec;
    rec["step"] = step.index;
    rec["kind"] = to_string(step.action.kind);
    rec["targets"] = describe_targets(step.action);
    rec["grasp"] = step.action.grasp;
    rec["potential_before"] = step.potential_before;
    rec["potential_after"] = step.potential_after;
    rec["executed"] = step.executed;
    rec["spawned"] = step.spawned ? ordered_json(*step.spawned) : ordered_json(nullptr);
    out << rec.dump() << '\n';
  }
  ordered_json summary;
  summary["outcome"] = to_string(trace.outcome);
  summary["disentangling_actions"] = trace.disentangling_actions;
  summary["recovery_actions"] = trace.recovery_actions;
  summary["total_actions"] = trace.total_actions;
  out << summary.dump() << '\n';
  return out.str();
}

std::optional<double> median(std::vector<std::size_t> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return static_cast<double>(values[mid]);
  return (static_cast<double>(values[mid - 1]) + static_cast<double>(values[mid])) / 2.0;
}

namespace {

struct Tally {
  std::size_t rollouts = 0;
  std::size_t successes = 0;
  std::vector<std::size_t> disentangling, recovery, total;
  std::size_t budget_exceeded = 0, stuck = 0, noise_stall = 0;

  void add(const RolloutTrace& trace) {
    ++rollouts;
    switch (trace.outcome) {
      case Outcome::Success:
        ++successes;
        disentangling.push_back(trace.disentangling_actions);
        recovery.push_back(trace.recovery_actions);
        total.push_back(trace.total_actions);
        break;
      case Outcome::BudgetExceeded: ++budget_exceeded; break;
      case Outcome::Stuck: ++stuck; break;
      case Outcome::NoiseStall: ++noise_stall; break;
    }
  }

  void merge(const Tally& other) {
    rollouts += other.rollouts;
    successes += other.successes;
    disentangling.insert(disentangling.end(), other.disentangling.begin(), other.disentangling.end());
    recovery.insert(recovery.end(), other.recovery.begin(), other.recovery.end());
    total.insert(total.end(), other.total.begin(), other.total.end());
    budget_exceeded += other.budget_exceeded;
    stuck += other.stuck;
    noise_stall += other.noise_stall;
  }

  StatsRow row(int tier, std::string name) const {
    return {tier,         std::move(name),  rollouts, successes, median(disentangling), median(recovery),
            median(total), budget_exceeded, stuck,    noise_stall};
  }
};

// FNV-1a, so per-rollout seeds depend on the entry name rather than its position.
std::uint64_t name_hash(const std::string& name) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string format_median(const std::optional<double>& value) {
  if (!value) return "-";
  std::ostringstream out;
  if (*value == static_cast<double>(static_cast<long long>(*value))) {
    out << static_cast<long long>(*value);
  } else {
    out << std::fixed << std::setprecision(1) << *value;
  }
  return out.str();
}

}  // namespace

StatsTable bench(const std::vector<BenchEntry>& corpus, const BenchConfig& config) {
  std::map<std::pair<int, std::string>, Tally> tallies;
  for (const auto& entry : corpus) {
    const Budget budget = config.budget ? Budget{*config.budget} : default_budget(entry.tier);
    Tally& tally = tallies[{entry.tier, entry.name}];
    for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
      std::optional<NoiseConfig> noise = config.noise;
      if (noise) noise->seed = derive_seed(noise->seed ^ name_hash(entry.name), rep);
      tally.add(run(entry.diagram, budget, noise));
    }
  }

  StatsTable table;
  std::map<int, Tally> per_tier;
  for (const auto& [key, tally] : tallies) {
    table.rows.push_back(tally.row(key.first, key.second));
    per_tier[key.first].merge(tally);
  }
  // Interleave the aggregate row after the last row of each tier.
  StatsTable ordered;
  for (const auto& [tier, tally] : per_tier) {
    for (const auto& row : table.rows) {
      if (row.tier == tier) ordered.rows.push_back(row);
    }
    ordered.rows.push_back(tally.row(tier, "all"));
  }
  return ordered;
}

std::string format_table_text(const StatsTable& table) {
  const std::vector<std::string> header{"Tier",          "Knot",           "Success Rate", "Disentangling Actions",
                                        "Recovery Actions", "Total Actions", "BudgetExceeded", "Stuck",
                                        "NoiseStall"};
  std::vector<std::vector<std::string>> cells{header};
  for (const auto& row : table.rows) {
    cells.push_back({std::to_string(row.tier), row.name,
                     std::to_string(row.successes) + "/" + std::to_string(row.rollouts),
                     format_median(row.median_disentangling), format_median(row.median_recovery),
                     format_median(row.median_total), std::to_string(row.budget_exceeded), std::to_string(row.stuck),
                     std::to_string(row.noise_stall)});
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::ostringstream out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t i = 0; i < cells[r].size(); ++i) {
      if (i > 0) out << " | ";
      const bool last = i + 1 == cells[r].size();
      out << std::left << std::setw(last ? 0 : static_cast<int>(width[i])) << cells[r][i];
    }
    out << '\n';
    if (r == 0) {
      for (std::size_t i = 0; i < width.size(); ++i) {
        if (i > 0) out << "-|-";
        out << std::string(width[i], '-');
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string format_table_json(const StatsTable& table) {
  using nlohmann::ordered_json;
  auto number = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  std::ostringstream out;
  for (const auto& row : table.rows) {
    ordered_json rec;
    rec["tier"] = row.tier;
    rec["knot"] = row.name;
    rec["rollouts"] = row.rollouts;
    rec["successes"] = row.successes;
    rec["median_disentangling"] = number(row.median_disentangling);
    rec["median_recovery"] = number(row.median_recovery);
    rec["median_total"] = number(row.median_total);
    rec["budget_exceeded"] = row.budget_exceeded;
    rec["stuck"] = row.stuck;
    rec["noise_stall"] = row.noise_stall;
    out << rec.dump() << '\n';
  }
  return out.str();
}

}  // namespace cablegraph
