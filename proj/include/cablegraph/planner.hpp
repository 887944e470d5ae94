#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cablegraph/moves.hpp"

namespace cablegraph {

struct Budget {
  std::size_t max_disentangling_actions = 20;
};

// 20 / 30 / 30 disentangling actions for tiers 1 / 2 / 3; 30 for anything else.
Budget default_budget(int tier);

struct PlannerState {
  bool initial_reidemeister_done = false;
  // Set by an executed extraction, cleared by an executed Reidemeister.
  bool extraction_since_reidemeister = false;
};

class StuckError : public Error {
 public:
  using Error::Error;
};

/// One decision of the loop:
///   empty workspace                     -> Done
///   no Reidemeister yet                 -> Reidemeister(v_r, v_l)
///   after an extraction, trivial crossings remain and cable(v_r) is
///   still entangled                     -> Reidemeister(v_r, v_l) again
///   cable(v_r) semi-disentangled        -> CableExtraction(cable(v_r), pin = v_l, soft)
///   otherwise                           -> NodeDeletion at the first non-trivial undercrossing
/// Throws StuckError when no Node Deletion target exists anywhere.
Action plan_step(const Diagram& diagram, const PlannerState& state);
Action plan_step(const Diagram& diagram, bool did_initial_reidemeister);

enum class Outcome { Success, BudgetExceeded, Stuck, NoiseStall };

std::string to_string(Outcome outcome);

struct TraceStep {
  std::size_t index = 0;
  Action action;
  std::uint64_t potential_before = 0;
  std::uint64_t potential_after = 0;
  bool executed = true;
  std::optional<CrossingId> spawned;
};

struct RolloutTrace {
  std::vector<TraceStep> steps;
  Outcome outcome = Outcome::Success;
  std::size_t disentangling_actions = 0;  // NodeDeletion + CableExtraction attempts
  std::size_t recovery_actions = 0;
  std::size_t total_actions = 0;          // every step except Done
  Diagram final_diagram;
  std::string detail;                     // reason for Stuck
};

// Called after every step with the diagram the step produced.
using StepObserver = std::function<void(const TraceStep&, const Diagram&)>;

/// Runs plan_step and the moves until Done, Stuck or the budget is spent.
/// A disentangling action is refused (BudgetExceeded) when the budget is
/// already used up. Under noise every step draws from its own derived seed; an
/// action that had no effect is followed by a Recovery step, and the rollout
/// ends with NoiseStall once total actions reach 4 * budget + 8.
RolloutTrace run(const Diagram& diagram, const Budget& budget, const std::optional<NoiseConfig>& noise = std::nullopt,
                 const StepObserver& observer = {});

// "step <i> | <kind> | targets=<ids> | potential <a>-><b>"
std::string format_step(const TraceStep& step);
std::string format_trace_text(const RolloutTrace& trace);
// One JSON object per step, then a summary record.
std::string format_trace_jsonl(const RolloutTrace& trace);

struct BenchEntry {
  int tier = 0;
  std::string name;
  Diagram diagram;
};

struct BenchConfig {
  std::optional<std::size_t> budget;  // overrides the per-tier default
  std::size_t repetitions = 1;
  std::optional<NoiseConfig> noise;   // its seed is the base for per-rollout seeds
};

struct StatsRow {
  int tier = 0;
  std::string name;  // "all" for the per-tier aggregate
  std::size_t rollouts = 0;
  std::size_t successes = 0;
  // Medians over successful rollouts; nullopt when none succeeded.
  std::optional<double> median_disentangling;
  std::optional<double> median_recovery;
  std::optional<double> median_total;
  std::size_t budget_exceeded = 0;
  std::size_t stuck = 0;
  std::size_t noise_stall = 0;
};

struct StatsTable {
  std::vector<StatsRow> rows;  // sorted by tier, then name, with "all" last in each tier
};

std::optional<double> median(std::vector<std::size_t> values);

StatsTable bench(const std::vector<BenchEntry>& corpus, const BenchConfig& config);

std::string format_table_text(const StatsTable& table);
std::string format_table_json(const StatsTable& table);

}  // namespace cablegraph
