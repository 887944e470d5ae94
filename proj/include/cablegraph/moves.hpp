#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "cablegraph/analysis.hpp"
#include "cablegraph/diagram.hpp"

namespace cablegraph {

// Recovery is a logged re-attempt marker after an action that had no effect
// under noise; it never changes the diagram.
enum class ActionKind { Reidemeister, NodeDeletion, CableExtraction, Recovery, Done };

std::string to_string(ActionKind kind);

struct ExtractionTarget {
  CableId cable = 0;
  EndpointRef pin;
  friend bool operator==(const ExtractionTarget&, const ExtractionTarget&) = default;
};

using ActionTargets = std::variant<std::monostate, EndpointSelection, NodeDeletionTarget, ExtractionTarget>;

struct Action {
  ActionKind kind = ActionKind::Done;
  ActionTargets targets;
  // 1: the left arm closes its jaws on the cable; 0: soft pin with open jaws.
  bool grasp = true;

  static Action reidemeister(const EndpointSelection& sel);
  static Action node_deletion(const NodeDeletionTarget& target);
  static Action cable_extraction(CableId cable, const EndpointRef& pin);
  static Action recovery();
  static Action done();

  bool is_disentangling() const noexcept {
    return kind == ActionKind::NodeDeletion || kind == ActionKind::CableExtraction;
  }
  friend bool operator==(const Action&, const Action&) = default;
};

// "1R,2L" / "X4 hold=1#2 pull=2#0" / "cable=2 pin=1L" / "-".
std::string describe_targets(const Action& action);

class MoveError : public Error {
 public:
  enum class Reason { StaleTarget, TrivialTarget, Precondition };
  MoveError(Reason reason, const std::string& what) : Error(what), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

/// Pulls v_r and v_l apart: every trivial crossing disappears and the
/// endpoint order is updated so v_r is rightmost and v_l leftmost.
Diagram apply_reidemeister(const Diagram& diagram, const EndpointSelection& sel);

/// Holds the +1 segment and pulls `pull` out of the crossing. An arity-2
/// crossing vanishes; a larger one loses the pulled segment and its remaining
/// depths are renormalized. Potential drops by exactly k-1.
Diagram apply_node_deletion(const Diagram& diagram, const NodeDeletionTarget& target);

/// Moves a semi-disentangled cable to the termination area, removing its
/// segments from every crossing. With other cables live, the pin must be an
/// endpoint of another cable; with one cable left, the cable's own endpoint.
Diagram apply_cable_extraction(const Diagram& diagram, CableId cable, const EndpointRef& pin);

// Dispatches on the action kind; Done and Recovery return the input unchanged.
Diagram apply(const Diagram& diagram, const Action& action);

struct NoiseConfig {
  double p_fail = 0.0;   // action leaves the diagram unchanged
  double p_spawn = 0.0;  // a monogon appears on a random live cable afterwards
  std::uint64_t seed = 0;
};

void check_noise(const NoiseConfig& cfg);

// splitmix64 finalizer over (base, stream): independent seeds for steps and rollouts.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

struct NoisyOutcome {
  Diagram diagram;
  bool executed = true;
  std::optional<CrossingId> spawned;
};

// Seeded imperfect execution. Identical inputs give identical outputs.
NoisyOutcome execute_noisy(const Diagram& diagram, const Action& action, const NoiseConfig& cfg);
Diagram apply_noisy(const Diagram& diagram, const Action& action, const NoiseConfig& cfg);

// Inserts a fresh arity-2 self-crossing at two consecutive visit positions
// starting at `position` on the cable.
Diagram spawn_monogon(const Diagram& diagram, CableId cable, std::size_t position, bool over_first);

}  // namespace cablegraph
