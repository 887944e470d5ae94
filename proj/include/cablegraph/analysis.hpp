#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cablegraph/diagram.hpp"

namespace cablegraph {

/// Taut-pull simplifications that remove a crossing without a Node Deletion.
///
///  Monogon       k=2 crossing whose two slots are consecutive visits of one cable.
///  Bigon         two k=2 crossings joined by two parallel edges with the same
///                strand on top at both. When parallel bigons form a run along
///                the over strand, only the first pair of the run (walking the
///                over strand from its left endpoint) is offered, which keeps
///                the trivial set independent of application order.
///  FreeEndSlide  k=2 crossing where each strand has a crossing-free run to one
///                of its own endpoints.
enum class ReductionRule { Monogon, Bigon, FreeEndSlide };

std::string to_string(ReductionRule rule);

struct Reduction {
  ReductionRule rule = ReductionRule::Monogon;
  std::vector<CrossingId> crossings;  // ascending
  friend bool operator==(const Reduction&, const Reduction&) = default;
};

// Every rule instance that applies to the diagram right now, ordered by rule,
// then by lowest crossing id.
std::vector<Reduction> applicable_reductions(const Diagram& diagram);
Diagram apply_reduction(const Diagram& diagram, const Reduction& reduction);

struct TrivialityReport {
  std::set<CrossingId> trivial;
  Diagram reduced;
  std::vector<Reduction> steps;

  bool is_trivial(CrossingId id) const { return trivial.contains(id); }
};

// Fixed point of the reduction rules, applying Monogon, then Bigon, then
// FreeEndSlide, each at the lowest-id eligible crossing.
TrivialityReport classify_trivial(const Diagram& diagram);

// True iff the cable has no crossings left after reduction.
bool is_semi_disentangled(const Diagram& diagram, CableId cable);
bool is_semi_disentangled(const TrivialityReport& report, CableId cable);

struct EndpointSelection {
  EndpointRef right;  // v_r: rightmost endpoint overall
  EndpointRef left;   // v_l: leftmost endpoint on another cable, if any remains
  friend bool operator==(const EndpointSelection&, const EndpointSelection&) = default;
};

class EmptyWorkspaceError : public Error {
 public:
  EmptyWorkspaceError() : Error("workspace is empty") {}
};

EndpointSelection select_endpoints(const Diagram& diagram);

struct NodeDeletionTarget {
  CrossingId crossing = 0;
  SegmentRef hold;  // the crossing's +1 segment
  SegmentRef pull;  // the traversed under-segment
  friend bool operator==(const NodeDeletionTarget&, const NodeDeletionTarget&) = default;
};

// First under-visit of a non-trivial crossing met while walking the cable
// from `start`.
std::optional<NodeDeletionTarget> first_nontrivial_undercrossing(const Diagram& diagram,
                                                                 const EndpointRef& start,
                                                                 const std::set<CrossingId>& trivial);

// Same search starting at v_r.
std::optional<NodeDeletionTarget> first_nontrivial_undercrossing(const Diagram& diagram);

// Walks from v_r, then v_l, then from the rightmost endpoint of each remaining
// cable (right to left). Returns nullopt only when no non-trivial under-visit
// exists anywhere.
std::optional<NodeDeletionTarget> find_node_deletion_target(const Diagram& diagram);
std::optional<NodeDeletionTarget> find_node_deletion_target(const Diagram& diagram,
                                                            const std::set<CrossingId>& trivial);

}  // namespace cablegraph
