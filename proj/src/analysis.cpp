#include "cablegraph/analysis.hpp"

#include <algorithm>

namespace cablegraph {

std::string to_string(ReductionRule rule) {
  switch (rule) {
    case ReductionRule::Monogon: return "monogon";
    case ReductionRule::Bigon: return "bigon";
    case ReductionRule::FreeEndSlide: return "free-end-slide";
  }
  return "?";
}

namespace {

bool is_extreme(const Diagram& diagram, const SegmentRef& seg) {
  const auto n = diagram.visits(seg.cable).size();
  return seg.index == 0 || seg.index + 1 == n;
}

// Slot of `crossing` other than `slot`, for arity-2 crossings.
const SegmentRef& other_slot(const Crossing& crossing, const SegmentRef& slot) {
  return crossing.segments[0] == slot ? crossing.segments[1] : crossing.segments[0];
}

// Is there a reducible bigon between `v` and the crossing visited by the over
// strand at `next_index`? `over` is v's top slot, `under` its other slot.
std::optional<CrossingId> bigon_partner(const Diagram& diagram, const Crossing& v, const SegmentRef& over,
                                        const SegmentRef& under, std::ptrdiff_t step) {
  const auto& over_visits = diagram.visits(over.cable);
  const auto next = static_cast<std::ptrdiff_t>(over.index) + step;
  if (next < 0 || next >= static_cast<std::ptrdiff_t>(over_visits.size())) return std::nullopt;
  const Visit& hop = over_visits[static_cast<std::size_t>(next)];
  if (hop.crossing == v.id || hop.depth != 1) return std::nullopt;
  const Crossing* w = diagram.find_crossing(hop.crossing);
  if (w == nullptr || w->arity() != 2) return std::nullopt;
  const SegmentRef& w_under = other_slot(*w, {over.cable, static_cast<std::size_t>(next)});
  if (w_under.cable != under.cable) return std::nullopt;
  const auto gap = static_cast<std::ptrdiff_t>(w_under.index) - static_cast<std::ptrdiff_t>(under.index);
  if (gap != 1 && gap != -1) return std::nullopt;
  return w->id;
}

}  // namespace

std::vector<Reduction> applicable_reductions(const Diagram& diagram) {
  std::vector<Reduction> monogons;
  std::vector<Reduction> bigons;
  std::vector<Reduction> slides;
  for (const auto& [id, crossing] : diagram.crossings()) {
    if (crossing.arity() != 2) continue;
    const SegmentRef& a = crossing.segments[0];
    const SegmentRef& b = crossing.segments[1];

    if (a.cable == b.cable && (a.index + 1 == b.index || b.index + 1 == a.index)) {
      monogons.push_back({ReductionRule::Monogon, {id}});
    }
    if (is_extreme(diagram, a) && is_extreme(diagram, b)) {
      slides.push_back({ReductionRule::FreeEndSlide, {id}});
    }

    auto top = crossing.top_slot();
    if (!top) continue;
    const SegmentRef& over = crossing.segments[*top];
    const SegmentRef& under = other_slot(crossing, over);
    auto partner = bigon_partner(diagram, crossing, over, under, +1);
    if (!partner) continue;
    // Only the first pair of a run of parallel bigons along the over strand.
    if (bigon_partner(diagram, crossing, over, under, -1)) continue;
    bigons.push_back({ReductionRule::Bigon, {std::min(id, *partner), std::max(id, *partner)}});
  }

  auto by_ids = [](const Reduction& x, const Reduction& y) { return x.crossings < y.crossings; };
  std::sort(bigons.begin(), bigons.end(), by_ids);
  bigons.erase(std::unique(bigons.begin(), bigons.end()), bigons.end());

  std::vector<Reduction> out;
  out.reserve(monogons.size() + bigons.size() + slides.size());
  out.insert(out.end(), monogons.begin(), monogons.end());
  out.insert(out.end(), bigons.begin(), bigons.end());
  out.insert(out.end(), slides.begin(), slides.end());
  return out;
}

Diagram apply_reduction(const Diagram& diagram, const Reduction& reduction) {
  for (CrossingId id : reduction.crossings) {
    const Crossing* c = diagram.find_crossing(id);
    if (c == nullptr || c->arity() != 2) {
      throw Error("reduction targets X" + std::to_string(id) + ", which is not an arity-2 crossing");
    }
  }
  return remove_crossings(diagram, reduction.crossings);
}

TrivialityReport classify_trivial(const Diagram& diagram) {
  TrivialityReport report{{}, diagram, {}};
  for (;;) {
    auto candidates = applicable_reductions(report.reduced);
    if (candidates.empty()) break;
    const Reduction& pick = candidates.front();
    report.reduced = apply_reduction(report.reduced, pick);
    report.trivial.insert(pick.crossings.begin(), pick.crossings.end());
    report.steps.push_back(pick);
  }
  return report;
}

bool is_semi_disentangled(const TrivialityReport& report, CableId cable) {
  return report.reduced.visits(cable).empty();
}

bool is_semi_disentangled(const Diagram& diagram, CableId cable) {
  if (!diagram.is_live(cable)) throw UnknownCableError(cable);
  if (diagram.visits(cable).empty()) return true;
  return is_semi_disentangled(classify_trivial(diagram), cable);
}

EndpointSelection select_endpoints(const Diagram& diagram) {
  const auto& order = diagram.endpoint_order();
  if (order.empty() || diagram.workspace_empty()) throw EmptyWorkspaceError();
  EndpointSelection sel{order.back(), order.front()};
  const bool several = diagram.live_cable_count() >= 2;
  for (const auto& endpoint : order) {
    if (several ? endpoint.cable != sel.right.cable : endpoint != sel.right) {
      sel.left = endpoint;
      break;
    }
  }
  return sel;
}

std::optional<NodeDeletionTarget> first_nontrivial_undercrossing(const Diagram& diagram,
                                                                 const EndpointRef& start,
                                                                 const std::set<CrossingId>& trivial) {
  for (const auto& visit : trace_from(diagram, start).visits) {
    if (visit.depth >= 0 || trivial.contains(visit.crossing)) continue;
    const Crossing& crossing = *diagram.find_crossing(visit.crossing);
    auto top = crossing.top_slot();
    if (!top) continue;
    return NodeDeletionTarget{visit.crossing, crossing.segments[*top], {start.cable, visit.index}};
  }
  return std::nullopt;
}

std::optional<NodeDeletionTarget> first_nontrivial_undercrossing(const Diagram& diagram) {
  if (diagram.workspace_empty()) return std::nullopt;
  return first_nontrivial_undercrossing(diagram, select_endpoints(diagram).right,
                                        classify_trivial(diagram).trivial);
}

std::optional<NodeDeletionTarget> find_node_deletion_target(const Diagram& diagram,
                                                            const std::set<CrossingId>& trivial) {
  if (diagram.workspace_empty()) return std::nullopt;
  const auto sel = select_endpoints(diagram);
  std::vector<EndpointRef> starts{sel.right, sel.left};
  std::set<CableId> searched{sel.right.cable, sel.left.cable};
  const auto& order = diagram.endpoint_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (searched.insert(it->cable).second) starts.push_back(*it);
  }
  for (const auto& start : starts) {
    if (auto target = first_nontrivial_undercrossing(diagram, start, trivial)) return target;
  }
  return std::nullopt;
}

std::optional<NodeDeletionTarget> find_node_deletion_target(const Diagram& diagram) {
  return find_node_deletion_target(diagram, classify_trivial(diagram).trivial);
}

}  // namespace cablegraph
