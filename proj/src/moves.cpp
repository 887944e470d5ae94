#include "cablegraph/moves.hpp"

#include <algorithm>
#include <random>

namespace cablegraph {

std::string to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::Reidemeister: return "Reidemeister";
    case ActionKind::NodeDeletion: return "NodeDeletion";
    case ActionKind::CableExtraction: return "CableExtraction";
    case ActionKind::Recovery: return "Recovery";
    case ActionKind::Done: return "Done";
  }
  return "?";
}

Action Action::reidemeister(const EndpointSelection& sel) { return {ActionKind::Reidemeister, sel, true}; }
Action Action::node_deletion(const NodeDeletionTarget& target) { return {ActionKind::NodeDeletion, target, true}; }
Action Action::cable_extraction(CableId cable, const EndpointRef& pin) {
  return {ActionKind::CableExtraction, ExtractionTarget{cable, pin}, false};
}
Action Action::recovery() { return {ActionKind::Recovery, std::monostate{}, true}; }
Action Action::done() { return {ActionKind::Done, std::monostate{}, true}; }

std::string describe_targets(const Action& action) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "-"; }
    std::string operator()(const EndpointSelection& sel) const {
      return to_string(sel.right) + "," + to_string(sel.left);
    }
    std::string operator()(const NodeDeletionTarget& t) const {
      return "X" + std::to_string(t.crossing) + " hold=" + to_string(t.hold) + " pull=" + to_string(t.pull);
    }
    std::string operator()(const ExtractionTarget& t) const {
      return "cable=" + std::to_string(t.cable) + " pin=" + to_string(t.pin);
    }
  };
  return std::visit(Visitor{}, action.targets);
}

namespace {

bool endpoint_listed(const Diagram& diagram, const EndpointRef& endpoint) {
  const auto& order = diagram.endpoint_order();
  return diagram.is_live(endpoint.cable) && std::find(order.begin(), order.end(), endpoint) != order.end();
}

[[noreturn]] void stale(const std::string& what) { throw MoveError(MoveError::Reason::StaleTarget, what); }

void check_slot(const Diagram& diagram, const SegmentRef& seg, CrossingId crossing, const char* role) {
  if (!diagram.is_live(seg.cable)) stale(std::string(role) + " segment is on a cable that is not live");
  const auto& visits = diagram.visits(seg.cable);
  if (seg.index >= visits.size() || visits[seg.index].crossing != crossing) {
    stale(std::string(role) + " segment " + to_string(seg) + " is not at X" + std::to_string(crossing));
  }
}

}  // namespace

Diagram apply_reidemeister(const Diagram& diagram, const EndpointSelection& sel) {
  if (!endpoint_listed(diagram, sel.right) || !endpoint_listed(diagram, sel.left)) {
    stale("selection " + to_string(sel.right) + "," + to_string(sel.left) + " names an endpoint that is not live");
  }
  if (sel.right == sel.left) stale("selection uses the same endpoint twice");

  Diagram reduced = classify_trivial(diagram).reduced;
  std::vector<EndpointRef> order{sel.left};
  for (const auto& endpoint : diagram.endpoint_order()) {
    if (endpoint != sel.left && endpoint != sel.right) order.push_back(endpoint);
  }
  order.push_back(sel.right);
  return with_endpoint_order(reduced, std::move(order));
}

Diagram apply_node_deletion(const Diagram& diagram, const NodeDeletionTarget& target) {
  const Crossing* crossing = diagram.find_crossing(target.crossing);
  if (crossing == nullptr) stale("crossing X" + std::to_string(target.crossing) + " does not exist");
  check_slot(diagram, target.hold, target.crossing, "hold");
  check_slot(diagram, target.pull, target.crossing, "pull");
  if (target.hold == target.pull) stale("hold and pull are the same segment");
  if (diagram.visits(target.hold.cable)[target.hold.index].depth != 1) stale("hold segment is not on top");
  if (diagram.visits(target.pull.cable)[target.pull.index].depth >= 0) stale("pull segment is not an undercrossing");
  if (classify_trivial(diagram).is_trivial(target.crossing)) {
    throw MoveError(MoveError::Reason::TrivialTarget,
                    "X" + std::to_string(target.crossing) + " is trivial; Node Deletion is reserved for non-trivial crossings");
  }
  const SegmentRef pulled[] = {target.pull};
  return remove_segments(diagram, pulled);
}

Diagram apply_cable_extraction(const Diagram& diagram, CableId cable, const EndpointRef& pin) {
  if (!diagram.is_live(cable)) stale("cable " + std::to_string(cable) + " is not live");
  if (!endpoint_listed(diagram, pin)) stale("pin " + to_string(pin) + " is not a live endpoint");
  if (diagram.live_cable_count() >= 2 && pin.cable == cable) {
    throw MoveError(MoveError::Reason::Precondition, "pin must hold down another cable while others remain");
  }
  if (diagram.live_cable_count() == 1 && pin.cable != cable) {
    throw MoveError(MoveError::Reason::Precondition, "pin must be on the last cable");
  }
  if (!is_semi_disentangled(diagram, cable)) {
    throw MoveError(MoveError::Reason::Precondition,
                    "cable " + std::to_string(cable) + " is not semi-disentangled");
  }

  std::vector<SegmentRef> own;
  const auto& visits = diagram.visits(cable);
  for (std::size_t i = 0; i < visits.size(); ++i) own.push_back({cable, i});
  Diagram stripped = remove_segments(diagram, own);

  Diagram::CableMap cables = stripped.cables();
  cables.erase(cable);
  std::vector<EndpointRef> order;
  for (const auto& endpoint : stripped.endpoint_order()) {
    if (endpoint.cable != cable) order.push_back(endpoint);
  }
  std::vector<CableId> terminated = stripped.terminated();
  terminated.push_back(cable);
  return Diagram(std::move(cables), std::move(order), std::move(terminated));
}

Diagram apply(const Diagram& diagram, const Action& action) {
  switch (action.kind) {
    case ActionKind::Reidemeister:
      return apply_reidemeister(diagram, std::get<EndpointSelection>(action.targets));
    case ActionKind::NodeDeletion:
      return apply_node_deletion(diagram, std::get<NodeDeletionTarget>(action.targets));
    case ActionKind::CableExtraction: {
      const auto& t = std::get<ExtractionTarget>(action.targets);
      return apply_cable_extraction(diagram, t.cable, t.pin);
    }
    case ActionKind::Recovery:
    case ActionKind::Done:
      return diagram;
  }
  return diagram;
}

void check_noise(const NoiseConfig& cfg) {
  auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!in_unit(cfg.p_fail) || !in_unit(cfg.p_spawn)) throw Error("noise probabilities must lie in [0, 1]");
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

// Portable draws on top of mt19937_64, whose output sequence is fixed by the standard.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
std::size_t index_draw(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

}  // namespace

NoisyOutcome execute_noisy(const Diagram& diagram, const Action& action, const NoiseConfig& cfg) {
  check_noise(cfg);
  std::mt19937_64 rng(cfg.seed);
  if (unit_draw(rng) < cfg.p_fail) return {diagram, false, std::nullopt};

  NoisyOutcome out{apply(diagram, action), true, std::nullopt};
  if (unit_draw(rng) < cfg.p_spawn && !out.diagram.workspace_empty()) {
    const auto& cables = out.diagram.cables();
    auto it = std::next(cables.begin(), static_cast<std::ptrdiff_t>(index_draw(rng, cables.size())));
    const std::size_t position = index_draw(rng, it->second.size() + 1);
    const bool over_first = (rng() & 1u) != 0;
    out.spawned = out.diagram.next_crossing_id();
    out.diagram = spawn_monogon(out.diagram, it->first, position, over_first);
  }
  return out;
}

Diagram apply_noisy(const Diagram& diagram, const Action& action, const NoiseConfig& cfg) {
  return execute_noisy(diagram, action, cfg).diagram;
}

Diagram spawn_monogon(const Diagram& diagram, CableId cable, std::size_t position, bool over_first) {
  Diagram::CableMap cables = diagram.cables();
  auto it = cables.find(cable);
  if (it == cables.end()) throw UnknownCableError(cable);
  if (position > it->second.size()) throw Error("monogon position past the cable's right endpoint");
  const CrossingId id = diagram.next_crossing_id();
  const Visit loop[] = {{id, over_first ? 1 : -1}, {id, over_first ? -1 : 1}};
  it->second.insert(it->second.begin() + static_cast<std::ptrdiff_t>(position), std::begin(loop), std::end(loop));
  return Diagram(std::move(cables), diagram.endpoint_order(), diagram.terminated());
}

}  // namespace cablegraph
