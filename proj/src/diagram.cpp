#include "cablegraph/diagram.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace cablegraph {

UnknownCableError::UnknownCableError(CableId cable)
    : Error("unknown or terminated cable " + std::to_string(cable)), cable_(cable) {}

std::string to_string(const EndpointRef& endpoint) {
  return std::to_string(endpoint.cable) + (endpoint.side == Side::Left ? "L" : "R");
}

std::string to_string(const SegmentRef& segment) {
  return std::to_string(segment.cable) + "#" + std::to_string(segment.index);
}

std::optional<std::size_t> Crossing::top_slot() const {
  std::optional<std::size_t> found;
  for (std::size_t slot = 0; slot < depths.size(); ++slot) {
    if (depths[slot] == 1) {
      if (found) return std::nullopt;
      found = slot;
    }
  }
  return found;
}

Diagram::Diagram(CableMap cables, std::vector<EndpointRef> endpoint_order,
                 std::vector<CableId> terminated)
    : cables_(std::move(cables)), order_(std::move(endpoint_order)), terminated_(std::move(terminated)) {
  for (const auto& [cable, visits] : cables_) {
    for (std::size_t i = 0; i < visits.size(); ++i) {
      auto& crossing = crossings_[visits[i].crossing];
      crossing.id = visits[i].crossing;
      crossing.segments.push_back({cable, i});
      crossing.depths.push_back(visits[i].depth);
    }
  }
}

const std::vector<Visit>& Diagram::visits(CableId cable) const {
  auto it = cables_.find(cable);
  if (it == cables_.end()) throw UnknownCableError(cable);
  return it->second;
}

const Crossing* Diagram::find_crossing(CrossingId id) const {
  auto it = crossings_.find(id);
  return it == crossings_.end() ? nullptr : &it->second;
}

CrossingId Diagram::next_crossing_id() const {
  return crossings_.empty() ? 1 : crossings_.rbegin()->first + 1;
}

bool ValidationReport::has(std::string_view kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& v : violations) {
    out << v.kind << ": " << v.subject;
    if (!v.detail.empty()) out << " (" << v.detail << ")";
    out << '\n';
  }
  return out.str();
}

namespace {

std::string crossing_name(CrossingId id) { return "X" + std::to_string(id); }

void check_crossing(const Crossing& crossing, std::vector<Violation>& out) {
  const auto k = static_cast<int>(crossing.arity());
  const auto name = crossing_name(crossing.id);
  if (k < 2) {
    out.push_back({"arity below 2", name, "visited " + std::to_string(k) + " time(s)"});
    return;
  }
  int tops = 0;
  std::set<int> seen;
  for (int depth : crossing.depths) {
    if (depth == 1) {
      ++tops;
      continue;
    }
    if (depth >= 0 || depth < -(k - 1)) {
      out.push_back({"depth out of range", name, "depth " + std::to_string(depth) + " at arity " +
                                                     std::to_string(k)});
      continue;
    }
    if (!seen.insert(depth).second) {
      out.push_back({"duplicate depth", name, "depth " + std::to_string(depth)});
    }
  }
  if (tops == 0) out.push_back({"missing topmost", name, ""});
  if (tops > 1) out.push_back({"duplicate topmost", name, std::to_string(tops) + " segments at +1"});
}

// Vertex key for the edge-annotation check: endpoints and crossings live in
// disjoint namespaces.
using VertexKey = std::tuple<int, std::uint64_t>;

VertexKey endpoint_vertex(CableId cable, Side side) {
  return {0, (static_cast<std::uint64_t>(cable) << 1) | (side == Side::Right ? 1u : 0u)};
}
VertexKey crossing_vertex(CrossingId id) { return {1, id}; }

void check_edges(const Diagram& diagram, std::vector<Violation>& out) {
  // (u, v, X(u, e), X(v, e)) with u <= v; parallel edges must differ in annotations.
  std::set<std::tuple<VertexKey, VertexKey, int, int>> edges;
  for (const auto& [cable, visits] : diagram.cables()) {
    std::vector<std::pair<VertexKey, int>> path;
    path.emplace_back(endpoint_vertex(cable, Side::Left), 1);
    for (const auto& visit : visits) path.emplace_back(crossing_vertex(visit.crossing), visit.depth);
    path.emplace_back(endpoint_vertex(cable, Side::Right), 1);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      auto a = path[i];
      auto b = path[i + 1];
      if (b.first < a.first || (a.first == b.first && b.second < a.second)) std::swap(a, b);
      if (!edges.emplace(a.first, b.first, a.second, b.second).second) {
        out.push_back({"duplicate edge annotation", "cable " + std::to_string(cable),
                       "edge " + std::to_string(i) + " repeats a parallel edge's annotations"});
      }
    }
  }
}

void check_endpoints(const Diagram& diagram, std::vector<Violation>& out) {
  std::set<EndpointRef> seen;
  for (const auto& endpoint : diagram.endpoint_order()) {
    if (!diagram.is_live(endpoint.cable)) {
      out.push_back({"endpoint not live", to_string(endpoint), ""});
    } else if (!seen.insert(endpoint).second) {
      out.push_back({"duplicate endpoint", to_string(endpoint), ""});
    }
  }
  for (const auto& [cable, visits] : diagram.cables()) {
    for (Side side : {Side::Left, Side::Right}) {
      EndpointRef endpoint{cable, side};
      if (!seen.contains(endpoint)) out.push_back({"endpoint missing from order", to_string(endpoint), ""});
    }
  }
  std::set<CableId> terminated;
  for (CableId cable : diagram.terminated()) {
    if (diagram.is_live(cable)) {
      out.push_back({"terminated cable still live", "cable " + std::to_string(cable), ""});
    }
    if (!terminated.insert(cable).second) {
      out.push_back({"duplicate terminated cable", "cable " + std::to_string(cable), ""});
    }
  }
}

}  // namespace

ValidationReport validate(const Diagram& diagram) {
  ValidationReport report;
  for (const auto& [id, crossing] : diagram.crossings()) check_crossing(crossing, report.violations);
  check_edges(diagram, report.violations);
  check_endpoints(diagram, report.violations);
  return report;
}

CableTrace trace_cable(const Diagram& diagram, CableId cable, bool from_left) {
  const auto& visits = diagram.visits(cable);
  CableTrace trace{cable, from_left, {}};
  trace.visits.reserve(visits.size());
  for (std::size_t i = 0; i < visits.size(); ++i) {
    const std::size_t index = from_left ? i : visits.size() - 1 - i;
    trace.visits.push_back({visits[index].crossing, visits[index].depth, index});
  }
  return trace;
}

CableTrace trace_from(const Diagram& diagram, const EndpointRef& start) {
  return trace_cable(diagram, start.cable, start.side == Side::Left);
}

std::uint64_t potential(const Diagram& diagram) {
  std::uint64_t total = 0;
  for (const auto& [id, crossing] : diagram.crossings()) {
    const std::uint64_t k = crossing.arity();
    total += k * (k - 1) / 2;
  }
  return total;
}

Diagram remove_segments(const Diagram& diagram, std::span<const SegmentRef> segments) {
  std::set<SegmentRef> removed(segments.begin(), segments.end());
  std::set<CrossingId> touched;
  for (const auto& seg : removed) {
    const auto& visits = diagram.visits(seg.cable);
    if (seg.index >= visits.size()) throw Error("segment " + to_string(seg) + " out of range");
    touched.insert(visits[seg.index].crossing);
  }

  // Survivors of each touched crossing, most-on-top first. Arity-1 leftovers
  // are spliced away too.
  std::map<SegmentRef, int> new_depth;
  for (CrossingId id : touched) {
    const Crossing& crossing = *diagram.find_crossing(id);
    std::vector<std::pair<int, SegmentRef>> survivors;
    for (std::size_t slot = 0; slot < crossing.arity(); ++slot) {
      if (!removed.contains(crossing.segments[slot])) {
        survivors.emplace_back(crossing.depths[slot], crossing.segments[slot]);
      }
    }
    if (survivors.size() < 2) {
      for (const auto& s : survivors) removed.insert(s.second);
      continue;
    }
    // +1 sorts first, then -1, -2, ...
    std::stable_sort(survivors.begin(), survivors.end(), [](const auto& a, const auto& b) {
      auto rank = [](int d) { return d == 1 ? 0 : -d; };
      return rank(a.first) < rank(b.first);
    });
    for (std::size_t r = 0; r < survivors.size(); ++r) {
      new_depth[survivors[r].second] = r == 0 ? 1 : -static_cast<int>(r);
    }
  }

  Diagram::CableMap cables;
  for (const auto& [cable, visits] : diagram.cables()) {
    auto& out = cables[cable];
    out.reserve(visits.size());
    for (std::size_t i = 0; i < visits.size(); ++i) {
      const SegmentRef ref{cable, i};
      if (removed.contains(ref)) continue;
      Visit v = visits[i];
      if (auto it = new_depth.find(ref); it != new_depth.end()) v.depth = it->second;
      out.push_back(v);
    }
  }
  return Diagram(std::move(cables), diagram.endpoint_order(), diagram.terminated());
}

Diagram remove_crossings(const Diagram& diagram, std::span<const CrossingId> crossings) {
  std::set<CrossingId> drop(crossings.begin(), crossings.end());
  Diagram::CableMap cables;
  for (const auto& [cable, visits] : diagram.cables()) {
    auto& out = cables[cable];
    for (const auto& v : visits) {
      if (!drop.contains(v.crossing)) out.push_back(v);
    }
  }
  return Diagram(std::move(cables), diagram.endpoint_order(), diagram.terminated());
}

Diagram with_endpoint_order(const Diagram& diagram, std::vector<EndpointRef> order) {
  return Diagram(diagram.cables(), std::move(order), diagram.terminated());
}

}  // namespace cablegraph
