#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cablegraph {

using CableId = std::uint32_t;
using CrossingId = std::uint32_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a cable id is unknown or refers to a terminated cable.
class UnknownCableError : public Error {
 public:
  explicit UnknownCableError(CableId cable);
  CableId cable() const noexcept { return cable_; }

 private:
  CableId cable_;
};

enum class Side : std::uint8_t { Left, Right };

struct EndpointRef {
  CableId cable = 0;
  Side side = Side::Left;

  EndpointRef opposite() const noexcept {
    return {cable, side == Side::Left ? Side::Right : Side::Left};
  }
  friend auto operator<=>(const EndpointRef&, const EndpointRef&) = default;
};

// "3L" / "3R".
std::string to_string(const EndpointRef& endpoint);

// One pass of a cable through a crossing. The depth is +1 for the segment on
// top of the stack and -m for a segment lying under m others.
struct Visit {
  CrossingId crossing = 0;
  int depth = 1;
  friend bool operator==(const Visit&, const Visit&) = default;
};

// Addresses one segment slot: the index-th visit of a cable, counted from its
// left endpoint.
struct SegmentRef {
  CableId cable = 0;
  std::size_t index = 0;
  friend auto operator<=>(const SegmentRef&, const SegmentRef&) = default;
};

std::string to_string(const SegmentRef& segment);

// A vertex of arity k. Slots are ordered by cable id, then by visit index.
struct Crossing {
  CrossingId id = 0;
  std::vector<SegmentRef> segments;
  std::vector<int> depths;  // parallel to segments

  std::size_t arity() const noexcept { return segments.size(); }
  // Vertex degree in the configuration graph.
  std::size_t degree() const noexcept { return 2 * segments.size(); }
  // Slot holding depth +1, if exactly one exists.
  std::optional<std::size_t> top_slot() const;
};

/// An n-cable configuration: per-cable visit sequences (left endpoint to right
/// endpoint), the left-to-right order of live endpoints, and the cables that
/// have already been moved to the termination area.
///
/// Values are immutable once built; every move produces a fresh Diagram. The
/// constructor indexes crossings but does not validate; see validate().
class Diagram {
 public:
  using CableMap = std::map<CableId, std::vector<Visit>>;

  Diagram() = default;
  Diagram(CableMap cables, std::vector<EndpointRef> endpoint_order,
          std::vector<CableId> terminated = {});

  const CableMap& cables() const noexcept { return cables_; }
  const std::vector<Visit>& visits(CableId cable) const;
  const std::map<CrossingId, Crossing>& crossings() const noexcept { return crossings_; }
  const Crossing* find_crossing(CrossingId id) const;
  const std::vector<EndpointRef>& endpoint_order() const noexcept { return order_; }
  const std::vector<CableId>& terminated() const noexcept { return terminated_; }

  bool is_live(CableId cable) const { return cables_.contains(cable); }
  std::size_t live_cable_count() const noexcept { return cables_.size(); }
  bool workspace_empty() const noexcept { return cables_.empty(); }
  // Smallest id strictly greater than every crossing id in use.
  CrossingId next_crossing_id() const;

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.cables_ == b.cables_ && a.order_ == b.order_ && a.terminated_ == b.terminated_;
  }

 private:
  CableMap cables_;
  std::vector<EndpointRef> order_;
  std::vector<CableId> terminated_;
  std::map<CrossingId, Crossing> crossings_;
};

struct Violation {
  std::string kind;     // e.g. "duplicate topmost"
  std::string subject;  // offending id, e.g. "X4" or "cable 2"
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(std::string_view kind) const;
  std::string to_string() const;
};

ValidationReport validate(const Diagram& diagram);

struct TraceVisit {
  CrossingId crossing = 0;
  int depth = 1;
  std::size_t index = 0;  // visit index counted from the left endpoint
  friend bool operator==(const TraceVisit&, const TraceVisit&) = default;
};

struct CableTrace {
  CableId cable = 0;
  bool from_left = true;
  std::vector<TraceVisit> visits;
};

// Visits of a live cable walked from the chosen endpoint.
CableTrace trace_cable(const Diagram& diagram, CableId cable, bool from_left = true);
CableTrace trace_from(const Diagram& diagram, const EndpointRef& start);

// Sum over crossings of C(k, 2): the number of pairwise segment crossings.
std::uint64_t potential(const Diagram& diagram);

/// Removes the given segment slots. Each affected crossing keeps the relative
/// depth order of its surviving segments and is renormalized to
/// {+1, -1, ..., -(k'-1)}; a crossing left with a single segment is spliced out.
Diagram remove_segments(const Diagram& diagram, std::span<const SegmentRef> segments);

// Drops every visit to the listed crossings.
Diagram remove_crossings(const Diagram& diagram, std::span<const CrossingId> crossings);

// Same diagram with a different endpoint order.
Diagram with_endpoint_order(const Diagram& diagram, std::vector<EndpointRef> order);

}  // namespace cablegraph
