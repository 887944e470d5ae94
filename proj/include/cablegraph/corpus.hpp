#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cablegraph/moves.hpp"

namespace cablegraph {

enum class KnotClass {
  Twist,
  Braid3,
  Square,
  Carrick,
  SheetBend,
  Overhand2,
  Crown,
  Fisherman,
  Square3,
  Carrick3,
  Sheet3,
  Random,
};

std::string to_string(KnotClass kind);
std::optional<KnotClass> knot_class_from_name(std::string_view name);
const std::vector<KnotClass>& all_knot_classes();  // every class except Random

// 1: seen two-cable classes, 2: unseen two-cable classes, 3: three-cable classes.
// Random tangles have tier 0.
int tier_of(KnotClass kind);

class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

struct KnotSpec {
  KnotClass kind = KnotClass::Twist;
  unsigned n = 0;      // crossing count for twist, generator count for braid3
  unsigned slack = 0;  // trivial monogons added around the core
  // Random tangles only.
  std::uint64_t seed = 0;
  unsigned cables = 2;
  unsigned crossings = 0;
};

Diagram generate(const KnotSpec& spec);

// Composes random k=2 crossing insertions between (70%) or within cables,
// then shuffles the endpoint order. Deterministic under the seed.
Diagram generate_random(std::uint64_t seed, unsigned n_cables, unsigned n_crossings);

// Monogon m sits on the (m mod n)-th live cable, before its first visit for
// even m and after its last visit for odd m.
Diagram add_slack(const Diagram& diagram, unsigned slack);

// "tier<k>_<name>[_<n>][_s<slack>].mcd"
std::string corpus_file_name(const KnotSpec& spec);

struct CorpusEntry {
  KnotSpec spec;
  int tier = 0;
  std::string file_name;
  Diagram diagram;
};

// Twist n = 2..6, braid3 with 6 generators and every named knot, each with
// slack 0 and 2.
std::vector<CorpusEntry> golden_corpus();

struct OracleResult {
  enum class Status { Reachable, Unreachable, Unknown };
  Status status = Status::Unknown;
  std::optional<std::size_t> min_moves;  // disentangling actions on the best path
  std::optional<std::vector<Action>> witness;
  std::size_t states = 0;

  bool reachable() const noexcept { return status == Status::Reachable; }
};

std::string to_string(OracleResult::Status status);

/// Exhaustive search over every legal move: Reidemeister (when it changes
/// anything), every Node Deletion (each non-trivial crossing, each
/// under-segment) and every legal extraction. Reidemeister moves are free and
/// the rest cost one, so min_moves counts disentangling actions. States are
/// deduplicated by serialized form with the endpoint order ignored. Unknown
/// when the depth or the state limit cuts the search short.
OracleResult bfs_solve(const Diagram& diagram, std::size_t max_depth = 12, std::size_t max_states = 2'000'000);

// Applies the witness from the start and checks it ends with an empty workspace.
bool replay_witness(const Diagram& diagram, const std::vector<Action>& witness);

}  // namespace cablegraph
