#include "cablegraph/corpus.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <unordered_map>

#include "cablegraph/mcd.hpp"

namespace cablegraph {

namespace {

struct ClassInfo {
  KnotClass kind;
  const char* name;
  int tier;
};

constexpr ClassInfo kClasses[] = {
    {KnotClass::Twist, "twist", 1},         {KnotClass::Square, "square", 1},
    {KnotClass::Carrick, "carrick", 1},     {KnotClass::SheetBend, "sheet_bend", 1},
    {KnotClass::Crown, "crown", 2},         {KnotClass::Fisherman, "fisherman", 2},
    {KnotClass::Overhand2, "overhand2", 2}, {KnotClass::Braid3, "braid3", 3},
    {KnotClass::Square3, "square3", 3},     {KnotClass::Carrick3, "carrick3", 3},
    {KnotClass::Sheet3, "sheet3", 3},       {KnotClass::Random, "random", 0},
};

const ClassInfo& info(KnotClass kind) {
  for (const auto& c : kClasses) {
    if (c.kind == kind) return c;
  }
  throw InvalidSpecError("unknown knot class");
}

// Codes read off drawings of each knot: every strand is walked from its left
// endpoint and each crossing gets the depth of that pass. The three-cable
// variants thread a third cable alongside one of the two, doubling the
// crossings it meets.
constexpr const char* kSquare = R"(mcd 1
cables 2
cable 1: X1@+1 X2@-1 X3@+1 X4@-1 X5@+1 X6@-1
cable 2: X3@-1 X2@+1 X1@-1 X6@+1 X5@-1 X4@+1
order: 1L 1R 2L 2R
)";

constexpr const char* kSheetBend = R"(mcd 1
cables 2
cable 1: X1@+1 X2@-1 X3@+1 X4@-1 X5@+1
cable 2: X3@-1 X6@+1 X2@+1 X1@-1 X5@-1 X4@+1 X6@-1
order: 1L 1R 2R 2L
)";

constexpr const char* kCarrick = R"(mcd 1
cables 2
cable 1: X1@+1 X2@-1 X3@+1 X4@-1 X5@+1 X6@-1 X2@+1 X7@-1
cable 2: X4@+1 X8@-1 X6@+1 X1@-1 X7@+1 X3@-1 X8@+1 X5@-1
order: 2R 1L 1R 2L
)";

constexpr const char* kCrown = R"(mcd 1
cables 2
cable 1: X1@+1 X2@-1 X3@+1 X4@+1 X5@+1
cable 2: X2@+1 X5@-1 X3@-1 X1@-1 X4@-1
order: 2L 1R 1L 2R
)";

constexpr const char* kFisherman = R"(mcd 1
cables 2
cable 1: X1@+1 X2@-1 X3@+1 X4@-1 X5@+1 X6@-1 X7@+1 X8@-1 X4@+1 X5@-1 X9@+1 X7@-1
cable 2: X6@+1 X9@-1 X8@+1 X10@-1 X11@+1 X1@-1 X12@+1 X3@-1 X10@+1 X11@-1 X2@+1 X12@-1
order: 1L 2R 1R 2L
)";

constexpr const char* kOverhand2 = R"(mcd 1
cables 2
cable 1: X1@+1 X2@-1 X3@+1 X4@-1 X5@+1 X6@-1 X7@+1 X1@-1 X4@+1 X8@-1 X9@+1 X5@-1
cable 2: X7@-1 X10@+1 X11@-1 X8@+1 X9@-1 X12@+1 X10@-1 X2@+1 X3@-1 X11@+1 X12@-1 X6@+1
order: 1L 2L 1R 2R
)";

constexpr const char* kSquare3 = R"(mcd 1
cables 3
cable 1: X1@+1 X2@-1 X3@+1 X4@-1 X5@+1 X6@-1
cable 2: X7@-1 X3@-1 X2@+1 X8@+1 X9@-1 X1@-1 X6@+1 X10@+1 X11@-1 X5@-1 X4@+1 X12@+1
cable 3: X9@+1 X8@-1 X7@+1 X12@-1 X11@+1 X10@-1
order: 1L 3L 3R 1R 2L 2R
)";

constexpr const char* kCarrick3 = R"(mcd 1
cables 3
cable 1: X1@+1 X2@-1 X3@-1 X4@+1 X5@-1 X6@+1 X7@-1 X3@+1 X8@+1 X9@-1
cable 2: X10@+1 X5@+1 X11@-1 X7@+1 X12@+1 X1@-1 X13@-1 X14@+1 X9@+1 X15@-1 X4@-1 X11@+1 X6@-1 X16@-1
cable 3: X13@+1 X17@-1 X8@-1 X15@+1 X10@-1 X16@+1 X12@-1 X2@+1 X17@+1 X14@-1
order: 2R 1L 3L 1R 3R 2L
)";

constexpr const char* kSheet3 = R"(mcd 1
cables 3
cable 1: X1@+1 X2@-1 X3@+1 X4@-1 X5@+1
cable 2: X3@-1 X6@-1 X7@+1 X8@+1 X2@+1 X1@-1 X9@-1 X10@-1 X5@-1 X4@+1 X11@+1 X7@-1
cable 3: X9@+1 X8@-1 X6@+1 X11@-1 X10@+1
order: 3L 1L 1R 3R 2R 2L
)";

// Strands start in cable order at the left; a crossing between positions p
// and p+1 swaps the strands there. R endpoints follow the final positions.
Diagram plait(unsigned cables, const std::vector<std::pair<unsigned, bool>>& crossings) {
  Diagram::CableMap map;
  std::vector<CableId> position(cables);
  for (unsigned i = 0; i < cables; ++i) {
    position[i] = i + 1;
    map[i + 1];
  }
  CrossingId id = 1;
  for (const auto& [p, left_over] : crossings) {
    map[position[p]].push_back({id, left_over ? 1 : -1});
    map[position[p + 1]].push_back({id, left_over ? -1 : 1});
    std::swap(position[p], position[p + 1]);
    ++id;
  }
  std::vector<EndpointRef> order;
  for (unsigned i = 0; i < cables; ++i) order.push_back({i + 1, Side::Left});
  for (CableId c : position) order.push_back({c, Side::Right});
  return Diagram(std::move(map), std::move(order));
}

Diagram twist(unsigned n) {
  if (n == 0) throw InvalidSpecError("twist needs n >= 1");
  // The strand in the upper position always passes over.
  return plait(2, std::vector<std::pair<unsigned, bool>>(n, {0, true}));
}

Diagram braid3(unsigned n) {
  if (n == 0) throw InvalidSpecError("braid3 needs n >= 1");
  // Alternating sigma_1, sigma_2^-1.
  std::vector<std::pair<unsigned, bool>> word;
  for (unsigned i = 0; i < n; ++i) word.push_back(i % 2 == 0 ? std::pair{0u, true} : std::pair{1u, false});
  return plait(3, word);
}

Diagram core(const KnotSpec& spec) {
  switch (spec.kind) {
    case KnotClass::Twist: return twist(spec.n);
    case KnotClass::Braid3: return braid3(spec.n);
    case KnotClass::Square: return parse_mcd(kSquare);
    case KnotClass::Carrick: return parse_mcd(kCarrick);
    case KnotClass::SheetBend: return parse_mcd(kSheetBend);
    case KnotClass::Overhand2: return parse_mcd(kOverhand2);
    case KnotClass::Crown: return parse_mcd(kCrown);
    case KnotClass::Fisherman: return parse_mcd(kFisherman);
    case KnotClass::Square3: return parse_mcd(kSquare3);
    case KnotClass::Carrick3: return parse_mcd(kCarrick3);
    case KnotClass::Sheet3: return parse_mcd(kSheet3);
    case KnotClass::Random: return generate_random(spec.seed, spec.cables, spec.crossings);
  }
  throw InvalidSpecError("unknown knot class");
}

std::size_t index_draw(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::string to_string(KnotClass kind) { return info(kind).name; }

std::optional<KnotClass> knot_class_from_name(std::string_view name) {
  for (const auto& c : kClasses) {
    if (name == c.name) return c.kind;
  }
  return std::nullopt;
}

const std::vector<KnotClass>& all_knot_classes() {
  static const std::vector<KnotClass> classes = [] {
    std::vector<KnotClass> out;
    for (const auto& c : kClasses) {
      if (c.kind != KnotClass::Random) out.push_back(c.kind);
    }
    return out;
  }();
  return classes;
}

int tier_of(KnotClass kind) { return info(kind).tier; }

Diagram generate(const KnotSpec& spec) {
  Diagram diagram = add_slack(core(spec), spec.slack);
  auto report = validate(diagram);
  if (!report.ok()) throw Error("generator produced an invalid diagram: " + report.to_string());
  return diagram;
}

Diagram generate_random(std::uint64_t seed, unsigned n_cables, unsigned n_crossings) {
  if (n_cables == 0) throw InvalidSpecError("random tangles need at least one cable");
  std::mt19937_64 rng(seed);
  Diagram::CableMap cables;
  for (CableId c = 1; c <= n_cables; ++c) cables[c];

  auto insert = [&](CableId cable, Visit visit) {
    auto& visits = cables[cable];
    visits.insert(visits.begin() + static_cast<std::ptrdiff_t>(index_draw(rng, visits.size() + 1)), visit);
  };
  for (CrossingId id = 1; id <= n_crossings; ++id) {
    const bool first_on_top = (rng() & 1u) != 0;
    const Visit first{id, first_on_top ? 1 : -1};
    const Visit second{id, first_on_top ? -1 : 1};
    if (n_cables >= 2 && unit_draw(rng) < 0.7) {
      const auto a = static_cast<CableId>(index_draw(rng, n_cables) + 1);
      auto b = static_cast<CableId>(index_draw(rng, n_cables - 1) + 1);
      if (b >= a) ++b;
      insert(a, first);
      insert(b, second);
    } else {
      const auto a = static_cast<CableId>(index_draw(rng, n_cables) + 1);
      insert(a, first);
      insert(a, second);
    }
  }

  std::vector<EndpointRef> order;
  for (CableId c = 1; c <= n_cables; ++c) {
    order.push_back({c, Side::Left});
    order.push_back({c, Side::Right});
  }
  // Fisher-Yates with our own draws; std::shuffle is not portable across libraries.
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[index_draw(rng, i)]);
  return Diagram(std::move(cables), std::move(order));
}

Diagram add_slack(const Diagram& diagram, unsigned slack) {
  if (slack == 0) return diagram;
  if (diagram.workspace_empty()) throw InvalidSpecError("slack needs at least one live cable");
  Diagram::CableMap cables = diagram.cables();
  std::vector<CableId> ids;
  for (const auto& [id, visits] : cables) ids.push_back(id);
  CrossingId next = diagram.next_crossing_id();
  for (unsigned m = 0; m < slack; ++m) {
    auto& visits = cables[ids[m % ids.size()]];
    const Visit loop[] = {{next, 1}, {next, -1}};
    visits.insert(m % 2 == 0 ? visits.begin() : visits.end(), std::begin(loop), std::end(loop));
    ++next;
  }
  return Diagram(std::move(cables), diagram.endpoint_order(), diagram.terminated());
}

std::string corpus_file_name(const KnotSpec& spec) {
  std::string name = "tier" + std::to_string(tier_of(spec.kind)) + "_" + to_string(spec.kind);
  if (spec.kind == KnotClass::Twist || spec.kind == KnotClass::Braid3) name += "_" + std::to_string(spec.n);
  if (spec.kind == KnotClass::Random) {
    name += "_" + std::to_string(spec.seed) + "_" + std::to_string(spec.cables) + "_" + std::to_string(spec.crossings);
  }
  if (spec.slack > 0) name += "_s" + std::to_string(spec.slack);
  return name + ".mcd";
}

std::vector<CorpusEntry> golden_corpus() {
  std::vector<KnotSpec> specs;
  for (unsigned slack : {0u, 2u}) {
    for (unsigned n = 2; n <= 6; ++n) specs.push_back({KnotClass::Twist, n, slack});
    specs.push_back({KnotClass::Braid3, 6, slack});
    for (KnotClass kind : all_knot_classes()) {
      if (kind != KnotClass::Twist && kind != KnotClass::Braid3) specs.push_back({kind, 0, slack});
    }
  }
  std::vector<CorpusEntry> out;
  for (const auto& spec : specs) out.push_back({spec, tier_of(spec.kind), corpus_file_name(spec), generate(spec)});
  std::sort(out.begin(), out.end(), [](const CorpusEntry& a, const CorpusEntry& b) { return a.file_name < b.file_name; });
  return out;
}

std::string to_string(OracleResult::Status status) {
  switch (status) {
    case OracleResult::Status::Reachable: return "reachable";
    case OracleResult::Status::Unreachable: return "unreachable";
    case OracleResult::Status::Unknown: return "unknown";
  }
  return "?";
}

namespace {

// Endpoint order and termination order never affect which moves are legal.
std::string state_key(const Diagram& diagram) {
  std::vector<EndpointRef> order = diagram.endpoint_order();
  std::sort(order.begin(), order.end());
  std::vector<CableId> terminated = diagram.terminated();
  std::sort(terminated.begin(), terminated.end());
  return serialize_mcd(Diagram(diagram.cables(), std::move(order), std::move(terminated)));
}

std::vector<Action> legal_moves(const Diagram& diagram) {
  std::vector<Action> moves;
  if (diagram.workspace_empty()) return moves;
  const TrivialityReport report = classify_trivial(diagram);
  if (!report.trivial.empty()) moves.push_back(Action::reidemeister(select_endpoints(diagram)));

  for (const auto& [id, crossing] : diagram.crossings()) {
    if (report.is_trivial(id)) continue;
    auto top = crossing.top_slot();
    if (!top) continue;
    for (std::size_t s = 0; s < crossing.arity(); ++s) {
      if (s != *top) moves.push_back(Action::node_deletion({id, crossing.segments[*top], crossing.segments[s]}));
    }
  }

  const auto& order = diagram.endpoint_order();
  for (const auto& [cable, visits] : diagram.cables()) {
    if (!is_semi_disentangled(report, cable)) continue;
    const bool alone = diagram.live_cable_count() == 1;
    auto pin = std::find_if(order.begin(), order.end(),
                            [&](const EndpointRef& e) { return alone ? e.cable == cable : e.cable != cable; });
    moves.push_back(Action::cable_extraction(cable, *pin));
  }
  return moves;
}

}  // namespace

OracleResult bfs_solve(const Diagram& diagram, std::size_t max_depth, std::size_t max_states) {
  struct Node {
    Diagram diagram;
    std::size_t cost = 0;
    std::size_t parent = 0;
    Action via;
    bool settled = false;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> index;
  std::deque<std::size_t> frontier;
  bool truncated = false;

  nodes.push_back({diagram, 0, 0, Action::done(), false});
  index.emplace(state_key(diagram), 0);
  frontier.push_back(0);

  OracleResult result;
  while (!frontier.empty()) {
    const std::size_t at = frontier.front();
    frontier.pop_front();
    if (nodes[at].settled) continue;
    nodes[at].settled = true;

    if (nodes[at].diagram.workspace_empty()) {
      std::vector<Action> witness;
      for (std::size_t n = at; n != 0; n = nodes[n].parent) witness.push_back(nodes[n].via);
      std::reverse(witness.begin(), witness.end());
      result.status = OracleResult::Status::Reachable;
      result.min_moves = nodes[at].cost;
      result.witness = std::move(witness);
      result.states = nodes.size();
      return result;
    }

    const Diagram here = nodes[at].diagram;
    const std::size_t cost = nodes[at].cost;
    for (const Action& move : legal_moves(here)) {
      const std::size_t step = move.is_disentangling() ? 1 : 0;
      if (cost + step > max_depth) {
        truncated = true;
        continue;
      }
      Diagram next = apply(here, move);
      auto key = state_key(next);
      auto found = index.find(key);
      if (found == index.end()) {
        if (nodes.size() >= max_states) {
          truncated = true;
          continue;
        }
        index.emplace(std::move(key), nodes.size());
        nodes.push_back({std::move(next), cost + step, at, move, false});
        step == 0 ? frontier.push_front(nodes.size() - 1) : frontier.push_back(nodes.size() - 1);
      } else {
        Node& seen = nodes[found->second];
        if (!seen.settled && cost + step < seen.cost) {
          seen = {std::move(next), cost + step, at, move, false};
          step == 0 ? frontier.push_front(found->second) : frontier.push_back(found->second);
        }
      }
    }
  }
  result.status = truncated ? OracleResult::Status::Unknown : OracleResult::Status::Unreachable;
  result.states = nodes.size();
  return result;
}

bool replay_witness(const Diagram& diagram, const std::vector<Action>& witness) {
  Diagram current = diagram;
  try {
    for (const auto& action : witness) {
      current = apply(current, action);
      if (!validate(current).ok()) return false;
    }
  } catch (const Error&) {
    return false;
  }
  return current.workspace_empty();
}

}  // namespace cablegraph
