#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "cablegraph/analysis.hpp"
#include "cablegraph/corpus.hpp"
#include "fixtures.hpp"

using namespace cablegraph;

namespace {

std::set<CrossingId> all_ids(const Diagram& d) {
  std::set<CrossingId> out;
  for (const auto& [id, c] : d.crossings()) out.insert(id);
  return out;
}

}  // namespace

TEST_CASE("overhand cores keep every crossing") {
  CHECK(classify_trivial(fixtures::overhand1()).trivial.empty());
  for (KnotClass kind : {KnotClass::Square, KnotClass::Carrick, KnotClass::SheetBend, KnotClass::Overhand2,
                         KnotClass::Crown, KnotClass::Fisherman, KnotClass::Square3, KnotClass::Carrick3,
                         KnotClass::Sheet3}) {
    INFO(to_string(kind));
    CHECK(classify_trivial(generate({kind})).trivial.empty());
  }
}

TEST_CASE("twists and the plait reduce completely") {
  for (unsigned n = 1; n <= 8; ++n) {
    const Diagram d = generate({KnotClass::Twist, n});
    auto report = classify_trivial(d);
    CHECK(report.trivial == all_ids(d));
    CHECK(report.reduced.crossings().empty());
  }
  const Diagram plait = generate({KnotClass::Braid3, 6});
  CHECK(classify_trivial(plait).trivial == all_ids(plait));
}

TEST_CASE("slack monogons are the only trivial crossings of a padded core") {
  const Diagram d = generate({KnotClass::Square, 0, 2});
  auto report = classify_trivial(d);
  CHECK(report.trivial == std::set<CrossingId>{7, 8});
  CHECK(report.steps.size() == 2);
  CHECK(report.steps[0].rule == ReductionRule::Monogon);
  CHECK(report.reduced == generate({KnotClass::Square}));
}

TEST_CASE("single inter-cable crossing is trivial") {
  auto report = classify_trivial(fixtures::single_crossing());
  CHECK(report.trivial == std::set<CrossingId>{1});
  CHECK(report.steps.front().rule == ReductionRule::FreeEndSlide);
}

TEST_CASE("reduction candidates are ordered by rule then id") {
  // X3 is a monogon; X1/X2 a bigon between two cables whose ends are blocked by X4/X5.
  const Diagram d = fixtures::mcd(
      "cables 2\n"
      "cable 1: X4@+1 X1@+1 X2@+1 X3@+1 X3@-1 X5@+1\n"
      "cable 2: X4@-1 X2@-1 X1@-1 X5@-1\n"
      "order: 1L 2L 1R 2R\n");
  auto cands = applicable_reductions(d);
  REQUIRE(cands.size() >= 2);
  CHECK(cands[0] == Reduction{ReductionRule::Monogon, {3}});
  CHECK(cands[1] == Reduction{ReductionRule::Bigon, {1, 2}});
}

TEST_CASE("a run of parallel bigons offers only its first pair") {
  const Diagram d = fixtures::mcd(
      "cables 2\n"
      "cable 1: X1@+1 X2@+1 X3@+1\n"
      "cable 2: X1@-1 X2@-1 X3@-1\n"
      "order: 1L 2L 1R 2R\n");
  std::vector<Reduction> bigons;
  for (const auto& r : applicable_reductions(d)) {
    if (r.rule == ReductionRule::Bigon) bigons.push_back(r);
  }
  CHECK(bigons == std::vector<Reduction>{{ReductionRule::Bigon, {1, 2}}});
}

TEST_CASE("an alternating run has no bigons") {
  const Diagram d = fixtures::mcd(
      "cables 2\n"
      "cable 1: X3@+1 X1@-1 X2@+1 X4@-1\n"
      "cable 2: X3@-1 X1@+1 X2@-1 X4@+1\n"
      "order: 1L 2L 1R 2R\n");
  for (const auto& r : applicable_reductions(d)) CHECK(r.rule != ReductionRule::Bigon);
}

TEST_CASE("apply_reduction rejects missing crossings") {
  CHECK_THROWS_AS(apply_reduction(fixtures::single_crossing(), {ReductionRule::Monogon, {9}}), Error);
}

TEST_CASE("trivial sets match the frozen reference") {
  std::ifstream in(CABLEGRAPH_TEST_DATA "/random_trivial.txt");
  REQUIRE(in);
  std::string line;
  std::size_t checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::uint64_t seed;
    unsigned cables, crossings;
    std::string bar, tok;
    fields >> seed >> cables >> crossings >> bar;
    std::set<CrossingId> expected;
    while (fields >> tok) {
      if (tok != "-") expected.insert(static_cast<CrossingId>(std::stoul(tok)));
    }
    INFO("seed " << seed);
    CHECK(classify_trivial(generate_random(seed, cables, crossings)).trivial == expected);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("reduction order does not change the trivial set") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Diagram d = generate_random(seed, 2 + seed % 2, 8);
    const auto reference = classify_trivial(d).trivial;
    for (int trial = 0; trial < 5; ++trial) {
      Diagram cur = d;
      std::set<CrossingId> got;
      for (auto cands = applicable_reductions(cur); !cands.empty(); cands = applicable_reductions(cur)) {
        const auto& pick = cands[rng() % cands.size()];
        got.insert(pick.crossings.begin(), pick.crossings.end());
        cur = apply_reduction(cur, pick);
      }
      CHECK(got == reference);
    }
  }
}

TEST_CASE("semi-disentanglement") {
  const Diagram square = generate({KnotClass::Square});
  CHECK_FALSE(is_semi_disentangled(square, 1));
  CHECK_FALSE(is_semi_disentangled(square, 2));
  const Diagram over2 = generate({KnotClass::Overhand2});
  CHECK_FALSE(is_semi_disentangled(over2, 1));
  CHECK_FALSE(is_semi_disentangled(over2, 2));
  CHECK(is_semi_disentangled(generate({KnotClass::Twist, 4}), 1));
  CHECK(is_semi_disentangled(fixtures::two_free_cables(), 2));
  CHECK_THROWS_AS(is_semi_disentangled(square, 5), UnknownCableError);
}

TEST_CASE("endpoint selection") {
  SUBCASE("rightmost and leftmost on another cable") {
    const Diagram d = generate({KnotClass::Carrick});  // order 2R 1L 1R 2L
    auto sel = select_endpoints(d);
    CHECK(sel.right == EndpointRef{2, Side::Left});
    CHECK(sel.left == EndpointRef{1, Side::Left});
  }
  SUBCASE("single cable uses its other endpoint") {
    auto sel = select_endpoints(fixtures::overhand1());
    CHECK(sel.right == EndpointRef{1, Side::Right});
    CHECK(sel.left == EndpointRef{1, Side::Left});
  }
  SUBCASE("empty workspace") {
    CHECK_THROWS_AS(select_endpoints(Diagram{}), EmptyWorkspaceError);
  }
}

TEST_CASE("first non-trivial undercrossing from the right") {
  auto target = first_nontrivial_undercrossing(fixtures::overhand1());
  REQUIRE(target);
  CHECK(target->crossing == 3);
  CHECK(target->hold == SegmentRef{1, 2});
  CHECK(target->pull == SegmentRef{1, 5});
}

TEST_CASE("node deletion search falls back to v_l") {
  const Diagram d = fixtures::mcd(
      "cables 2\n"
      "cable 1: X1@+1 X2@-1 X3@+1 X1@-1 X2@+1 X3@-1\n"
      "cable 2:\n"
      "order: 1L 1R 2L 2R\n");
  CHECK_FALSE(first_nontrivial_undercrossing(d));
  auto target = find_node_deletion_target(d);
  REQUIRE(target);
  CHECK(target->crossing == 2);
  CHECK(target->pull == SegmentRef{1, 1});
  CHECK(target->hold == SegmentRef{1, 4});
}

TEST_CASE("a target exists whenever the rightmost cable is still entangled") {
  auto check = [](const Diagram& d) {
    if (d.workspace_empty()) return;
    auto report = classify_trivial(d);
    if (report.trivial.size() == d.crossings().size()) return;
    if (is_semi_disentangled(report, select_endpoints(d).right.cable)) return;
    CHECK(find_node_deletion_target(d, report.trivial).has_value());
  };
  for (const auto& entry : golden_corpus()) check(entry.diagram);
  for (std::uint64_t seed = 0; seed < 200; ++seed) check(generate_random(seed, 1 + seed % 3, 6));
}
