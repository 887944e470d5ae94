// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cablegraph/corpus.hpp"
#include "cablegraph/mcd.hpp"
#include "cablegraph/planner.hpp"

using namespace cablegraph;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream note;
  std::vector<std::string> problems;

  void fail(const std::string& why) {
    pass = false;
    if (problems.size() < 5) problems.push_back(why);
  }
};

struct GoldenFile {
  std::string name;
  int tier = 0;
  std::string text;
  Diagram diagram;
};

std::vector<GoldenFile> load_golden(Verdict& v) {
  std::vector<GoldenFile> files;
  std::vector<fs::path> paths;
  for (const auto& item : fs::directory_iterator(CABLEGRAPH_CORPUS_DIR)) {
    if (item.path().extension() == ".mcd") paths.push_back(item.path());
  }
  std::sort(paths.begin(), paths.end());
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    const std::string name = path.filename().string();
    try {
      files.push_back({name, std::stoi(name.substr(4, name.find('_') - 4)), text.str(), parse_mcd(text.str())});
    } catch (const std::exception& e) {
      v.fail(name + ": " + e.what());
    }
  }
  return files;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Verdict corpus_success() {
  Verdict v;
  const auto files = load_golden(v);
  if (files.size() != golden_corpus().size()) v.fail("golden corpus has " + std::to_string(files.size()) + " files");
  std::size_t wins = 0;
  double worst = 0;
  for (const auto& f : files) {
    const auto start = Clock::now();
    const RolloutTrace t = run(f.diagram, default_budget(f.tier));
    const double took = seconds_since(start);
    worst = std::max(worst, took);
    if (t.outcome == Outcome::Success) {
      ++wins;
    } else {
      v.fail(f.name + " ended " + to_string(t.outcome));
    }
    if (took >= 1.0) v.fail(f.name + " took " + std::to_string(took) + " s");
  }
  v.note << wins << "/" << files.size() << " succeeded within 20/30/30, slowest rollout " << std::fixed
         << std::setprecision(4) << worst << " s";
  return v;
}

Verdict termination_measure() {
  Verdict v;
  std::size_t steps = 0, deletions = 0;
  for (const auto& f : load_golden(v)) {
    Diagram before = f.diagram;
    run(f.diagram, default_budget(f.tier), std::nullopt, [&](const TraceStep& s, const Diagram& after) {
      ++steps;
      const auto a = potential(before), b = potential(after);
      if (a != s.potential_before || b != s.potential_after) v.fail(f.name + ": recorded potential mismatch");
      switch (s.action.kind) {
        case ActionKind::NodeDeletion: {
          ++deletions;
          const auto& target = std::get<NodeDeletionTarget>(s.action.targets);
          const std::uint64_t k = before.find_crossing(target.crossing)->arity();
          if (a - b != k - 1 || b > a) v.fail(f.name + " step " + std::to_string(s.index) + ": drop != k-1");
          break;
        }
        case ActionKind::Reidemeister:
        case ActionKind::CableExtraction:
          if (b > a) v.fail(f.name + " step " + std::to_string(s.index) + ": potential increased");
          break;
        default:
          break;
      }
      before = after;
    });
  }
  v.note << steps << " steps checked, " << deletions << " Node Deletions dropped exactly k-1";
  return v;
}

Verdict oracle_completeness() {
  Verdict v;
  const auto start = Clock::now();
  std::size_t within = 0, total = 0;
  double worst_ratio = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const unsigned cables = 2 + static_cast<unsigned>(seed % 2);
    const unsigned crossings = 1 + static_cast<unsigned>(seed % 5);
    const Diagram d = generate_random(1000 + seed, cables, crossings);
    const OracleResult r = bfs_solve(d);
    ++total;
    if (!r.reachable()) {
      v.fail("seed " + std::to_string(seed) + ": oracle says " + to_string(r.status));
      continue;
    }
    if (!replay_witness(d, *r.witness)) v.fail("seed " + std::to_string(seed) + ": witness does not replay");
    const RolloutTrace t = run(d, Budget{30});
    if (t.outcome != Outcome::Success) {
      v.fail("seed " + std::to_string(seed) + ": planner ended " + to_string(t.outcome));
      continue;
    }
    const std::size_t best = *r.min_moves;
    if (t.disentangling_actions < best) v.fail("seed " + std::to_string(seed) + ": planner beat the oracle");
    if (t.disentangling_actions <= 3 * best) ++within;
    if (best > 0) worst_ratio = std::max(worst_ratio, static_cast<double>(t.disentangling_actions) / best);
  }
  const double share = static_cast<double>(within) / static_cast<double>(total);
  if (share < 0.9) v.fail("only " + std::to_string(within) + "/" + std::to_string(total) + " within 3x of optimal");
  const double took = seconds_since(start);
  if (took >= 300.0) v.fail("took " + std::to_string(took) + " s");
  v.note << total << " instances reachable, " << within << "/" << total << " within 3x optimal (worst ratio "
         << std::setprecision(3) << worst_ratio << "), " << std::fixed << std::setprecision(2) << took << " s";
  return v;
}

Verdict triviality_fixtures() {
  Verdict v;
  std::size_t fixtures = 0;
  auto expect = [&](const std::string& label, const Diagram& d, const std::set<CrossingId>& want) {
    ++fixtures;
    if (classify_trivial(d).trivial != want) v.fail(label + ": trivial set differs");
  };
  auto ids_from = [](CrossingId lo, CrossingId hi) {
    std::set<CrossingId> s;
    for (CrossingId i = lo; i <= hi; ++i) s.insert(i);
    return s;
  };
  for (KnotClass kind : {KnotClass::Overhand2, KnotClass::Square, KnotClass::Carrick, KnotClass::SheetBend}) {
    const Diagram core = generate({kind});
    expect(to_string(kind), core, {});
    const CrossingId next = core.next_crossing_id();
    expect(to_string(kind) + " padded", generate({kind, 0, 2}), {next, next + 1});
  }
  for (unsigned n = 2; n <= 6; ++n) {
    expect("twist " + std::to_string(n), generate({KnotClass::Twist, n}), ids_from(1, n));
    expect("twist " + std::to_string(n) + " padded", generate({KnotClass::Twist, n, 2}), ids_from(1, n + 2));
  }
  expect("braid3", generate({KnotClass::Braid3, 6}), ids_from(1, 6));
  expect("braid3 padded", generate({KnotClass::Braid3, 6, 2}), ids_from(1, 8));
  expect("single inter-cable crossing",
         parse_mcd("mcd 1\ncables 2\ncable 1: X1@+1\ncable 2: X1@-1\norder: 1L 2L 1R 2R\n"), {1});
  v.note << fixtures << " fixtures matched exactly";
  return v;
}

Verdict confluence() {
  Verdict v;
  std::mt19937_64 rng(2024);
  std::size_t diagrams = 0, nonempty = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Diagram d = generate_random(5000 + seed, 1 + static_cast<unsigned>(seed % 3), static_cast<unsigned>(seed % 9));
    const auto reference = classify_trivial(d);
    ++diagrams;
    if (!reference.trivial.empty() && reference.trivial.size() < d.crossings().size()) ++nonempty;
    for (int order = 0; order < 20; ++order) {
      Diagram cur = d;
      std::set<CrossingId> got;
      for (auto cands = applicable_reductions(cur); !cands.empty(); cands = applicable_reductions(cur)) {
        const Reduction pick = cands[rng() % cands.size()];
        got.insert(pick.crossings.begin(), pick.crossings.end());
        cur = apply_reduction(cur, pick);
      }
      if (got != reference.trivial || !(cur == reference.reduced)) {
        v.fail("seed " + std::to_string(seed) + " order " + std::to_string(order) + " differs");
      }
    }
  }
  v.note << diagrams << " diagrams x 20 orders agree (" << nonempty << " with a partial trivial set)";
  return v;
}

Verdict serialization() {
  Verdict v;
  std::size_t golden = 0;
  for (const auto& f : load_golden(v)) {
    ++golden;
    if (serialize_mcd(f.diagram) != f.text) v.fail(f.name + " does not round trip");
  }
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Diagram d = generate_random(9000 + seed, 1 + static_cast<unsigned>(seed % 4), static_cast<unsigned>(seed % 13));
    const std::string text = serialize_mcd(d);
    const Diagram back = parse_mcd(text);
    if (!(back == d) || serialize_mcd(back) != text) v.fail("random seed " + std::to_string(seed));
  }
  v.note << golden << " golden files and 500 random diagrams round trip bit-exactly";
  return v;
}

Verdict noise_monotonicity() {
  Verdict v;
  std::vector<GoldenFile> tier1;
  for (auto& f : load_golden(v)) {
    if (f.tier == 1) tier1.push_back(std::move(f));
  }
  const double levels[] = {0.0, 0.15, 0.3, 0.5};
  std::vector<double> means;
  std::size_t checked_steps = 0;
  for (double p : levels) {
    std::size_t wins = 0, rollouts = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      for (const auto& f : tier1) {
        std::optional<NoiseConfig> noise;
        if (p > 0) noise = NoiseConfig{p, 0.0, derive_seed(seed, rollouts)};
        const RolloutTrace t = run(f.diagram, default_budget(1), noise, [&](const TraceStep&, const Diagram& d) {
          ++checked_steps;
          if (!validate(d).ok()) v.fail(f.name + ": invalid diagram mid-rollout");
        });
        ++rollouts;
        if (t.outcome == Outcome::Success) {
          ++wins;
        } else if (t.outcome != Outcome::BudgetExceeded && t.outcome != Outcome::NoiseStall) {
          v.fail(f.name + ": failure mode " + to_string(t.outcome));
        }
      }
    }
    means.push_back(static_cast<double>(wins) / static_cast<double>(rollouts));
  }
  for (std::size_t i = 1; i < means.size(); ++i) {
    if (means[i] > means[i - 1]) v.fail("success rose between p_fail levels");
  }
  v.note << "mean success";
  for (std::size_t i = 0; i < means.size(); ++i) {
    v.note << (i ? ", " : " ") << "p=" << levels[i] << ":" << std::fixed << std::setprecision(3) << means[i];
  }
  v.note << "; " << checked_steps << " steps validated";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"corpus success", corpus_success},
      {"termination measure", termination_measure},
      {"oracle completeness", oracle_completeness},
      {"triviality fixtures", triviality_fixtures},
      {"confluence", confluence},
      {"serialization round trip", serialization},
      {"noise monotonicity", noise_monotonicity},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    std::cout << (v.pass ? "PASS" : "FAIL") << " | " << name << " | " << v.note.str() << '\n';
    for (const auto& p : v.problems) std::cout << "       " << p << '\n';
    if (!v.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
