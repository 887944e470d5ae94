#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cablegraph/cli.hpp"
#include "cablegraph/mcd.hpp"

using namespace cablegraph;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus_file(const std::string& name) { return std::string(CABLEGRAPH_CORPUS_DIR) + "/" + name; }

fs::path scratch(const std::string& name) { return fs::temp_directory_path() / ("cablegraph_cli_" + name); }

void write(const fs::path& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Points CABLEGRAPH_CORPUS somewhere for the lifetime of the guard.
struct CorpusEnv {
  explicit CorpusEnv(const std::string& dir) { ::setenv("CABLEGRAPH_CORPUS", dir.c_str(), 1); }
  ~CorpusEnv() { ::unsetenv("CABLEGRAPH_CORPUS"); }
};

}  // namespace

TEST_CASE("gen") {
  SUBCASE("twist with three crossings") {
    auto r = cli({"gen", "--knot", "twist", "--n", "3"});
    CHECK(r.code == 0);
    CHECK(parse_mcd(r.out).crossings().size() == 3);
    CHECK(r.out.find("# crossings 3 tier 1") != std::string::npos);
  }
  SUBCASE("unknown class") {
    auto r = cli({"gen", "--knot", "nosuch"});
    CHECK(r.code == 2);
    CHECK(r.err.find("unknown knot class") != std::string::npos);
  }
  SUBCASE("random output is reproducible") {
    const auto a = scratch("rand_a.mcd"), b = scratch("rand_b.mcd");
    const std::vector<std::string> base{"gen", "--random", "--seed", "7", "--cables", "3", "--crossings", "8", "--out"};
    auto args_a = base, args_b = base;
    args_a.push_back(a.string());
    args_b.push_back(b.string());
    CHECK(cli(args_a).code == 0);
    CHECK(cli(args_b).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(parse_mcd(slurp(a)).crossings().size() == 8);
    fs::remove(a);
    fs::remove(b);
  }
  SUBCASE("needs a source") {
    CHECK(cli({"gen"}).code == 2);
    CHECK(cli({"gen", "--knot", "square", "--random"}).code == 2);
  }
}

TEST_CASE("run") {
  SUBCASE("square knot from the corpus") {
    auto r = cli({"run", "--input", corpus_file("tier1_square.mcd")});
    CHECK(r.code == 0);
    CHECK(r.out.find("outcome Success") != std::string::npos);
    CHECK(r.out.rfind("step 0 | Reidemeister | targets=", 0) == 0);
  }
  SUBCASE("zero budget") {
    CHECK(cli({"run", "--input", corpus_file("tier1_square.mcd"), "--budget", "0"}).code == 3);
    CHECK(cli({"run", "--knot", "carrick3", "--budget", "0"}).code == 3);
  }
  SUBCASE("malformed input") {
    const auto path = scratch("bad.mcd");
    write(path, "mcd 1\ncables 1\ncable 1: X1@+1 Q\norder: 1L 1R\n");
    auto r = cli({"run", "--input", path.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 3, column 16") != std::string::npos);
    fs::remove(path);
  }
  SUBCASE("missing file") {
    CHECK(cli({"run", "--input", scratch("nope.mcd").string()}).code == 1);
  }
  SUBCASE("json trace written to a file") {
    const auto path = scratch("trace.jsonl");
    auto r = cli({"run", "--knot", "crown", "--format", "json", "--trace-out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.rfind(R"({"outcome":"Success")", 0) == 0);
    const std::string trace = slurp(path);
    CHECK(trace.rfind(R"({"step":0,"kind":"Reidemeister")", 0) == 0);
    fs::remove(path);
  }
  SUBCASE("noisy run with certain failure") {
    auto r = cli({"run", "--knot", "square", "--noise-fail", "1.0", "--seed", "3"});
    CHECK(r.code == 3);
    CHECK(r.out.find("Recovery") != std::string::npos);
  }
  SUBCASE("bad flags") {
    CHECK(cli({"run", "--knot", "square", "--format", "xml"}).code == 2);
    CHECK(cli({"run", "--knot", "square", "--noise-fail", "2"}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
  }
}

TEST_CASE("bench") {
  SUBCASE("noise-free, all tiers") {
    CorpusEnv env(CABLEGRAPH_CORPUS_DIR);
    auto r = cli({"bench"});
    CHECK(r.code == 0);
    CHECK(r.out.find("| all           | 16/16") != std::string::npos);
    CHECK(r.out.find("| all           | 6/6") != std::string::npos);
    CHECK(r.out.find("| all           | 8/8") != std::string::npos);
  }
  SUBCASE("tier filter") {
    CorpusEnv env(CABLEGRAPH_CORPUS_DIR);
    auto r = cli({"bench", "--tier", "3", "--format", "json"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
      CHECK(line.rfind(R"({"tier":3,)", 0) == 0);
      ++rows;
    }
    CHECK(rows == 9);
  }
  SUBCASE("certain failure") {
    CorpusEnv env(CABLEGRAPH_CORPUS_DIR);
    auto r = cli({"bench", "--tier", "1", "--noise-fail", "1.0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("| all           | 0/16") != std::string::npos);
  }
  SUBCASE("missing corpus") {
    CorpusEnv env(scratch("no_such_corpus").string());
    auto r = cli({"bench"});
    CHECK(r.code == 1);
    CHECK(r.err.find("corpus") != std::string::npos);
  }
}

TEST_CASE("oracle") {
  SUBCASE("empty diagram") {
    const auto path = scratch("empty.mcd");
    write(path, "mcd 1\ncables 0\norder:\n");
    auto r = cli({"oracle", "--input", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("reachable in 0") != std::string::npos);
    fs::remove(path);
  }
  SUBCASE("twist from the corpus") {
    auto r = cli({"oracle", "--input", corpus_file("tier1_twist_2.mcd")});
    CHECK(r.code == 0);
    CHECK(r.out.find("reachable in 2") != std::string::npos);
    CHECK(r.out.find("witness replay verified") != std::string::npos);
  }
  SUBCASE("unknown within the depth") {
    auto r = cli({"oracle", "--knot", "square", "--max-depth", "1"});
    CHECK(r.code == 5);
  }
  SUBCASE("oversize input") {
    auto r = cli({"oracle", "--random", "--seed", "1", "--cables", "3", "--crossings", "40"});
    CHECK(r.code == 1);
    CHECK(r.err.find("oracle bound") != std::string::npos);
  }
  SUBCASE("json report") {
    auto r = cli({"oracle", "--knot", "twist", "--n", "2", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind(R"({"status":"reachable","min_moves":2,)", 0) == 0);
  }
}
