#include "cablegraph/mcd.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace cablegraph {

ParseError::ParseError(std::size_t line, std::size_t column, std::string reason)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + reason),
      line_(line),
      column_(column),
      reason_(std::move(reason)) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column = 0;  // 1-based
};

struct Line {
  std::size_t number = 0;
  std::string_view text;
};

std::vector<Token> split_tokens(std::string_view text, std::size_t offset = 0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    if (i >= text.size()) break;
    std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
    out.push_back({text.substr(start, i - start), offset + start + 1});
  }
  return out;
}

template <class Int>
std::optional<Int> parse_uint(std::string_view s) {
  if (s.empty()) return std::nullopt;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  Int value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

class Parser {
 public:
  explicit Parser(std::string_view text) {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(pos, end - pos);
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      ++number;
      std::size_t first = raw.find_first_not_of(" \t");
      if (first != std::string_view::npos && raw[first] != '#') lines_.push_back({number, raw});
      if (end == text.size()) break;
      pos = end + 1;
    }
    last_line_ = number;
  }

  Diagram run() {
    parse_header();
    parse_cable_count();
    for (std::size_t i = 0; i < expected_cables_; ++i) parse_cable();
    parse_order();
    if (next_ < lines_.size() && starts_with_keyword(lines_[next_], "terminated:")) parse_terminated();
    if (next_ < lines_.size()) {
      const auto& line = lines_[next_];
      auto toks = split_tokens(line.text);
      fail(line.number, toks.front().column, "unexpected line '" + std::string(toks.front().text) + "'");
    }
    Diagram diagram(std::move(cables_), std::move(order_), std::move(terminated_));
    reject_invalid(diagram);
    return diagram;
  }

 private:
  [[noreturn]] static void fail(std::size_t line, std::size_t column, const std::string& reason) {
    throw ParseError(line, column, reason);
  }

  const Line& take(const char* what) {
    if (next_ >= lines_.size()) fail(last_line_, 1, std::string("unexpected end of input, expected ") + what);
    return lines_[next_++];
  }

  static bool starts_with_keyword(const Line& line, std::string_view keyword) {
    auto toks = split_tokens(line.text);
    return !toks.empty() && toks.front().text.substr(0, keyword.size()) == keyword;
  }

  void parse_header() {
    const auto& line = take("'mcd 1' header");
    auto toks = split_tokens(line.text);
    if (toks[0].text != "mcd") fail(line.number, toks[0].column, "expected 'mcd' header");
    if (toks.size() < 2) fail(line.number, toks[0].column + 3, "missing format version");
    if (toks[1].text != "1") fail(line.number, toks[1].column, "unsupported format version '" + std::string(toks[1].text) + "'");
    if (toks.size() > 2) fail(line.number, toks[2].column, "trailing text after header");
  }

  void parse_cable_count() {
    const auto& line = take("'cables <n>'");
    auto toks = split_tokens(line.text);
    if (toks[0].text != "cables") fail(line.number, toks[0].column, "expected 'cables <n>'");
    if (toks.size() != 2) fail(line.number, toks[0].column, "expected exactly one cable count");
    auto n = parse_uint<std::size_t>(toks[1].text);
    if (!n) fail(line.number, toks[1].column, "cable count must be a non-negative integer");
    expected_cables_ = *n;
  }

  void parse_cable() {
    const auto& line = take("'cable <id>:' line");
    auto toks = split_tokens(line.text);
    if (toks[0].text != "cable") fail(line.number, toks[0].column, "expected 'cable <id>:'");
    if (toks.size() < 2 || toks[1].text.empty() || toks[1].text.back() != ':') {
      fail(line.number, toks.size() < 2 ? toks[0].column : toks[1].column, "expected 'cable <id>:'");
    }
    auto id = parse_uint<CableId>(toks[1].text.substr(0, toks[1].text.size() - 1));
    if (!id) fail(line.number, toks[1].column, "cable id must be a non-negative integer");
    if (cables_.contains(*id)) fail(line.number, toks[1].column, "duplicate cable " + std::to_string(*id));
    auto& visits = cables_[*id];
    cable_lines_[*id] = {line.number, toks[1].column};
    for (std::size_t t = 2; t < toks.size(); ++t) {
      const auto& tok = toks[t];
      const auto at = tok.text.find('@');
      if (tok.text.size() < 4 || tok.text[0] != 'X' || at == std::string_view::npos) {
        fail(line.number, tok.column, "malformed visit token '" + std::string(tok.text) + "'");
      }
      auto crossing = parse_uint<CrossingId>(tok.text.substr(1, at - 1));
      if (!crossing) fail(line.number, tok.column + 1, "crossing id must be a non-negative integer");
      std::string_view depth_text = tok.text.substr(at + 1);
      std::optional<int> depth;
      if (depth_text == "+1") {
        depth = 1;
      } else if (depth_text.size() >= 2 && depth_text[0] == '-') {
        auto m = parse_uint<int>(depth_text.substr(1));
        if (m && *m >= 1) depth = -*m;
      }
      if (!depth) fail(line.number, tok.column + at + 1, "depth must be '+1' or '-m' with m >= 1");
      visits.push_back({*crossing, *depth});
      crossing_sites_.try_emplace(*crossing, std::pair{line.number, tok.column});
    }
  }

  void parse_order() {
    const auto& line = take("'order:' line");
    auto toks = split_tokens(line.text);
    if (toks[0].text != "order:") fail(line.number, toks[0].column, "expected 'order:'");
    order_line_ = {line.number, toks[0].column};
    for (std::size_t t = 1; t < toks.size(); ++t) {
      const auto& tok = toks[t];
      const char side = tok.text.empty() ? '\0' : tok.text.back();
      auto cable = parse_uint<CableId>(tok.text.substr(0, tok.text.empty() ? 0 : tok.text.size() - 1));
      if (!cable || (side != 'L' && side != 'R')) {
        fail(line.number, tok.column, "malformed endpoint '" + std::string(tok.text) + "'");
      }
      EndpointRef endpoint{*cable, side == 'L' ? Side::Left : Side::Right};
      order_.push_back(endpoint);
      endpoint_sites_.try_emplace(endpoint, std::pair{line.number, tok.column});
    }
  }

  void parse_terminated() {
    const auto& line = take("'terminated:' line");
    auto toks = split_tokens(line.text);
    terminated_line_ = {line.number, toks[0].column};
    if (toks[0].text != "terminated:") fail(line.number, toks[0].column, "expected 'terminated:'");
    for (std::size_t t = 1; t < toks.size(); ++t) {
      auto cable = parse_uint<CableId>(toks[t].text);
      if (!cable) fail(line.number, toks[t].column, "cable id must be a non-negative integer");
      terminated_.push_back(*cable);
    }
  }

  void reject_invalid(const Diagram& diagram) const {
    auto report = validate(diagram);
    if (report.ok()) return;
    const Violation& v = report.violations.front();
    std::pair<std::size_t, std::size_t> site = order_line_;
    if (v.subject.starts_with("X")) {
      auto id = parse_uint<CrossingId>(std::string_view(v.subject).substr(1));
      if (id && crossing_sites_.contains(*id)) site = crossing_sites_.at(*id);
    } else if (v.subject.starts_with("cable ")) {
      auto id = parse_uint<CableId>(std::string_view(v.subject).substr(6));
      if (v.kind.starts_with("terminated") || v.kind.starts_with("duplicate terminated")) {
        site = terminated_line_;
      } else if (id && cable_lines_.contains(*id)) {
        site = cable_lines_.at(*id);
      }
    } else {
      for (const auto& [endpoint, where] : endpoint_sites_) {
        if (to_string(endpoint) == v.subject) site = where;
      }
    }
    std::string reason = v.kind + " at " + v.subject;
    if (v.kind == "arity below 2") reason = "crossing " + v.subject + " is referenced only once (undefined crossing)";
    if (!v.detail.empty() && v.kind != "arity below 2") reason += " (" + v.detail + ")";
    fail(site.first, site.second, reason);
  }

  std::vector<Line> lines_;
  std::size_t next_ = 0;
  std::size_t last_line_ = 0;
  std::size_t expected_cables_ = 0;
  Diagram::CableMap cables_;
  std::vector<EndpointRef> order_;
  std::vector<CableId> terminated_;
  std::map<CrossingId, std::pair<std::size_t, std::size_t>> crossing_sites_;
  std::map<CableId, std::pair<std::size_t, std::size_t>> cable_lines_;
  std::map<EndpointRef, std::pair<std::size_t, std::size_t>> endpoint_sites_;
  std::pair<std::size_t, std::size_t> order_line_{1, 1};
  std::pair<std::size_t, std::size_t> terminated_line_{1, 1};
};

}  // namespace

Diagram parse_mcd(std::string_view text) { return Parser(text).run(); }

std::string serialize_mcd(const Diagram& diagram) {
  std::ostringstream out;
  out << "mcd 1\n";
  out << "cables " << diagram.live_cable_count() << '\n';
  for (const auto& [cable, visits] : diagram.cables()) {
    out << "cable " << cable << ':';
    for (const auto& v : visits) {
      out << " X" << v.crossing << '@' << (v.depth == 1 ? "+1" : std::to_string(v.depth));
    }
    out << '\n';
  }
  out << "order:";
  for (const auto& endpoint : diagram.endpoint_order()) out << ' ' << to_string(endpoint);
  out << '\n';
  if (!diagram.terminated().empty()) {
    out << "terminated:";
    for (CableId cable : diagram.terminated()) out << ' ' << cable;
    out << '\n';
  }
  return out.str();
}

Diagram read_mcd_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_mcd(buffer.str());
}

void write_mcd_file(const std::string& path, const Diagram& diagram) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << serialize_mcd(diagram);
  if (!out) throw Error("failed writing " + path);
}

}  // namespace cablegraph
