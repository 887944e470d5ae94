#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "cablegraph/diagram.hpp"

namespace cablegraph {

// Malformed or invalid MCD input. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string reason);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string reason_;
};

/// Reads the line-oriented MCD format:
///
///   mcd 1
///   cables 2
///   cable 1: X1@+1 X2@-1
///   cable 2: X1@-1 X2@+1
///   order: 1L 2L 2R 1R
///   terminated: 3            (optional)
///
/// Lines starting with '#' are comments. Crossing arity is the number of
/// visits. The result must pass validate(); violations are reported at the
/// first token that mentions the offending crossing or endpoint.
Diagram parse_mcd(std::string_view text);

// Canonical text: cables by id, visits left to right, trailing newline.
std::string serialize_mcd(const Diagram& diagram);

Diagram read_mcd_file(const std::string& path);
void write_mcd_file(const std::string& path, const Diagram& diagram);

}  // namespace cablegraph
