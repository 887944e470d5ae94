#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cablegraph {

// Exit codes shared by every command.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;         // parse/validate failure, missing corpus, oversize oracle input
inline constexpr int usage = 2;           // bad flags, unknown knot class
inline constexpr int budget_exceeded = 3;
inline constexpr int stuck = 4;
inline constexpr int oracle_unknown = 5;
inline constexpr int noise_stall = 6;
inline constexpr int oracle_unreachable = 7;
}  // namespace exit_code

// Largest potential the oracle command accepts.
inline constexpr unsigned long long kOracleBound = 12;

// Runs `cablegraph <args...>` (program name excluded) against the given streams.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cablegraph
