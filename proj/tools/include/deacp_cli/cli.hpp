#pragma once

#include "deacp/bits.hpp"
#include "deacp/complexity.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace deacp::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int no_halt = 2;
inline constexpr int exploded = 3;
inline constexpr int usage = 64;
inline constexpr int data = 65;
inline constexpr int no_input = 66;
} // namespace exit_code

// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// One argument tuple per line, words separated by blanks, "e" for the empty
// word. Blank lines and text after '#' are ignored.
std::vector<std::vector<BitString>> parse_inputs(const std::string &text);
std::string format_tuple(const std::vector<BitString> &args);

// Runs `command` once with every tuple on standard input and reads one
// answer per line: a bit string, "e", or "undef". Inputs without a usable
// answer make the returned oracle throw.
FunctionSpec external_oracle(const std::string &command, std::size_t arity,
                             const std::vector<std::vector<BitString>> &inputs);

} // namespace deacp::cli
