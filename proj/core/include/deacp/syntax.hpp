#pragma once

#include "deacp/terms.hpp"

#include <string>
#include <string_view>

namespace deacp {

// Canonical text syntax. Binding strength, strongest first:
//   .            sequential composition
//   || ||L | ||sync   merges (right-nested)
//   phi :-> t    guarded command
//   +            alternative composition
// Printing then parsing is the identity on terms.

Term parse_term(std::string_view text);
Cond parse_cond(std::string_view text);
DataExpr parse_data(std::string_view text);
ActionSet parse_action_set(std::string_view text);

std::string to_string(const Term &t);
std::string to_string(const Cond &c);
std::string to_string(const DataExpr &e);

} // namespace deacp
