#pragma once

#include "deacp/terms.hpp"

#include <cstddef>
#include <vector>

namespace deacp {

// Linear terms: delta, phi :-> eps, phi :-> alpha . X (alpha atomic or
// tau, X a recursion variable), and alternatives of those.
bool validate_linear(const Term &t);

// No cycle of tau-prefixed summands. Throws when a right-hand side is not
// linear.
bool validate_guarded(const RecSpec &spec);

bool validate_ramp(const Term &t);

// Returns the degree; throws Error naming the offending equation otherwise.
std::size_t validate_apramp(const Term &t);
std::size_t validate_spramp(const Term &t);

// RDP: replaces each free recursion variable Y of `body` that is defined by
// `spec` with rec Y {spec}.
Term close_over(const Term &body, const std::shared_ptr<const RecSpec> &spec);

// One-step unfolding of rec X {E} to the right-hand side for X, closed over
// E. Throws when `t` is not a recursion constant.
Term subst_rec(const Term &t);

// Components of a right-nested (or arbitrarily nested) composition.
std::vector<Term> flatten(const Term &t, BinaryOp op);

// Renames the variables of every recursion constant to V1, V2, ... in
// breadth-first order of first occurrence from the root, dropping equations
// that cannot be reached. Two terms that are identical up to consistent
// renaming have equal canonical forms.
Term canonical_rename(const Term &t);

} // namespace deacp
