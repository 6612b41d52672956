#pragma once

// Hand-rolled random generators for property tests. Every generator draws
// from a caller-owned Gen so that runs are reproducible from a seed.

#include "deacp/machines.hpp"
#include "deacp/memory.hpp"
#include "deacp/ramops.hpp"
#include "deacp/terms.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace deacp::testkit {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    // Uniform in [0, n).
    std::size_t below(std::size_t n);
    // Uniform in [lo, hi].
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
    bool chance(double p);
    template <class T> const T &pick(const std::vector<T> &xs) { return xs[below(xs.size())]; }

private:
    std::mt19937_64 rng_;
};

BitString bitstring(Gen &g, std::size_t max_len);
MemState memory(Gen &g, std::size_t registers, std::size_t max_len);

// Operators over registers 0..registers-1.
Operand source_operand(Gen &g, std::size_t registers, bool direct_only);
Operand destination_operand(Gen &g, std::size_t registers, bool direct_only);
RamOp basic_operation(Gen &g, std::size_t registers, bool direct_only);
RamOp comparison(Gen &g, std::size_t registers, bool direct_only);
RamOp shared_operation(Gen &g, std::size_t registers);

struct ProgramShape {
    std::size_t max_length = 8;
    std::size_t registers = 6;
    bool direct_only = false;
    MachineKind kind = MachineKind::BBRAM;
};
// A program that passes validate_program.
Program program(Gen &g, const ProgramShape &shape);
// Straight-line: operations followed by halt.
Program straight_line(Gen &g, std::size_t ops, std::size_t registers, MachineKind kind);

// Small fixed pools shared by the term generators.
const std::vector<MemState> &literal_pool();
extern const std::vector<std::string> action_names;
extern const std::vector<std::string> flexible_names;

struct TermShape {
    std::size_t depth = 3;
    // Data and conditions may read flexible variables; such terms are only
    // meaningful under an evaluation operator.
    bool flexible = false;
    // Allow the merge operators and encapsulation/abstraction/projection/
    // renaming.
    bool operators = true;
};

DataExpr data_expr(Gen &g, bool flexible);
Cond condition(Gen &g, std::size_t depth, bool flexible);
// tau, plain, data or assignment action (never eps or delta).
Term atomic_action(Gen &g, bool flexible);
Term process_term(Gen &g, const TermShape &shape);

ActionSet action_set(Gen &g, bool allow_all_with_tau);
RenameMap rename_map(Gen &g);
Valuation valuation(Gen &g);

// A guarded linear recursive specification over variables V1..Vk with
// closed conditions and atomic actions. The returned term is rec V1 {...}.
// With `any_tau`, tau edges may point anywhere and the result need not be
// guarded.
Term guarded_linear(Gen &g, std::size_t equations, bool any_tau = false);

} // namespace deacp::testkit
