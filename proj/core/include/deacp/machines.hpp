#pragma once

#include "deacp/memory.hpp"
#include "deacp/ramops.hpp"
#include "deacp/terms.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace deacp {

// jmp:<comparison>:<target>
struct Jump {
    RamOp test;
    std::size_t target;
    friend bool operator==(const Jump &, const Jump &) = default;
};

struct Halt {
    friend bool operator==(const Halt &, const Halt &) = default;
};

using Instr = std::variant<RamOp, Jump, Halt>;

enum class MachineKind { BBRAM, SMBRAM };

struct Program {
    MachineKind kind = MachineKind::BBRAM;
    std::vector<Instr> instrs;

    std::size_t size() const { return instrs.size(); }
    friend bool operator==(const Program &, const Program &) = default;
};

std::string instr_to_string(const Instr &i);
Instr parse_instr(std::string_view text);

// One instruction per line; blank lines and text after ';' are ignored.
Program parse_program(std::string_view text, MachineKind kind);
std::string format_program(const Program &p);

// Throws ParseError (with the 1-based instruction index as line) when
// - a jump target lies outside 1..n,
// - an instruction is not allowed for the machine kind,
// - control can run past the last instruction: the last instruction must be
//   halt or a jump whose test holds in every state (both operands
//   immediate).
void validate_program(const Program &p);

bool is_constant_true(const RamOp &test);

Term proc_of_bbram(const Program &c);
Term proc_of_smbram_async(std::size_t i, const Program &c);
Term proc_of_smbram_sync(std::size_t i, const Program &c);

// process_1(C_1) || ... || process_n(C_n), and the ||sync analogue.
Term apramp_of(const std::vector<Program> &programs);
Term spramp_of(const std::vector<Program> &programs);

// Inverse of proc_of_bbram up to consistent renaming of variables.
Program program_of_ramp(const Term &t);

struct RunResult {
    bool halted = false;
    MemState memory;
    // Executed operations and jumps; halt is free.
    std::size_t steps = 0;
};

RunResult run_bbram(const Program &c, const MemState &sigma, std::size_t fuel);

} // namespace deacp
