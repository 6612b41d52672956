#pragma once

#include "deacp/bits.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace deacp {

// RAM memory state: register number -> bit string. Only finitely many
// registers are non-empty; unset registers read as the empty string. Empty
// contents are never stored, so structural equality is state equality.
class MemState {
public:
    using Registers = std::map<Natural, BitString>;

    MemState() = default;

    const BitString &operator[](const Natural &i) const;
    MemState override(const Natural &i, BitString w) const;

    const Registers &registers() const { return regs_; }
    bool all_empty() const { return regs_.empty(); }

    // Text form: "[0=1101, 3=01]"; "[]" is the all-empty state.
    std::string to_string() const;
    // Memory-file format: one "index=bitstring" per line, '#' comments.
    static MemState parse_file(std::string_view text);

    std::size_t hash() const;

    friend bool operator==(const MemState &, const MemState &) = default;
    friend auto operator<=>(const MemState &, const MemState &) = default;

private:
    Registers regs_;
};

// The all-empty state.
inline MemState ims() { return {}; }

MemState override(const MemState &sigma, const Natural &i, BitString w);

// Interleaves n memories: result(n*i + k - 1) = memories[k-1](i).
MemState merge_n(std::span<const MemState> memories);
// Inverse of merge_n.
std::vector<MemState> split_n(const MemState &sigma, std::size_t n);

} // namespace deacp

template <>
struct std::hash<deacp::MemState> {
    std::size_t operator()(const deacp::MemState &m) const noexcept { return m.hash(); }
};
