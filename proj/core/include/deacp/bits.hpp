#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace deacp {

using Natural = boost::multiprecision::cpp_int;

enum class Bit : unsigned char { Zero = 0, One = 1 };

// Bit string, least significant bit first. Leading (high-index) zeros are
// kept: they matter for `beq` and for the logical operations.
class BitString {
public:
    BitString() = default;

    // Parses the literal syntax: a nonempty string over {0,1} written
    // LSB-first, or "e" for the empty string.
    static BitString parse(std::string_view text);
    static BitString from_bits(std::string_view zeros_and_ones);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    Bit operator[](std::size_t i) const { return bits_[i] == '1' ? Bit::One : Bit::Zero; }

    void push_back(Bit b) { bits_.push_back(b == Bit::One ? '1' : '0'); }

    // "e" for the empty string.
    std::string to_string() const { return bits_.empty() ? "e" : bits_; }
    const std::string &raw() const { return bits_; }

    bool has_leading_zero() const { return !bits_.empty() && bits_.back() == '0'; }

    friend bool operator==(const BitString &, const BitString &) = default;
    friend auto operator<=>(const BitString &, const BitString &) = default;

private:
    std::string bits_;
};

BitString ntob(const Natural &n);
Natural bton(const BitString &w);

enum class ArithOp { Add, Sub };
enum class LogicOp { And, Or };
enum class ShiftOp { Shl, Shr };
enum class CompareOp { Eq, Gt, Beq };

BitString bin_arith(ArithOp op, const BitString &w1, const BitString &w2);
BitString bin_logic(LogicOp op, const BitString &w1, const BitString &w2);
BitString bnot(const BitString &w);
BitString shift(ShiftOp op, const BitString &w);
Bit compare(CompareOp op, const BitString &w1, const BitString &w2);

std::size_t hash_value(const Natural &n);

} // namespace deacp

template <>
struct std::hash<deacp::BitString> {
    std::size_t operator()(const deacp::BitString &w) const noexcept {
        return std::hash<std::string>{}(w.raw());
    }
};
