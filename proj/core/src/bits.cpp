#include "deacp/bits.hpp"

#include "deacp/error.hpp"

#include <algorithm>

namespace deacp {

BitString BitString::parse(std::string_view text) {
    if (text == "e")
        return {};
    if (text.empty())
        throw ParseError("empty bit-string literal (use 'e' for the empty string)");
    return from_bits(text);
}

BitString BitString::from_bits(std::string_view zeros_and_ones) {
    BitString w;
    for (char c : zeros_and_ones) {
        if (c != '0' && c != '1')
            throw ParseError("invalid bit '" + std::string(1, c) + "' in bit string");
        w.bits_.push_back(c);
    }
    return w;
}

BitString ntob(const Natural &n) {
    BitString w;
    if (n <= 1) {
        w.push_back(n == 1 ? Bit::One : Bit::Zero);
        return w;
    }
    Natural rest = n;
    while (rest > 0) {
        w.push_back(bit_test(rest, 0) ? Bit::One : Bit::Zero);
        rest >>= 1;
    }
    return w;
}

Natural bton(const BitString &w) {
    Natural n = 0;
    for (std::size_t i = w.size(); i-- > 0;) {
        n <<= 1;
        if (w[i] == Bit::One)
            n |= 1;
    }
    return n;
}

BitString bin_arith(ArithOp op, const BitString &w1, const BitString &w2) {
    const Natural a = bton(w1);
    const Natural b = bton(w2);
    if (op == ArithOp::Add)
        return ntob(a + b);
    return ntob(a > b ? Natural(a - b) : Natural(0));
}

BitString bin_logic(LogicOp op, const BitString &w1, const BitString &w2) {
    // The shorter operand is padded with zeros.
    BitString out;
    const std::size_t n = std::max(w1.size(), w2.size());
    for (std::size_t i = 0; i < n; ++i) {
        const bool b1 = i < w1.size() && w1[i] == Bit::One;
        const bool b2 = i < w2.size() && w2[i] == Bit::One;
        const bool r = op == LogicOp::And ? (b1 && b2) : (b1 || b2);
        out.push_back(r ? Bit::One : Bit::Zero);
    }
    return out;
}

BitString bnot(const BitString &w) {
    BitString out;
    for (std::size_t i = 0; i < w.size(); ++i)
        out.push_back(w[i] == Bit::One ? Bit::Zero : Bit::One);
    return out;
}

BitString shift(ShiftOp op, const BitString &w) {
    if (w.empty())
        return w;
    if (op == ShiftOp::Shl)
        return BitString::from_bits("0" + w.raw());
    return BitString::from_bits(std::string_view(w.raw()).substr(1));
}

Bit compare(CompareOp op, const BitString &w1, const BitString &w2) {
    bool r = false;
    switch (op) {
    case CompareOp::Eq: r = bton(w1) == bton(w2); break;
    case CompareOp::Gt: r = bton(w1) > bton(w2); break;
    case CompareOp::Beq: r = w1 == w2; break;
    }
    return r ? Bit::One : Bit::Zero;
}

std::size_t hash_value(const Natural &n) {
    std::size_t h = n.sign() < 0 ? 0x9e3779b9u : 0;
    Natural rest = n;
    while (rest > 0) {
        h = h * 1099511628211ull ^ static_cast<std::size_t>(static_cast<unsigned long long>(rest & 0xffffffffffffffffull));
        rest >>= 64;
    }
    return h;
}

} // namespace deacp
