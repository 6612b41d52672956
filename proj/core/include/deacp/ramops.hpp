#pragma once

#include "deacp/bits.hpp"
#include "deacp/memory.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

namespace deacp {

// Source/destination operand: `#n` immediate, `n` direct, `@n` indirect.
struct Operand {
    enum class Mode { Imm, Dir, Ind };
    Mode mode = Mode::Dir;
    Natural value;

    static Operand imm(Natural n) { return {Mode::Imm, std::move(n)}; }
    static Operand dir(Natural i) { return {Mode::Dir, std::move(i)}; }
    static Operand ind(Natural i) { return {Mode::Ind, std::move(i)}; }

    std::string to_string() const;
    friend bool operator==(const Operand &, const Operand &) = default;
};

enum class BinName { Add, Sub, And, Or };
enum class UnName { Not, Shl, Shr, Mov };

struct BinOp {
    BinName name;
    Operand src1, src2, dst;
    friend bool operator==(const BinOp &, const BinOp &) = default;
};
struct UnOp {
    UnName name;
    Operand src, dst;
    friend bool operator==(const UnOp &, const UnOp &) = default;
};
struct CmpOp {
    CompareOp name;
    Operand src1, src2;
    friend bool operator==(const CmpOp &, const CmpOp &) = default;
};
// ini:#i, i >= 1.
struct Ini {
    std::size_t memory;
    friend bool operator==(const Ini &, const Ini &) = default;
};
// loa:@addr:dst -- addr is a private register holding a shared address.
struct Load {
    Natural addr;
    Operand dst;
    friend bool operator==(const Load &, const Load &) = default;
};
// sto:src:@addr
struct Store {
    Operand src;
    Natural addr;
    friend bool operator==(const Store &, const Store &) = default;
};

// One operator of the RAM (and shared-memory) operator set.
class RamOp {
public:
    using Variant = std::variant<BinOp, UnOp, CmpOp, Ini, Load, Store>;

    RamOp(Variant v);

    // Canonical syntax, e.g. "add:#1:@2:5", "mov:3:@0", "gt:1:#0",
    // "ini:#2", "loa:@1:4", "sto:#7:@1".
    static RamOp parse(std::string_view text);
    std::string to_string() const;

    const Variant &get() const { return v_; }
    template <class T> const T *as() const { return std::get_if<T>(&v_); }

    bool is_comparison() const { return std::holds_alternative<CmpOp>(v_); }
    // Single-memory, non-comparison operators (RAMOp without RAMCOp).
    bool is_basic_operation() const {
        return std::holds_alternative<BinOp>(v_) || std::holds_alternative<UnOp>(v_);
    }
    bool is_shared() const {
        return std::holds_alternative<Load>(v_) || std::holds_alternative<Store>(v_);
    }
    // True when no operand uses indirect addressing (ini/load/store are
    // never direct-only).
    bool is_direct_only() const;

    std::size_t hash() const;
    friend bool operator==(const RamOp &, const RamOp &) = default;

private:
    Variant v_;
};

BitString src_val(const MemState &sigma, const Operand &s);
Natural dst_reg(const MemState &sigma, const Operand &d);

// Interpretation of a BinOp/UnOp. All valuations read the pre-state.
MemState apply_op(const RamOp &o, const MemState &sigma);
// Interpretation of a CmpOp.
Bit apply_prop(const RamOp &p, const MemState &sigma);
// Load returns the new private memory, Store the new shared memory.
MemState apply_shared(const RamOp &o, const MemState &priv, const MemState &shared);
MemState apply_ini(std::size_t i);

} // namespace deacp
