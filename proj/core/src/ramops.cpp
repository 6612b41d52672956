#include "deacp/ramops.hpp"

#include "deacp/error.hpp"

#include <array>
#include <vector>

namespace deacp {

namespace {

constexpr std::array<std::string_view, 4> kBinNames = {"add", "sub", "and", "or"};
constexpr std::array<std::string_view, 4> kUnNames = {"not", "shl", "shr", "mov"};
constexpr std::array<std::string_view, 3> kCmpNames = {"eq", "gt", "beq"};

std::vector<std::string_view> split_colons(std::string_view s) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto c = s.find(':');
        parts.push_back(s.substr(0, c));
        if (c == std::string_view::npos)
            break;
        s.remove_prefix(c + 1);
    }
    return parts;
}

Natural parse_natural(std::string_view s, std::string_view whole) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos)
        throw ParseError("bad number '" + std::string(s) + "' in operator '" + std::string(whole) + "'");
    return Natural(std::string(s));
}

Operand parse_operand(std::string_view s, std::string_view whole) {
    if (!s.empty() && s[0] == '#')
        return Operand::imm(parse_natural(s.substr(1), whole));
    if (!s.empty() && s[0] == '@')
        return Operand::ind(parse_natural(s.substr(1), whole));
    return Operand::dir(parse_natural(s, whole));
}

Operand parse_dst(std::string_view s, std::string_view whole) {
    Operand d = parse_operand(s, whole);
    if (d.mode == Operand::Mode::Imm)
        throw ParseError("immediate destination in '" + std::string(whole) + "'");
    return d;
}

Natural parse_indirect(std::string_view s, std::string_view whole) {
    if (s.empty() || s[0] != '@')
        throw ParseError("expected indirect address '@i' in '" + std::string(whole) + "'");
    return parse_natural(s.substr(1), whole);
}

template <class Names>
int index_of(const Names &names, std::string_view s) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == s)
            return static_cast<int>(i);
    return -1;
}

void check_dst(const Operand &d) {
    if (d.mode == Operand::Mode::Imm)
        throw Error("immediate destination");
}

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

std::size_t hash_operand(const Operand &o) {
    return mix(static_cast<std::size_t>(o.mode), hash_value(o.value));
}

} // namespace

std::string Operand::to_string() const {
    switch (mode) {
    case Mode::Imm: return "#" + value.str();
    case Mode::Dir: return value.str();
    case Mode::Ind: return "@" + value.str();
    }
    return {};
}

RamOp::RamOp(Variant v) : v_(std::move(v)) {
    if (auto *b = std::get_if<BinOp>(&v_))
        check_dst(b->dst);
    else if (auto *u = std::get_if<UnOp>(&v_))
        check_dst(u->dst);
    else if (auto *l = std::get_if<Load>(&v_))
        check_dst(l->dst);
    else if (auto *i = std::get_if<Ini>(&v_); i && i->memory == 0)
        throw Error("memory numbers start at 1");
}

RamOp RamOp::parse(std::string_view text) {
    const auto parts = split_colons(text);
    const auto name = parts[0];
    if (int k = index_of(kBinNames, name); k >= 0) {
        if (parts.size() != 4)
            throw ParseError("'" + std::string(name) + "' takes src1:src2:dst in '" + std::string(text) + "'");
        return RamOp(BinOp{static_cast<BinName>(k), parse_operand(parts[1], text),
                           parse_operand(parts[2], text), parse_dst(parts[3], text)});
    }
    if (int k = index_of(kUnNames, name); k >= 0) {
        if (parts.size() != 3)
            throw ParseError("'" + std::string(name) + "' takes src:dst in '" + std::string(text) + "'");
        return RamOp(UnOp{static_cast<UnName>(k), parse_operand(parts[1], text), parse_dst(parts[2], text)});
    }
    if (int k = index_of(kCmpNames, name); k >= 0) {
        if (parts.size() != 3)
            throw ParseError("'" + std::string(name) + "' takes src1:src2 in '" + std::string(text) + "'");
        return RamOp(CmpOp{static_cast<CompareOp>(k), parse_operand(parts[1], text), parse_operand(parts[2], text)});
    }
    if (name == "ini") {
        if (parts.size() != 2 || parts[1].empty() || parts[1][0] != '#')
            throw ParseError("expected 'ini:#i' in '" + std::string(text) + "'");
        const Natural i = parse_natural(parts[1].substr(1), text);
        if (i == 0)
            throw ParseError("memory numbers start at 1");
        return RamOp(Ini{static_cast<std::size_t>(i)});
    }
    if (name == "loa") {
        if (parts.size() != 3)
            throw ParseError("expected 'loa:@i:dst' in '" + std::string(text) + "'");
        return RamOp(Load{parse_indirect(parts[1], text), parse_dst(parts[2], text)});
    }
    if (name == "sto") {
        if (parts.size() != 3)
            throw ParseError("expected 'sto:src:@i' in '" + std::string(text) + "'");
        return RamOp(Store{parse_operand(parts[1], text), parse_indirect(parts[2], text)});
    }
    throw ParseError("unknown operator '" + std::string(text) + "'");
}

std::string RamOp::to_string() const {
    struct Printer {
        std::string operator()(const BinOp &b) const {
            return std::string(kBinNames[static_cast<int>(b.name)]) + ":" + b.src1.to_string() + ":" +
                   b.src2.to_string() + ":" + b.dst.to_string();
        }
        std::string operator()(const UnOp &u) const {
            return std::string(kUnNames[static_cast<int>(u.name)]) + ":" + u.src.to_string() + ":" +
                   u.dst.to_string();
        }
        std::string operator()(const CmpOp &c) const {
            return std::string(kCmpNames[static_cast<int>(c.name)]) + ":" + c.src1.to_string() + ":" +
                   c.src2.to_string();
        }
        std::string operator()(const Ini &i) const { return "ini:#" + std::to_string(i.memory); }
        std::string operator()(const Load &l) const { return "loa:@" + l.addr.str() + ":" + l.dst.to_string(); }
        std::string operator()(const Store &s) const { return "sto:" + s.src.to_string() + ":@" + s.addr.str(); }
    };
    return std::visit(Printer{}, v_);
}

bool RamOp::is_direct_only() const {
    auto direct = [](const Operand &o) { return o.mode != Operand::Mode::Ind; };
    if (auto *b = as<BinOp>())
        return direct(b->src1) && direct(b->src2) && direct(b->dst);
    if (auto *u = as<UnOp>())
        return direct(u->src) && direct(u->dst);
    if (auto *c = as<CmpOp>())
        return direct(c->src1) && direct(c->src2);
    return false;
}

std::size_t RamOp::hash() const {
    std::size_t h = v_.index();
    if (auto *b = as<BinOp>()) {
        h = mix(h, static_cast<std::size_t>(b->name));
        h = mix(mix(mix(h, hash_operand(b->src1)), hash_operand(b->src2)), hash_operand(b->dst));
    } else if (auto *u = as<UnOp>()) {
        h = mix(mix(mix(h, static_cast<std::size_t>(u->name)), hash_operand(u->src)), hash_operand(u->dst));
    } else if (auto *c = as<CmpOp>()) {
        h = mix(mix(mix(h, static_cast<std::size_t>(c->name)), hash_operand(c->src1)), hash_operand(c->src2));
    } else if (auto *i = as<Ini>()) {
        h = mix(h, i->memory);
    } else if (auto *l = as<Load>()) {
        h = mix(mix(h, hash_value(l->addr)), hash_operand(l->dst));
    } else if (auto *s = as<Store>()) {
        h = mix(mix(h, hash_operand(s->src)), hash_value(s->addr));
    }
    return h;
}

BitString src_val(const MemState &sigma, const Operand &s) {
    switch (s.mode) {
    case Operand::Mode::Imm: return ntob(s.value);
    case Operand::Mode::Dir: return sigma[s.value];
    case Operand::Mode::Ind: return sigma[bton(sigma[s.value])];
    }
    return {};
}

Natural dst_reg(const MemState &sigma, const Operand &d) {
    switch (d.mode) {
    case Operand::Mode::Imm: throw Error("immediate destination");
    case Operand::Mode::Dir: return d.value;
    case Operand::Mode::Ind: return bton(sigma[d.value]);
    }
    return 0;
}

MemState apply_op(const RamOp &o, const MemState &sigma) {
    if (auto *b = o.as<BinOp>()) {
        const BitString v1 = src_val(sigma, b->src1);
        const BitString v2 = src_val(sigma, b->src2);
        BitString r;
        switch (b->name) {
        case BinName::Add: r = bin_arith(ArithOp::Add, v1, v2); break;
        case BinName::Sub: r = bin_arith(ArithOp::Sub, v1, v2); break;
        case BinName::And: r = bin_logic(LogicOp::And, v1, v2); break;
        case BinName::Or: r = bin_logic(LogicOp::Or, v1, v2); break;
        }
        return sigma.override(dst_reg(sigma, b->dst), std::move(r));
    }
    if (auto *u = o.as<UnOp>()) {
        const BitString v = src_val(sigma, u->src);
        BitString r;
        switch (u->name) {
        case UnName::Not: r = bnot(v); break;
        case UnName::Shl: r = shift(ShiftOp::Shl, v); break;
        case UnName::Shr: r = shift(ShiftOp::Shr, v); break;
        case UnName::Mov: r = v; break;
        }
        return sigma.override(dst_reg(sigma, u->dst), std::move(r));
    }
    throw Error("apply_op: '" + o.to_string() + "' is not a single-memory operation");
}

Bit apply_prop(const RamOp &p, const MemState &sigma) {
    auto *c = p.as<CmpOp>();
    if (!c)
        throw Error("apply_prop: '" + p.to_string() + "' is not a comparison");
    return compare(c->name, src_val(sigma, c->src1), src_val(sigma, c->src2));
}

MemState apply_shared(const RamOp &o, const MemState &priv, const MemState &shared) {
    if (auto *l = o.as<Load>())
        return priv.override(dst_reg(priv, l->dst), shared[bton(priv[l->addr])]);
    if (auto *s = o.as<Store>())
        return shared.override(bton(priv[s->addr]), src_val(priv, s->src));
    throw Error("apply_shared: '" + o.to_string() + "' is not a load or store");
}

MemState apply_ini(std::size_t i) {
    if (i == 0)
        throw Error("memory numbers start at 1");
    return ims().override(0, ntob(i));
}

} // namespace deacp
