#include "deacp/regions.hpp"

namespace deacp {

namespace {

void read_source(const Operand &s, RegionInfo &in) {
    switch (s.mode) {
    case Operand::Mode::Imm: break;
    case Operand::Mode::Dir: in.registers.insert(s.value); break;
    case Operand::Mode::Ind:
        in.registers.insert(s.value);
        in.unbounded = true;
        break;
    }
}

void write_dest(const Operand &d, RegionInfo &in, RegionInfo &out) {
    if (d.mode == Operand::Mode::Dir) {
        out.registers.insert(d.value);
    } else {
        in.registers.insert(d.value);
        out.unbounded = true;
    }
}

} // namespace

Regions regions(const RamOp &o) {
    Regions r;
    if (auto *b = o.as<BinOp>()) {
        read_source(b->src1, r.input);
        read_source(b->src2, r.input);
        write_dest(b->dst, r.input, r.output);
    } else if (auto *u = o.as<UnOp>()) {
        read_source(u->src, r.input);
        write_dest(u->dst, r.input, r.output);
    } else if (auto *c = o.as<CmpOp>()) {
        read_source(c->src1, r.input);
        read_source(c->src2, r.input);
    } else if (o.as<Ini>()) {
        r.output.unbounded = true;
    } else if (auto *l = o.as<Load>()) {
        r.input.registers.insert(l->addr);
        r.input.unbounded = true;
        write_dest(l->dst, r.input, r.output);
        r.output.unbounded = true;
    } else if (auto *s = o.as<Store>()) {
        read_source(s->src, r.input);
        r.input.registers.insert(s->addr);
        r.input.unbounded = true;
        r.output.unbounded = true;
    }
    return r;
}

} // namespace deacp
