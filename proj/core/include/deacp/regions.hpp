#pragma once

#include "deacp/ramops.hpp"

#include <set>

namespace deacp {

// Syntactic input/output region of an operator. `registers` lists the
// registers known to be involved; `unbounded` marks regions that depend on
// memory contents (indirect addressing, ini, shared-memory access).
struct RegionInfo {
    bool unbounded = false;
    std::set<Natural> registers;

    bool contains(const Natural &i) const { return unbounded || registers.count(i) > 0; }
    friend bool operator==(const RegionInfo &, const RegionInfo &) = default;
};

struct Regions {
    RegionInfo input;
    RegionInfo output;
};

Regions regions(const RamOp &o);

} // namespace deacp
