#pragma once

#include "deacp/terms.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace deacp::testkit {

// Integers are held as memories with the value in register 0.
MemState int_memory(std::uint64_t value);

// d := i . ((d >= j = 1) :-> d := d - j + (d >= j = 0) :-> d := j - d)
Term absolute_difference();

// q := 0 . r := i . rec Q {Q = (r >= j = 1) :-> q := q + 1 . R + (r >= j = 0) :-> eps,
//                          R = True :-> r := r - j . Q}
Term division();

Valuation ij_valuation(std::uint64_t i, std::uint64_t j);

// True :-> a1 . (True :-> a2 . ( ... (True :-> eps)))
Term assignment_chain(const std::vector<std::pair<std::string, std::uint64_t>> &steps);

} // namespace deacp::testkit
