#include "deacp/error.hpp"
#include "deacp/memory.hpp"
#include "deacp/regions.hpp"

#include "generators.hpp"
#include "oracles.hpp"
#include "suites.hpp"

#include <gtest/gtest.h>

namespace deacp {
namespace {

BitString B(const char *s) { return BitString::parse(s); }

TEST(Memory, Override)
{
    EXPECT_EQ(ims().override(1, B("11"))[1], B("11"));
    EXPECT_EQ(ims().override(1, B("11"))[0], BitString());
    EXPECT_EQ(ims().override(1, B("1")).override(1, B("0"))[1], B("0"));
}

TEST(Memory, EmptyContentsAreNotStored)
{
    MemState m = ims().override(4, B("1")).override(4, BitString());
    EXPECT_TRUE(m.all_empty());
    EXPECT_EQ(m, ims());
    EXPECT_NE(ims().override(0, B("0")), ims());
}

TEST(Memory, TextForms)
{
    MemState m = ims().override(3, B("01")).override(0, B("1101"));
    EXPECT_EQ(m.to_string(), "[0=1101, 3=01]");
    EXPECT_EQ(ims().to_string(), "[]");
    EXPECT_EQ(MemState::parse_file("# comment\n0=1101\n\n3=01\n5=e\n"), m);
    EXPECT_THROW(MemState::parse_file("x=1\n"), ParseError);
    EXPECT_THROW(MemState::parse_file("1=2\n"), ParseError);
}

TEST(Memory, MergeOne)
{
    MemState s = ims().override(0, B("1")).override(7, B("01"));
    std::vector<MemState> one{s};
    EXPECT_EQ(merge_n(one), s);
}

TEST(Memory, MergeTwo)
{
    std::vector<MemState> two{ims().override(0, B("1")).override(3, B("11")), ims().override(0, B("0"))};
    MemState m = merge_n(two);
    EXPECT_EQ(m[0], B("1"));
    EXPECT_EQ(m[1], B("0"));
    EXPECT_EQ(m[6], B("11"));
    EXPECT_THROW(merge_n(std::vector<MemState>{}), Error);
}

TEST(Memory, Split)
{
    auto three = split_n(ims(), 3);
    ASSERT_EQ(three.size(), 3u);
    for (auto &m : three) EXPECT_TRUE(m.all_empty());
    auto two = split_n(ims().override(5, B("1")), 2);
    EXPECT_EQ(two[1][2], B("1"));
    EXPECT_TRUE(two[0].all_empty());
    EXPECT_THROW(split_n(ims(), 0), Error);
}

TEST(MemoryProperty, MergeSplitInverse)
{
    testkit::Gen g(21);
    for (std::size_t n = 1; n <= 4; ++n)
        for (int k = 0; k < 300; ++k) {
            std::vector<MemState> parts;
            for (std::size_t i = 0; i < n; ++i) parts.push_back(testkit::memory(g, 6, 3));
            MemState m = merge_n(parts);
            ASSERT_EQ(split_n(m, n), parts);
            ASSERT_EQ(merge_n(split_n(m, n)), m);
            for (std::size_t i = 0; i < 6; ++i)
                for (std::size_t c = 1; c <= n; ++c)
                    ASSERT_EQ(m[testkit::oracle::interleave(n, c, i)], parts[c - 1][i]);
        }
}

TEST(Regions, Examples)
{
    Regions imm = regions(RamOp::parse("add:#1:#2:5"));
    EXPECT_FALSE(imm.input.unbounded);
    EXPECT_TRUE(imm.input.registers.empty());
    EXPECT_EQ(imm.output.registers, std::set<Natural>{5});

    Regions dir = regions(RamOp::parse("add:3:4:5"));
    EXPECT_EQ(dir.input.registers, (std::set<Natural>{3, 4}));
    EXPECT_EQ(dir.output.registers, std::set<Natural>{5});

    Regions ind = regions(RamOp::parse("mov:#1:@2"));
    EXPECT_EQ(ind.input.registers, std::set<Natural>{2});
    EXPECT_FALSE(ind.input.unbounded);
    EXPECT_TRUE(ind.output.unbounded);
}

TEST(Regions, Comparison)
{
    Regions r = regions(RamOp::parse("gt:1:#0"));
    EXPECT_EQ(r.input.registers, std::set<Natural>{1});
    EXPECT_TRUE(r.output.registers.empty());
    EXPECT_TRUE(regions(RamOp::parse("eq:@1:0")).input.unbounded);
}

TEST(RegionsProperty, OperationsRespectRegions)
{
    auto r = testkit::operation_regions(22, 10000);
    EXPECT_TRUE(r.ok()) << r.counterexample;
}

TEST(RegionsProperty, ComparisonsRespectRegions)
{
    auto r = testkit::comparison_regions(23, 10000);
    EXPECT_TRUE(r.ok()) << r.counterexample;
}

} // namespace
} // namespace deacp
