#include "deacp/error.hpp"
#include "deacp/machines.hpp"
#include "deacp/shapes.hpp"
#include "deacp/syntax.hpp"

#include "generators.hpp"
#include "suites.hpp"

#include <gtest/gtest.h>

namespace deacp {
namespace {

BitString B(const char *s) { return BitString::parse(s); }
Program bbram(const char *s) { return parse_program(s, MachineKind::BBRAM); }
Program smbram(const char *s) { return parse_program(s, MachineKind::SMBRAM); }

std::string parse_error(const char *s, MachineKind k = MachineKind::BBRAM)
{
    try {
        parse_program(s, k);
    } catch (const Error &e) {
        return e.what();
    }
    return "no error";
}

const char *kDivision = "mov:#0:3\nmov:1:4\njmp:gt:2:4:7\nadd:3:#1:3\nsub:4:2:4\njmp:eq:#0:#0:3\nhalt\n";

TEST(Programs, Parse)
{
    EXPECT_EQ(bbram("halt").instrs, std::vector<Instr>{Halt{}});
    Program loop = bbram("jmp:eq:0:#0:1\nhalt");
    ASSERT_EQ(loop.size(), 2u);
    EXPECT_EQ(std::get<Jump>(loop.instrs[0]).target, 1u);
    EXPECT_EQ(format_program(loop), "jmp:eq:0:#0:1\nhalt\n");
    EXPECT_EQ(bbram("  halt ; stop\n\n").size(), 1u);
}

TEST(Programs, Errors)
{
    EXPECT_NE(parse_error("jmp:eq:0:#0:9\nhalt").find("target 9 > length 2"), std::string::npos);
    EXPECT_NE(parse_error("").find("empty program"), std::string::npos);
    EXPECT_NE(parse_error("ini:#1\nhalt").find("line 1"), std::string::npos);
    EXPECT_NE(parse_error("loa:@1:2\nhalt").find("line 1"), std::string::npos);
    EXPECT_NE(parse_error("add:1:1:1").find("past the last instruction"), std::string::npos);
    EXPECT_NE(parse_error("halt\nhalt\nfoo").find("line 3"), std::string::npos);
    EXPECT_EQ(parse_error("loa:@1:2\nhalt", MachineKind::SMBRAM), "no error");
    EXPECT_TRUE(is_constant_true(RamOp::parse("eq:#0:#0")));
    EXPECT_FALSE(is_constant_true(RamOp::parse("eq:0:#0")));
}

TEST(Compilers, Ramp)
{
    EXPECT_EQ(proc_of_bbram(bbram("halt")), parse_term("rec X1 {X1 = True :-> eps}"));
    EXPECT_EQ(proc_of_bbram(bbram("add:#1:#1:0\nhalt")),
              parse_term("rec X1 {X1 = True :-> RM := add:#1:#1:0(RM) . X2, X2 = True :-> eps}"));
    EXPECT_EQ(proc_of_bbram(bbram("jmp:eq:0:#0:1\nhalt")),
              parse_term("rec X1 {X1 = eq:0:#0(RM) = 1 :-> RM := RM . X1 + eq:0:#0(RM) = 0 :-> RM := RM . X2, "
                         "X2 = True :-> eps}"));
    EXPECT_THROW(proc_of_bbram(smbram("halt")), Error);
}

TEST(Compilers, Async)
{
    EXPECT_EQ(proc_of_smbram_async(2, smbram("sto:#1:@0\nhalt")),
              parse_term("rec X2 {X2 = True :-> RM_2 := ini:#2(RM_2) . Y1, "
                         "Y1 = True :-> RM := sto:#1:@0(RM_2, RM) . Y2, Y2 = True :-> eps}"));
    Term t = apramp_of({smbram("halt"), smbram("halt"), smbram("halt")});
    EXPECT_EQ(validate_apramp(t), 3u);
}

TEST(Compilers, Sync)
{
    EXPECT_EQ(proc_of_smbram_sync(1, smbram("halt")),
              parse_term("rec X1 {X1 = True :-> RM_1 := ini:#1(RM_1) . Y1, Y1 = True :-> sync . Y2, Y2 = True :-> eps}"));
    EXPECT_EQ(validate_spramp(spramp_of({smbram("halt"), smbram("mov:#1:0\nhalt")})), 2u);
}

TEST(Compilers, Inverse)
{
    Program div = bbram(kDivision);
    EXPECT_EQ(program_of_ramp(proc_of_bbram(div)), div);
    EXPECT_EQ(program_of_ramp(parse_term("rec Q {R = True :-> eps, Q = True :-> RM := not:0:0(RM) . R}")),
              bbram("not:0:0\nhalt"));
    EXPECT_THROW(program_of_ramp(parse_term("a")), Error);
}

TEST(Interpreter, Division)
{
    MemState in = ims().override(1, B("1101")).override(2, B("11"));
    RunResult r = run_bbram(bbram(kDivision), in, 1000);
    EXPECT_TRUE(r.halted);
    EXPECT_EQ(r.memory[3], B("11"));
    EXPECT_EQ(r.memory[4], B("01"));
    EXPECT_EQ(r.steps, 15u);
}

TEST(Interpreter, FuelAndHalt)
{
    EXPECT_TRUE(run_bbram(bbram("halt"), ims(), 0).halted);
    EXPECT_EQ(run_bbram(bbram("halt"), ims(), 0).steps, 0u);
    RunResult loop = run_bbram(bbram("mov:#1:0\njmp:eq:#0:#0:1"), ims(), 50);
    EXPECT_FALSE(loop.halted);
    EXPECT_EQ(loop.steps, 50u);
    RunResult exact = run_bbram(bbram("mov:#1:0\nhalt"), ims(), 1);
    EXPECT_TRUE(exact.halted);
    EXPECT_EQ(exact.memory[0], B("1"));
}

TEST(MachinesProperty, CompiledTermsValidate)
{
    testkit::Gen g(61);
    for (int k = 0; k < 500; ++k) {
        testkit::ProgramShape shape;
        Program c = testkit::program(g, shape);
        ASSERT_TRUE(validate_ramp(proc_of_bbram(c))) << format_program(c);
        shape.kind = MachineKind::SMBRAM;
        std::vector<Program> cs;
        for (std::size_t i = 0, n = g.between(1, 3); i < n; ++i) cs.push_back(testkit::program(g, shape));
        ASSERT_EQ(validate_apramp(apramp_of(cs)), cs.size());
        ASSERT_EQ(validate_spramp(spramp_of(cs)), cs.size());
        ASSERT_EQ(parse_program(format_program(cs[0]), MachineKind::SMBRAM), cs[0]);
    }
}

TEST(MachinesProperty, InterpreterAgreesWithSemantics)
{
    auto r = testkit::interpreter_agreement(62, 300, 200);
    EXPECT_TRUE(r.ok()) << r.counterexample;
}

TEST(MachinesProperty, ProgramTermBijection)
{
    auto r = testkit::program_term_bijection(63, 1000);
    EXPECT_TRUE(r.ok()) << r.counterexample;
}

TEST(MachinesProperty, SharedMemoryEmbedding)
{
    auto r = testkit::shared_memory_embedding(64, 1000);
    EXPECT_TRUE(r.ok()) << r.counterexample;
}

} // namespace
} // namespace deacp
