#include "deacp_cli/cli.hpp"

#include "deacp/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace deacp::cli {
namespace {

std::string program(const char *name) { return std::string(DEACP_DATA_DIR) + "/programs/" + name; }
std::string add_oracle() { return std::string("python3 ") + DEACP_ORACLE_DIR + "/add_oracle.py"; }

struct Outcome {
    int code;
    std::string out, err;
};

Outcome cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string &contents)
{
    char name[] = "/tmp/deacp_cli_testXXXXXX";
    int fd = mkstemp(name);
    EXPECT_GE(fd, 0);
    std::FILE *f = fdopen(fd, "w");
    std::fputs(contents.c_str(), f);
    std::fclose(f);
    return name;
}

TEST(Cli, Compile)
{
    auto r = cli({"compile", program("halt.bbram")});
    EXPECT_EQ(r.code, exit_code::ok);
    EXPECT_EQ(r.out, "rec X1 {X1 = True :-> eps}\n");
    auto s = cli({"compile", "--model", "spramp", program("halt.bbram"), program("halt.bbram")});
    EXPECT_EQ(s.code, exit_code::ok);
    EXPECT_NE(s.out.find("||sync"), std::string::npos);
}

TEST(Cli, CompileInverse)
{
    std::string term = temp_file("rec X1 {X1 = True :-> RM := not:0:0(RM) . X2, X2 = True :-> eps}\n");
    auto r = cli({"compile", "--inverse", term});
    EXPECT_EQ(r.code, exit_code::ok);
    EXPECT_EQ(r.out, "not:0:0\nhalt\n");
    std::remove(term.c_str());
}

TEST(Cli, RunDivision)
{
    auto r = cli({"run", "--mem", "0=" + program("division.mem"), program("division.bbram")});
    EXPECT_EQ(r.code, exit_code::ok) << r.err;
    EXPECT_NE(r.out.find("steps: 15"), std::string::npos);
    EXPECT_NE(r.out.find("final: RM=[1=1101, 2=11, 3=11, 4=01]"), std::string::npos);
}

TEST(Cli, RunLoopAndBound)
{
    EXPECT_EQ(cli({"run", program("loop.bbram")}).code, exit_code::no_halt);
    std::string grow = temp_file("add:0:#1:0\njmp:eq:#0:#0:1\n");
    EXPECT_EQ(cli({"run", "--fuel", "30", grow}).code, exit_code::exploded);
    std::remove(grow.c_str());
}

TEST(Cli, RunWritesLts)
{
    auto r = cli({"run", "--lts", "-", "--format", "dot", program("halt.bbram")});
    EXPECT_EQ(r.code, exit_code::ok);
    EXPECT_NE(r.out.find("digraph"), std::string::npos);
}

TEST(Cli, Measure)
{
    auto r = cli({"measure", "--model", "spramp", "--measure", "sputm", program("halt.bbram"), program("halt.bbram")});
    EXPECT_EQ(r.code, exit_code::ok) << r.err;
    EXPECT_NE(r.out.find("\"value\": 1"), std::string::npos);
    EXPECT_EQ(cli({"measure", "--measure", "aputm", program("halt.bbram")}).code, exit_code::usage);
    EXPECT_EQ(cli({"measure", "--measure", "sutm", program("loop.bbram")}).code, exit_code::no_halt);
}

TEST(Cli, Errors)
{
    EXPECT_EQ(cli({"run", "/nonexistent/x.bbram"}).code, exit_code::no_input);
    std::string bad = temp_file("halt\njmp:eq:0:#0:9\n");
    auto r = cli({"run", bad});
    EXPECT_EQ(r.code, exit_code::data);
    EXPECT_NE(r.err.find(bad + ":2:"), std::string::npos) << r.err;
    std::remove(bad.c_str());
    EXPECT_EQ(cli({"frobnicate"}).code, exit_code::usage);
}

TEST(Cli, CheckAdder)
{
    auto r = cli({"check", "--oracle", add_oracle(), "--max-len", "2", program("add.bbram")});
    EXPECT_EQ(r.code, exit_code::ok) << r.err << r.out;
    EXPECT_NE(r.out.find("49 inputs: 49 pass"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("fitted bound"), std::string::npos);
    auto broken = cli({"check", "--oracle", add_oracle(), "--max-len", "2", program("add_broken.bbram")});
    EXPECT_EQ(broken.code, exit_code::check_failed);
    auto tight = cli({"check", "--oracle", add_oracle(), "--max-len", "2", "--bound", "0*n+1", program("add.bbram")});
    EXPECT_EQ(tight.code, exit_code::check_failed);
}

TEST(Cli, CheckInputFile)
{
    std::string in = temp_file("# pairs\n1 1\ne 0\n");
    auto r = cli({"check", "--oracle", add_oracle(), "--inputs", in, program("add.bbram")});
    EXPECT_EQ(r.code, exit_code::ok) << r.err;
    EXPECT_NE(r.out.find("2 inputs: 2 pass"), std::string::npos);
    std::remove(in.c_str());
}

TEST(Cli, ExternalOracle)
{
    auto inputs = parse_inputs("1 1\n01 e\n");
    ASSERT_EQ(inputs.size(), 2u);
    EXPECT_EQ(format_tuple(inputs[1]), "01 e");
    FunctionSpec f = external_oracle(add_oracle(), 2, inputs);
    EXPECT_EQ(f.oracle(inputs[0]), BitString::parse("01"));
    EXPECT_EQ(f.oracle(inputs[1]), BitString::parse("01"));
    FunctionSpec undef = external_oracle("sed s/.*/undef/", 2, inputs);
    EXPECT_EQ(undef.oracle(inputs[0]), std::nullopt);
    FunctionSpec broken = external_oracle("false", 2, inputs);
    EXPECT_THROW(broken.oracle(inputs[0]), std::exception);
}

} // namespace
} // namespace deacp::cli
