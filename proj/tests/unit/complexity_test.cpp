#include "deacp/complexity.hpp"
#include "deacp/error.hpp"
#include "deacp/machines.hpp"
#include "deacp/syntax.hpp"

#include "generators.hpp"
#include "oracles.hpp"
#include "suites.hpp"
#include "worked_examples.hpp"

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace deacp {
namespace {

BitString B(const char *s) { return BitString::parse(s); }
Program bbram(const char *s) { return parse_program(s, MachineKind::BBRAM); }
Program smbram(const char *s) { return parse_program(s, MachineKind::SMBRAM); }

Program data_program(const std::string &name)
{
    std::ifstream in(std::string(DEACP_DATA_DIR) + "/programs/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_program(ss.str(), MachineKind::BBRAM);
}

FunctionSpec adder()
{
    FunctionSpec f;
    f.arity = 2;
    f.oracle = [](const std::vector<BitString> &w) -> std::optional<BitString> {
        std::uint64_t s = testkit::oracle::value_of(w[0].to_string() == "e" ? "" : w[0].to_string()) +
                          testkit::oracle::value_of(w[1].to_string() == "e" ? "" : w[1].to_string());
        return BitString::parse(testkit::oracle::lsb_first(s));
    };
    return f;
}

TEST(Names, RoundTrip)
{
    for (Measure m : {Measure::SUTM, Measure::SWM, Measure::APUTM, Measure::APWM, Measure::SPUTM, Measure::SPWM})
        EXPECT_EQ(parse_measure(measure_name(m)), m);
    EXPECT_THROW(parse_measure("foo"), Error);
    EXPECT_EQ(measure_class(Measure::APWM), ModelClass::APRAMP);
}

TEST(Classify, Classes)
{
    EXPECT_EQ(classify(proc_of_bbram(bbram("halt"))).cls, ModelClass::RAMP);
    Classified a = classify(apramp_of({smbram("halt"), smbram("halt")}));
    EXPECT_EQ(a.cls, ModelClass::APRAMP);
    EXPECT_EQ(a.degree, 2u);
    EXPECT_EQ(classify(spramp_of({smbram("halt")})).cls, ModelClass::SPRAMP);
    EXPECT_THROW(classify(parse_term("a . b")), Error);
}

TEST(Sequential, Examples)
{
    EXPECT_EQ(sutm(proc_of_bbram(bbram("halt")), input_valuation({B("1")})), 0u);
    EXPECT_EQ(sutm(proc_of_bbram(bbram("add:#1:#1:0\nhalt")), {}), 1u);
    EXPECT_EQ(swm(proc_of_bbram(bbram("add:#1:#1:0\nhalt")), {}), 1u);
    Lts div = build_lts(testkit::division(), testkit::ij_valuation(11, 3), 1000);
    EXPECT_EQ(measure(div, Measure::SUTM, 1).value, 8u);
    EXPECT_THROW(sutm(proc_of_bbram(bbram("mov:#1:0\njmp:eq:#0:#0:1")), {}), UndefinedMeasure);
    EXPECT_THROW(sutm(proc_of_bbram(bbram("add:0:#1:0\njmp:eq:#0:#0:1")), {}, 50), Undecided);
}

TEST(Async, Examples)
{
    Term two = apramp_of({smbram("halt"), smbram("halt")});
    EXPECT_EQ(aputm(two, {}), 1u);
    EXPECT_EQ(apwm(two, {}), 2u);

    Term uneven = apramp_of({smbram("mov:#1:0\nmov:#1:1\nmov:#1:2\nhalt"), smbram("mov:#1:0\nhalt")});
    MeasureReport r = measure(uneven, Measure::APUTM, {});
    EXPECT_EQ(r.value, 4u);
    EXPECT_EQ(r.per_component, (std::vector<std::size_t>{4, 2}));
    EXPECT_EQ(apwm(uneven, {}), 6u);

    Program one = smbram("mov:#1:0\nsto:#1:@0\nhalt");
    Term single = apramp_of({one});
    EXPECT_EQ(aputm(single, {}), apwm(single, {}));
    EXPECT_EQ(aputm(single, {}), 3u);
}

TEST(Sync, Examples)
{
    EXPECT_EQ(sputm(spramp_of({smbram("halt"), smbram("halt")}), {}), 1u);
    EXPECT_EQ(sputm(spramp_of({smbram("mov:#1:0\nhalt"), smbram("mov:#1:1\nhalt")}), {}), 2u);
    EXPECT_EQ(sputm(spramp_of({smbram("halt")}), {}), 1u);
    EXPECT_EQ(spwm(spramp_of({smbram("halt"), smbram("halt")}), {}), 2u);
    EXPECT_EQ(spwm(spramp_of({smbram("halt"), smbram("halt"), smbram("halt")}), {}), 3u);
    EXPECT_EQ(spwm(spramp_of({smbram("add:#1:#1:0\nhalt"), smbram("add:#1:#1:0\nhalt")}), {}), 4u);
}

TEST(Measures, ClassMismatch)
{
    try {
        sutm(spramp_of({smbram("halt")}), {});
        FAIL() << "expected a class error";
    } catch (const Error &e) {
        EXPECT_NE(std::string(e.what()).find("requires RAMP class"), std::string::npos);
    }
    EXPECT_THROW(aputm(proc_of_bbram(bbram("halt")), {}), Error);
}

TEST(Measures, ReportJson)
{
    std::string j = measure(proc_of_bbram(bbram("add:#1:#1:0\nhalt")), Measure::SUTM, {}).to_json();
    EXPECT_NE(j.find("\"sutm\""), std::string::npos);
    EXPECT_NE(j.find("\"value\": 1"), std::string::npos);
}

TEST(Bounds, ParseAndFit)
{
    AffineBound b = AffineBound::parse("7*n+12");
    EXPECT_EQ(b(3), Natural(33));
    EXPECT_EQ(AffineBound::parse(b.to_string()).to_string(), b.to_string());
    EXPECT_THROW(AffineBound::parse("n^2"), Error);
    AffineBound f = fit_affine({{0, 2}, {1, 5}, {2, 8}, {3, 11}});
    for (std::size_t n = 0; n < 4; ++n) EXPECT_GE(f(n), Natural(2 + 3 * n));
    EXPECT_EQ(f(0), Natural(2));
}

TEST(Inputs, Enumeration)
{
    EXPECT_EQ(all_bitstrings(2).size(), 7u);
    EXPECT_EQ(all_bitstrings(0), std::vector<BitString>{BitString()});
    EXPECT_EQ(all_inputs(2, 2).size(), 49u);
    Valuation rho = input_valuation({B("1"), B("01")});
    EXPECT_EQ(rho.at("RM")[1], B("1"));
    EXPECT_EQ(rho.at("RM")[2], B("01"));
}

TEST(Checker, Adder)
{
    Term t = proc_of_bbram(data_program("add.bbram"));
    auto inputs = all_inputs(2, 3);
    Verdict loose = check_computes(t, adder(), {}, inputs);
    ASSERT_TRUE(loose.passed()) << loose.table();
    std::vector<std::pair<std::size_t, std::size_t>> points;
    for (const auto &row : loose.rows) points.emplace_back(row.input[0].size() + row.input[1].size(), *row.steps);
    AffineBound w = fit_affine(points);
    EXPECT_TRUE(check_computes(t, adder(), w, inputs).passed());
    EXPECT_TRUE(is_of_complexity(t, adder(), w, Measure::SUTM, inputs).passed());
    Verdict zero = is_of_complexity(t, adder(), [](std::size_t) { return Natural(0); }, Measure::SUTM, inputs);
    EXPECT_EQ(zero.count(InputVerdict::Status::Fail), inputs.size());
    EXPECT_FALSE(check_computes(proc_of_bbram(data_program("add_broken.bbram")), adder(), {}, inputs).passed());
}

TEST(Checker, HaltIsNotIdentity)
{
    FunctionSpec id;
    id.arity = 1;
    id.oracle = [](const std::vector<BitString> &w) -> std::optional<BitString> { return w[0]; };
    Verdict v = check_computes(proc_of_bbram(bbram("halt")), id, {}, {{B("1")}, {B("01")}, {BitString()}});
    EXPECT_EQ(v.count(InputVerdict::Status::Fail), 2u);
    EXPECT_EQ(v.count(InputVerdict::Status::Pass), 1u);
}

TEST(Checker, UndefinedEverywhere)
{
    FunctionSpec none;
    none.arity = 1;
    none.oracle = [](const std::vector<BitString> &) -> std::optional<BitString> { return std::nullopt; };
    Term loop = proc_of_bbram(bbram("mov:#1:0\njmp:eq:#0:#0:1"));
    EXPECT_TRUE(check_computes(loop, none, {}, all_inputs(1, 2)).passed());
    Term grows = proc_of_bbram(bbram("add:0:#1:0\njmp:eq:#0:#0:1"));
    Verdict v = check_computes(grows, none, {}, {{B("1")}}, 50);
    EXPECT_EQ(v.count(InputVerdict::Status::Undecided), 1u);
    EXPECT_FALSE(check_computes(proc_of_bbram(bbram("halt")), none, {}, {{B("1")}}).passed());
}

TEST(Checker, OracleErrorIsFailure)
{
    FunctionSpec bad;
    bad.arity = 1;
    bad.oracle = [](const std::vector<BitString> &) -> std::optional<BitString> { throw std::runtime_error("boom"); };
    Verdict v = check_computes(proc_of_bbram(bbram("halt")), bad, {}, {{B("1")}});
    EXPECT_EQ(v.count(InputVerdict::Status::Fail), 1u);
    EXPECT_NE(v.table().find("verdict"), std::string::npos);
}

TEST(ComplexityProperty, SequentialMeasuresAgree)
{
    auto r = testkit::sequential_measures_agree(71, 300);
    EXPECT_TRUE(r.ok()) << r.counterexample;
}

TEST(ComplexityProperty, UndefinedIffNonHalting)
{
    auto r = testkit::undefined_measure_iff_nonhalting(72, 300);
    EXPECT_TRUE(r.ok()) << r.counterexample;
}

TEST(ComplexityProperty, AsyncSandwich)
{
    auto r = testkit::async_time_below_work(73, 200);
    EXPECT_TRUE(r.ok()) << r.counterexample;
}

TEST(ComplexityProperty, SyncClosedForms)
{
    auto r = testkit::sync_closed_forms(74, 10);
    EXPECT_TRUE(r.ok()) << r.counterexample;
}

TEST(ComplexityProperty, SyncTimeMatchesAsyncTime)
{
    auto r = testkit::sync_time_matches_async_time(75, 200);
    EXPECT_TRUE(r.ok()) << r.counterexample;
}

} // namespace
} // namespace deacp
