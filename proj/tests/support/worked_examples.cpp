#include "worked_examples.hpp"

#include "oracles.hpp"

namespace deacp::testkit {

namespace {

DataExpr v(const std::string &name) { return DataExpr::var(name); }

// Both operands side by side: register 0 from x, register 1 from y.
DataExpr pair(const std::string &x, const std::string &y) { return DataExpr::merge({v(x), v(y)}); }

DataExpr difference(const std::string &x, const std::string &y)
{
    return DataExpr::split(1, 2, DataExpr::apply(RamOp::parse("sub:0:1:0"), pair(x, y)));
}

// x >= y = 1 holds exactly when y > x is 0.
Cond at_least(const std::string &x, const std::string &y, bool holds)
{
    return Cond::prop(RamOp::parse("gt:1:0"), pair(x, y), holds ? Bit::Zero : Bit::One);
}

} // namespace

MemState int_memory(std::uint64_t value) { return ims().override(0, BitString::parse(oracle::lsb_first(value))); }

Term absolute_difference()
{
    Term choice = Term::alt(Term::guard(at_least("d", "j", true), Term::assign("d", difference("d", "j"))),
                            Term::guard(at_least("d", "j", false), Term::assign("d", difference("j", "d"))));
    return Term::seq(Term::assign("d", v("i")), choice);
}

Term division()
{
    auto spec = make_spec({
        {"Q", Term::alt(Term::guard(at_least("r", "j", true),
                                    Term::seq(Term::assign("q", DataExpr::apply(RamOp::parse("add:0:#1:0"), v("q"))),
                                              Term::var("R"))),
                        Term::guard(at_least("r", "j", false), Term::eps()))},
        {"R", Term::guard(Cond::truth(), Term::seq(Term::assign("r", difference("r", "j")), Term::var("Q")))},
    });
    return Term::seq(Term::assign("q", DataExpr::lit(int_memory(0))),
                     Term::seq(Term::assign("r", v("i")), Term::rec("Q", spec)));
}

Valuation ij_valuation(std::uint64_t i, std::uint64_t j) { return {{"i", int_memory(i)}, {"j", int_memory(j)}}; }

Term assignment_chain(const std::vector<std::pair<std::string, std::uint64_t>> &steps)
{
    Term t = Term::guard(Cond::truth(), Term::eps());
    for (auto it = steps.rbegin(); it != steps.rend(); ++it)
        t = Term::guard(Cond::truth(), Term::seq(Term::assign(it->first, DataExpr::lit(int_memory(it->second))), t));
    return t;
}

} // namespace deacp::testkit
