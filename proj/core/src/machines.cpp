#include "deacp/machines.hpp"

#include "deacp/error.hpp"
#include "deacp/shapes.hpp"

#include <map>
#include <set>

namespace deacp {

namespace {

std::string trim(std::string_view s)
{
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

const std::string rm = "RM";

DataExpr var(const std::string &v) { return DataExpr::var(v); }

Term step_to(const std::string &mem, DataExpr e, const std::string &next)
{
    return Term::guard(Cond::truth(), Term::seq(Term::assign(mem, std::move(e)), Term::var(next)));
}

Term test_to(const RamOp &p, const std::string &mem, const std::string &on_true, const std::string &on_false)
{
    auto branch = [&](Bit b, const std::string &next) {
        return Term::guard(Cond::prop(p, var(mem), b),
                           Term::seq(Term::assign(mem, var(mem)), Term::var(next)));
    };
    return Term::alt(branch(Bit::One, on_true), branch(Bit::Zero, on_false));
}

Term halt_eq() { return Term::guard(Cond::truth(), Term::eps()); }

// Fall-through successor of instruction j (1-based); a final jump, which
// always jumps, falls through to its own target.
std::size_t fall_through(const Program &c, std::size_t j)
{
    if (j < c.size()) return j + 1;
    return std::get<Jump>(c.instrs[j - 1]).target;
}

void require_kind(const Program &c, MachineKind k)
{
    if (c.kind != k)
        throw Error(k == MachineKind::BBRAM ? "expected a BBRAM program" : "expected an SMBRAM program");
}

std::string mem_of(std::size_t i) { return "RM_" + std::to_string(i); }

Term ini_eq(std::size_t i, const std::string &next)
{
    return step_to(mem_of(i), DataExpr::apply(RamOp(Ini{i}), var(mem_of(i))), next);
}

// Work equation for instruction j of an SMBRAM program run as memory i.
Term smbram_eq(std::size_t i, const Instr &ins, const std::string &next, const std::string &jump_to)
{
    const std::string rmi = mem_of(i);
    if (std::holds_alternative<Halt>(ins)) return halt_eq();
    if (auto j = std::get_if<Jump>(&ins)) return test_to(j->test, rmi, jump_to, next);
    const RamOp &o = std::get<RamOp>(ins);
    if (o.as<Load>()) return step_to(rmi, DataExpr::apply(o, var(rmi), var(rm)), next);
    if (o.as<Store>()) return step_to(rm, DataExpr::apply(o, var(rmi), var(rm)), next);
    return step_to(rmi, DataExpr::apply(o, var(rmi)), next);
}

} // namespace

std::string instr_to_string(const Instr &i)
{
    if (std::holds_alternative<Halt>(i)) return "halt";
    if (auto j = std::get_if<Jump>(&i)) return "jmp:" + j->test.to_string() + ":" + std::to_string(j->target);
    return std::get<RamOp>(i).to_string();
}

Instr parse_instr(std::string_view text)
{
    std::string s = trim(text);
    if (s == "halt") return Halt{};
    if (s.rfind("jmp:", 0) == 0) {
        std::size_t colon = s.rfind(':');
        if (colon <= 4) throw ParseError("malformed jump '" + s + "'");
        std::string target = s.substr(colon + 1);
        if (target.empty() || target.find_first_not_of("0123456789") != std::string::npos || target.size() > 9)
            throw ParseError("malformed jump target in '" + s + "'");
        RamOp test = RamOp::parse(s.substr(4, colon - 4));
        if (!test.is_comparison()) throw ParseError("jump needs a comparison, got '" + test.to_string() + "'");
        std::size_t t = std::stoul(target);
        if (t == 0) throw ParseError("jump targets start at 1");
        return Jump{test, t};
    }
    RamOp o = RamOp::parse(s);
    if (o.is_comparison()) throw ParseError("comparison '" + s + "' is not an instruction");
    return o;
}

Program parse_program(std::string_view text, MachineKind kind)
{
    Program p;
    p.kind = kind;
    std::vector<std::size_t> lines;
    std::size_t line = 0, start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line;
        std::string_view raw = text.substr(start, end - start);
        if (auto semi = raw.find(';'); semi != std::string_view::npos) raw = raw.substr(0, semi);
        std::string s = trim(raw);
        if (!s.empty()) {
            try {
                p.instrs.push_back(parse_instr(s));
            } catch (const Error &e) {
                throw ParseError(e.what(), line);
            }
            lines.push_back(line);
        }
        start = end + 1;
    }
    try {
        validate_program(p);
    } catch (const ParseError &e) {
        std::size_t idx = e.line();
        std::string msg = e.what();
        if (idx) msg = msg.substr(msg.find(": ") + 2);
        throw ParseError(msg, idx && idx <= lines.size() ? lines[idx - 1] : 0);
    }
    return p;
}

std::string format_program(const Program &p)
{
    std::string out;
    for (auto &i : p.instrs) out += instr_to_string(i) + "\n";
    return out;
}

bool is_constant_true(const RamOp &test)
{
    auto c = test.as<CmpOp>();
    if (!c || c->src1.mode != Operand::Mode::Imm || c->src2.mode != Operand::Mode::Imm) return false;
    return apply_prop(test, ims()) == Bit::One;
}

void validate_program(const Program &p)
{
    if (p.instrs.empty()) throw ParseError("empty program");
    std::size_t n = p.size();
    for (std::size_t j = 1; j <= n; ++j) {
        const Instr &ins = p.instrs[j - 1];
        if (auto jmp = std::get_if<Jump>(&ins)) {
            if (jmp->target < 1 || jmp->target > n)
                throw ParseError("target " + std::to_string(jmp->target) + " > length " + std::to_string(n), j);
        } else if (auto o = std::get_if<RamOp>(&ins)) {
            if (o->as<Ini>()) throw ParseError("ini is not a program instruction", j);
            if (o->is_shared() && p.kind == MachineKind::BBRAM)
                throw ParseError("'" + o->to_string() + "' needs a shared memory (SMBRAM)", j);
        }
    }
    const Instr &last = p.instrs.back();
    bool closes = std::holds_alternative<Halt>(last);
    if (auto jmp = std::get_if<Jump>(&last)) closes = is_constant_true(jmp->test);
    if (!closes) throw ParseError("control can run past the last instruction (end with halt or an unconditional jump)", n);
}

Term proc_of_bbram(const Program &c)
{
    require_kind(c, MachineKind::BBRAM);
    validate_program(c);
    auto x = [](std::size_t i) { return "X" + std::to_string(i); };
    std::vector<RecSpec::Equation> eqs;
    for (std::size_t i = 1; i <= c.size(); ++i) {
        const Instr &ins = c.instrs[i - 1];
        if (std::holds_alternative<Halt>(ins))
            eqs.emplace_back(x(i), halt_eq());
        else if (auto j = std::get_if<Jump>(&ins))
            eqs.emplace_back(x(i), test_to(j->test, rm, x(j->target), x(fall_through(c, i))));
        else
            eqs.emplace_back(x(i), step_to(rm, DataExpr::apply(std::get<RamOp>(ins), var(rm)), x(i + 1)));
    }
    return Term::rec(x(1), make_spec(std::move(eqs)));
}

Term proc_of_smbram_async(std::size_t i, const Program &c)
{
    require_kind(c, MachineKind::SMBRAM);
    validate_program(c);
    if (i == 0) throw Error("memory numbers start at 1");
    auto y = [](std::size_t j) { return "Y" + std::to_string(j); };
    const std::string root = "X" + std::to_string(i);
    std::vector<RecSpec::Equation> eqs;
    eqs.emplace_back(root, ini_eq(i, y(1)));
    for (std::size_t j = 1; j <= c.size(); ++j) {
        const Instr &ins = c.instrs[j - 1];
        std::size_t target = std::holds_alternative<Jump>(ins) ? std::get<Jump>(ins).target : 0;
        std::size_t next = std::holds_alternative<RamOp>(ins) ? j + 1 : (target ? fall_through(c, j) : 0);
        eqs.emplace_back(y(j), smbram_eq(i, ins, next ? y(next) : "", target ? y(target) : ""));
    }
    return Term::rec(root, make_spec(std::move(eqs)));
}

Term proc_of_smbram_sync(std::size_t i, const Program &c)
{
    require_kind(c, MachineKind::SMBRAM);
    validate_program(c);
    if (i == 0) throw Error("memory numbers start at 1");
    auto y = [](std::size_t j) { return "Y" + std::to_string(j); };
    const std::string root = "X" + std::to_string(i);
    std::vector<RecSpec::Equation> eqs;
    eqs.emplace_back(root, ini_eq(i, y(1)));
    for (std::size_t j = 1; j <= c.size(); ++j) {
        const Instr &ins = c.instrs[j - 1];
        eqs.emplace_back(y(2 * j - 1), Term::guard(Cond::truth(), Term::seq(Term::act("sync"), Term::var(y(2 * j)))));
        std::size_t target = std::holds_alternative<Jump>(ins) ? std::get<Jump>(ins).target : 0;
        std::size_t next = std::holds_alternative<RamOp>(ins) ? j + 1 : (target ? fall_through(c, j) : 0);
        eqs.emplace_back(y(2 * j), smbram_eq(i, ins, next ? y(2 * next - 1) : "", target ? y(2 * target - 1) : ""));
    }
    return Term::rec(root, make_spec(std::move(eqs)));
}

Term apramp_of(const std::vector<Program> &programs)
{
    if (programs.empty()) throw Error("need at least one program");
    Term t = proc_of_smbram_async(programs.size(), programs.back());
    for (std::size_t i = programs.size() - 1; i-- > 0;) t = Term::par(proc_of_smbram_async(i + 1, programs[i]), t);
    return t;
}

Term spramp_of(const std::vector<Program> &programs)
{
    if (programs.empty()) throw Error("need at least one program");
    Term t = proc_of_smbram_sync(programs.size(), programs.back());
    for (std::size_t i = programs.size() - 1; i-- > 0;) t = Term::sync_merge(proc_of_smbram_sync(i + 1, programs[i]), t);
    return t;
}

Program program_of_ramp(const Term &t)
{
    if (!validate_ramp(t)) throw Error("not a RAMP term");
    const auto &rec = *t.as<TRec>();
    const RecSpec &spec = *rec.spec;

    struct Shape {
        Instr instr = Halt{};
        std::string next;    // fall-through successor, empty for halt
        std::string on_true; // jump target
    };
    std::map<std::string, Shape> shapes;
    for (const auto &[name, rhs] : spec.equations()) {
        if (auto g = rhs.as<TGuard>(); g && g->t.is<TEmpty>()) {
            shapes[name] = {Halt{}, "", ""};
        } else if (auto g = rhs.as<TGuard>()) {
            // True :-> RM := o(RM) . Z
            const auto &seq = *g->t.as<TBinary>();
            const auto &asg = *seq.lhs.as<TAssign>();
            shapes[name] = {std::get<DApply>(asg.e.node().v).op, seq.rhs.as<TVar>()->name, ""};
        } else {
            const auto &alt = *rhs.as<TBinary>();
            auto branch = [](const Term &b) {
                const auto &g = *b.as<TGuard>();
                return std::make_pair(std::get<CProp>(g.c.node().v).op, g.t.as<TBinary>()->rhs.as<TVar>()->name);
            };
            auto [test, on_true] = branch(alt.lhs);
            shapes[name] = {Jump{test, 0}, branch(alt.rhs).second, on_true};
        }
    }

    // A jump that always jumps and whose false branch is its own target can
    // only be the last instruction.
    auto closes = [](const Shape &s) {
        auto j = std::get_if<Jump>(&s.instr);
        return j && is_constant_true(j->test) && s.next == s.on_true;
    };
    Program p;
    std::map<std::string, std::size_t> position;
    std::vector<std::string> order;
    // Head of the next run of fall-through instructions: the first unplaced
    // equation that no other unplaced equation falls through to.
    auto next_head = [&]() -> std::string {
        std::set<std::string> targets;
        for (const auto &[name, rhs] : spec.equations())
            if (!position.count(name) && !closes(shapes[name])) targets.insert(shapes[name].next);
        for (const auto &[name, rhs] : spec.equations())
            if (!position.count(name) && !targets.count(name)) return name;
        throw Error("not the process of a program: fall-through cycle");
    };
    std::string cur = rec.name;
    bool closed = false;
    while (position.size() < spec.equations().size()) {
        if (closed) throw Error("not the process of a program: instructions after the final jump");
        if (cur.empty()) cur = next_head();
        for (;;) {
            position[cur] = p.size() + 1;
            order.push_back(cur);
            const Shape &s = shapes[cur];
            p.instrs.push_back(s.instr);
            if (s.next.empty()) break;
            if (!position.count(s.next)) {
                cur = s.next;
                continue;
            }
            if (!closes(s))
                throw Error("not the process of a program: fall-through into an earlier instruction at " + cur);
            closed = true;
            break;
        }
        cur.clear();
    }
    for (std::size_t k = 0; k < p.size(); ++k)
        if (auto j = std::get_if<Jump>(&p.instrs[k])) j->target = position.at(shapes[order[k]].on_true);
    validate_program(p);
    return p;
}

RunResult run_bbram(const Program &c, const MemState &sigma, std::size_t fuel)
{
    require_kind(c, MachineKind::BBRAM);
    RunResult r;
    r.memory = sigma;
    std::size_t pc = 1;
    while (pc >= 1 && pc <= c.size()) {
        const Instr &ins = c.instrs[pc - 1];
        if (std::holds_alternative<Halt>(ins)) {
            r.halted = true;
            return r;
        }
        if (r.steps == fuel) return r;
        ++r.steps;
        if (auto j = std::get_if<Jump>(&ins)) {
            pc = apply_prop(j->test, r.memory) == Bit::One ? j->target : pc + 1;
        } else {
            r.memory = apply_op(std::get<RamOp>(ins), r.memory);
            ++pc;
        }
    }
    // Ran off the end of the program: no halt, so no successful termination.
    return r;
}

} // namespace deacp
