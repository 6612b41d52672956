#include "deacp/shapes.hpp"

#include "deacp/error.hpp"
#include "deacp/syntax.hpp"

#include <deque>
#include <functional>
#include <map>
#include <optional>

namespace deacp {

namespace {

const TBinary *binary(const Term &t, BinaryOp op)
{
    auto b = t.as<TBinary>();
    return b && b->op == op ? b : nullptr;
}

bool is_atomic_or_tau(const Term &t) { return t.is<TAct>() || t.is<TDataAct>() || t.is<TAssign>() || t.is<TSilent>(); }

void summands(const Term &t, std::vector<Term> &out)
{
    if (auto b = binary(t, BinaryOp::Alt)) {
        summands(b->lhs, out);
        summands(b->rhs, out);
    } else {
        out.push_back(t);
    }
}

// phi :-> alpha . X
struct Prefix {
    Cond c;
    Term action;
    std::string next;
};

std::optional<Prefix> as_prefix(const Term &t)
{
    auto g = t.as<TGuard>();
    if (!g) return std::nullopt;
    auto s = binary(g->t, BinaryOp::Seq);
    if (!s || !is_atomic_or_tau(s->lhs)) return std::nullopt;
    auto v = s->rhs.as<TVar>();
    if (!v) return std::nullopt;
    return Prefix{g->c, s->lhs, v->name};
}

bool is_guarded_eps(const Term &t)
{
    auto g = t.as<TGuard>();
    return g && g->t.is<TEmpty>();
}

bool is_true_guarded_eps(const Term &t)
{
    auto g = t.as<TGuard>();
    return g && g->c.is_true() && g->t.is<TEmpty>();
}

bool is_var(const DataExpr &e, const std::string &name)
{
    auto v = std::get_if<DVar>(&e.node().v);
    return v && v->name == name;
}

// True :-> mem := o(args) . Z
struct AssignStep {
    std::string var;
    const DApply *apply;
    std::string next;
};

std::optional<AssignStep> as_assign_step(const Term &t)
{
    auto p = as_prefix(t);
    if (!p || !p->c.is_true()) return std::nullopt;
    auto a = p->action.as<TAssign>();
    if (!a) return std::nullopt;
    auto ap = std::get_if<DApply>(&a->e.node().v);
    if (!ap) return std::nullopt;
    return AssignStep{a->var, ap, p->next};
}

// (p(M) = 1) :-> M := M . Z + (p(M) = 0) :-> M := M . Z'
struct TestStep {
    RamOp p;
    std::string mem;
    std::string on_true, on_false;
};

std::optional<TestStep> as_test_step(const Term &t)
{
    auto alt = binary(t, BinaryOp::Alt);
    if (!alt) return std::nullopt;
    auto one = as_prefix(alt->lhs), zero = as_prefix(alt->rhs);
    if (!one || !zero) return std::nullopt;
    auto c1 = std::get_if<CProp>(&one->c.node().v);
    auto c0 = std::get_if<CProp>(&zero->c.node().v);
    if (!c1 || !c0 || !(c1->op == c0->op) || c1->expected != Bit::One || c0->expected != Bit::Zero) return std::nullopt;
    auto m = std::get_if<DVar>(&c1->e.node().v);
    if (!m || !is_var(c0->e, m->name)) return std::nullopt;
    for (auto *pre : {&*one, &*zero}) {
        auto a = pre->action.as<TAssign>();
        if (!a || a->var != m->name || !is_var(a->e, m->name)) return std::nullopt;
    }
    return TestStep{c1->op, m->name, one->next, zero->next};
}

std::string mem_name(std::size_t i) { return "RM_" + std::to_string(i); }

[[noreturn]] void violation(std::size_t component, const std::string &var, const std::string &what)
{
    throw Error("component " + std::to_string(component) + ", equation " + var + ": " + what);
}

// Shapes common to APRAMP and SPRAMP components. Returns a short tag of the
// form matched: "ini", "sync", "step", "test", "halt".
std::string classify_component_equation(std::size_t i, const std::string &x, const Term &rhs, bool allow_sync,
                                        const RecSpec &spec)
{
    const std::string rmi = mem_name(i);
    auto check_target = [&](const std::string &z) {
        if (!spec.has(z)) violation(i, x, "refers to undefined variable " + z);
    };
    if (is_true_guarded_eps(rhs)) return "halt";
    if (auto p = as_prefix(rhs); p && allow_sync && p->c.is_true()) {
        if (auto a = p->action.as<TAct>(); a && a->name == "sync") {
            check_target(p->next);
            return "sync";
        }
    }
    if (auto s = as_assign_step(rhs)) {
        check_target(s->next);
        const RamOp &o = s->apply->op;
        if (auto ini = o.as<Ini>()) {
            if (s->var != rmi || s->apply->args.size() != 1 || !is_var(s->apply->args[0], rmi))
                violation(i, x, "ini must update " + rmi + " from " + rmi);
            if (ini->memory != i) violation(i, x, "ini must name memory " + std::to_string(i));
            return "ini";
        }
        if (auto l = o.as<Load>()) {
            if (s->var != rmi || s->apply->args.size() != 2 || !is_var(s->apply->args[0], rmi) ||
                !is_var(s->apply->args[1], "RM"))
                violation(i, x, "load must update " + rmi + " from (" + rmi + ", RM)");
            (void)l;
            return "step";
        }
        if (o.as<Store>()) {
            if (s->var != "RM" || s->apply->args.size() != 2 || !is_var(s->apply->args[0], rmi) ||
                !is_var(s->apply->args[1], "RM"))
                violation(i, x, "store must update RM from (" + rmi + ", RM)");
            return "step";
        }
        if (o.is_basic_operation()) {
            if (s->var != rmi || !is_var(s->apply->args[0], rmi))
                violation(i, x, "operation must update " + rmi + " from " + rmi);
            return "step";
        }
        violation(i, x, "operator " + o.to_string() + " not allowed");
    }
    if (auto t = as_test_step(rhs)) {
        if (t->mem != rmi) violation(i, x, "test must inspect " + rmi);
        check_target(t->on_true);
        check_target(t->on_false);
        return "test";
    }
    violation(i, x, "right-hand side " + to_string(rhs) + " has no admissible form");
}

std::vector<std::string> successors(const Term &rhs)
{
    std::vector<std::string> out;
    std::function<void(const Term &)> walk = [&](const Term &t) {
        std::visit(
            [&](const auto &n) {
                using N = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<N, TVar>) {
                    out.push_back(n.name);
                } else if constexpr (std::is_same_v<N, TBinary>) {
                    walk(n.lhs);
                    walk(n.rhs);
                } else if constexpr (std::is_same_v<N, TGuard> || std::is_same_v<N, TEncap> ||
                                     std::is_same_v<N, TAbstr> || std::is_same_v<N, TEval> ||
                                     std::is_same_v<N, TProj> || std::is_same_v<N, TRename>) {
                    walk(n.t);
                }
            },
            t.node().v);
    };
    walk(rhs);
    return out;
}

std::size_t validate_parallel(const Term &t, BinaryOp op, bool sync)
{
    auto parts = flatten(t, op);
    for (std::size_t i = 1; i <= parts.size(); ++i) {
        auto r = parts[i - 1].as<TRec>();
        if (!r) throw Error("component " + std::to_string(i) + " is not a recursion constant");
        const RecSpec &spec = *r->spec;
        std::map<std::string, std::string> kind;
        for (auto &[x, rhs] : spec.equations()) {
            kind[x] = classify_component_equation(i, x, rhs, sync, spec);
            if ((kind[x] == "ini") != (x == r->name))
                violation(i, x, x == r->name ? "root equation must be the ini step" : "ini step only at the root");
        }
        if (sync) {
            for (auto &[x, rhs] : spec.equations())
                for (auto &y : successors(rhs))
                    if ((kind[x] == "sync") == (kind[y] == "sync"))
                        violation(i, x, "sync and non-sync equations must alternate (successor " + y + ")");
        }
    }
    return parts.size();
}

} // namespace

bool validate_linear(const Term &t)
{
    if (t.is<TDead>() || is_guarded_eps(t) || as_prefix(t)) return true;
    if (auto b = binary(t, BinaryOp::Alt)) return validate_linear(b->lhs) && validate_linear(b->rhs);
    return false;
}

bool validate_guarded(const RecSpec &spec)
{
    std::map<std::string, std::vector<std::string>> edges;
    for (auto &[x, rhs] : spec.equations()) {
        if (!validate_linear(rhs)) throw Error("right-hand side for " + x + " is not linear");
        std::vector<Term> ss;
        summands(rhs, ss);
        for (auto &s : ss)
            if (auto p = as_prefix(s); p && p->action.is<TSilent>()) edges[x].push_back(p->next);
    }
    // Depth-first cycle detection over tau edges.
    std::map<std::string, int> colour;
    std::function<bool(const std::string &)> cyclic = [&](const std::string &x) {
        colour[x] = 1;
        for (auto &y : edges[x]) {
            if (colour[y] == 1) return true;
            if (colour[y] == 0 && cyclic(y)) return true;
        }
        colour[x] = 2;
        return false;
    };
    for (auto &[x, rhs] : spec.equations())
        if (colour[x] == 0 && cyclic(x)) return false;
    return true;
}

bool validate_ramp(const Term &t)
{
    auto r = t.as<TRec>();
    if (!r) return false;
    const RecSpec &spec = *r->spec;
    for (auto &[x, rhs] : spec.equations()) {
        if (is_true_guarded_eps(rhs)) continue;
        if (auto s = as_assign_step(rhs)) {
            if (s->var != "RM" || !s->apply->op.is_basic_operation() || s->apply->args.size() != 1 ||
                !is_var(s->apply->args[0], "RM") || !spec.has(s->next))
                return false;
            continue;
        }
        if (auto ts = as_test_step(rhs)) {
            if (ts->mem != "RM" || !spec.has(ts->on_true) || !spec.has(ts->on_false)) return false;
            continue;
        }
        return false;
    }
    return true;
}

std::size_t validate_apramp(const Term &t) { return validate_parallel(t, BinaryOp::Par, false); }
std::size_t validate_spramp(const Term &t) { return validate_parallel(t, BinaryOp::SyncMerge, true); }

std::vector<Term> flatten(const Term &t, BinaryOp op)
{
    std::vector<Term> out;
    std::function<void(const Term &)> walk = [&](const Term &x) {
        if (auto b = binary(x, op)) {
            walk(b->lhs);
            walk(b->rhs);
        } else {
            out.push_back(x);
        }
    };
    walk(t);
    return out;
}

Term close_over(const Term &body, const std::shared_ptr<const RecSpec> &spec)
{
    return std::visit(
        [&](const auto &n) -> Term {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, TVar>) {
                return spec->has(n.name) ? Term::rec(n.name, spec) : body;
            } else if constexpr (std::is_same_v<N, TBinary>) {
                Term l = close_over(n.lhs, spec), r = close_over(n.rhs, spec);
                if (l == n.lhs && r == n.rhs) return body;
                switch (n.op) {
                case BinaryOp::Alt:
                    return Term::alt(l, r);
                case BinaryOp::Seq:
                    return Term::seq(l, r);
                case BinaryOp::Par:
                    return Term::par(l, r);
                case BinaryOp::LeftMerge:
                    return Term::left_merge(l, r);
                case BinaryOp::CommMerge:
                    return Term::comm_merge(l, r);
                case BinaryOp::SyncMerge:
                    return Term::sync_merge(l, r);
                }
                return body;
            } else if constexpr (std::is_same_v<N, TGuard>) {
                return Term::guard(n.c, close_over(n.t, spec));
            } else if constexpr (std::is_same_v<N, TEncap>) {
                return Term::encap(n.h, close_over(n.t, spec));
            } else if constexpr (std::is_same_v<N, TAbstr>) {
                return Term::abstr(n.i, close_over(n.t, spec));
            } else if constexpr (std::is_same_v<N, TEval>) {
                return Term::eval(n.rho, close_over(n.t, spec));
            } else if constexpr (std::is_same_v<N, TProj>) {
                return Term::proj(n.n, close_over(n.t, spec));
            } else if constexpr (std::is_same_v<N, TRename>) {
                return Term::rename(n.f, close_over(n.t, spec));
            } else {
                // Atoms, and nested recursion constants, which bind their own
                // variables.
                return body;
            }
        },
        body.node().v);
}

Term subst_rec(const Term &t)
{
    auto r = t.as<TRec>();
    if (!r) throw Error("not a recursion constant: " + to_string(t));
    const Term *rhs = r->spec->find(r->name);
    if (!rhs) throw Error("unknown recursion variable " + r->name);
    return close_over(*rhs, r->spec);
}

namespace {

Term rename_vars(const Term &t, const std::map<std::string, std::string> &names)
{
    return std::visit(
        [&](const auto &n) -> Term {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, TVar>) {
                auto it = names.find(n.name);
                return it == names.end() ? t : Term::var(it->second);
            } else if constexpr (std::is_same_v<N, TBinary>) {
                Term l = rename_vars(n.lhs, names), r = rename_vars(n.rhs, names);
                switch (n.op) {
                case BinaryOp::Alt:
                    return Term::alt(l, r);
                case BinaryOp::Seq:
                    return Term::seq(l, r);
                case BinaryOp::Par:
                    return Term::par(l, r);
                case BinaryOp::LeftMerge:
                    return Term::left_merge(l, r);
                case BinaryOp::CommMerge:
                    return Term::comm_merge(l, r);
                case BinaryOp::SyncMerge:
                    return Term::sync_merge(l, r);
                }
                return t;
            } else if constexpr (std::is_same_v<N, TGuard>) {
                return Term::guard(n.c, rename_vars(n.t, names));
            } else if constexpr (std::is_same_v<N, TEncap>) {
                return Term::encap(n.h, rename_vars(n.t, names));
            } else if constexpr (std::is_same_v<N, TAbstr>) {
                return Term::abstr(n.i, rename_vars(n.t, names));
            } else if constexpr (std::is_same_v<N, TEval>) {
                return Term::eval(n.rho, rename_vars(n.t, names));
            } else if constexpr (std::is_same_v<N, TProj>) {
                return Term::proj(n.n, rename_vars(n.t, names));
            } else if constexpr (std::is_same_v<N, TRename>) {
                return Term::rename(n.f, rename_vars(n.t, names));
            } else if constexpr (std::is_same_v<N, TRec>) {
                return canonical_rename(t);
            } else {
                return t;
            }
        },
        t.node().v);
}

} // namespace

Term canonical_rename(const Term &t)
{
    if (auto b = t.as<TBinary>()) {
        Term l = canonical_rename(b->lhs), r = canonical_rename(b->rhs);
        switch (b->op) {
        case BinaryOp::Alt:
            return Term::alt(l, r);
        case BinaryOp::Seq:
            return Term::seq(l, r);
        case BinaryOp::Par:
            return Term::par(l, r);
        case BinaryOp::LeftMerge:
            return Term::left_merge(l, r);
        case BinaryOp::CommMerge:
            return Term::comm_merge(l, r);
        case BinaryOp::SyncMerge:
            return Term::sync_merge(l, r);
        }
    }
    auto r = t.as<TRec>();
    if (!r) return t;
    const RecSpec &spec = *r->spec;
    std::map<std::string, std::string> names;
    std::vector<std::string> order;
    std::deque<std::string> queue{r->name};
    names[r->name] = "V1";
    order.push_back(r->name);
    while (!queue.empty()) {
        std::string x = queue.front();
        queue.pop_front();
        for (auto &y : successors(*spec.find(x))) {
            if (!spec.has(y) || names.count(y)) continue;
            names[y] = "V" + std::to_string(names.size() + 1);
            order.push_back(y);
            queue.push_back(y);
        }
    }
    std::vector<RecSpec::Equation> eqs;
    for (auto &x : order) eqs.emplace_back(names[x], rename_vars(*spec.find(x), names));
    return Term::rec("V1", make_spec(std::move(eqs)));
}

} // namespace deacp
