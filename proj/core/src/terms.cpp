#include "deacp/terms.hpp"

#include "deacp/error.hpp"

#include <boost/container_hash/hash.hpp>

namespace deacp {

namespace {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};

void mix(std::size_t &seed, std::size_t v) { boost::hash_combine(seed, v); }

std::size_t str_hash(const std::string &s) { return std::hash<std::string>{}(s); }

std::size_t data_hash(const DataNode &n)
{
    std::size_t h = n.v.index() * 0x9e3779b9u;
    std::visit(overloaded{
                   [&](const DVar &x) { mix(h, str_hash(x.name)); },
                   [&](const DLit &x) { mix(h, x.value.hash()); },
                   [&](const DUpd &x) {
                       mix(h, x.base.hash());
                       mix(h, hash_value(x.idx));
                       mix(h, std::hash<BitString>{}(x.val));
                   },
                   [&](const DApply &x) {
                       mix(h, x.op.hash());
                       for (auto &a : x.args) mix(h, a.hash());
                   },
                   [&](const DMerge &x) {
                       for (auto &a : x.parts) mix(h, a.hash());
                   },
                   [&](const DSplit &x) {
                       mix(h, x.k);
                       mix(h, x.n);
                       mix(h, x.e.hash());
                   },
               },
               n.v);
    return h;
}

std::size_t cond_hash(const CondNode &n)
{
    std::size_t h = 0x51ed27 + n.v.index();
    std::visit(overloaded{
                   [&](const CConst &x) { mix(h, x.value); },
                   [&](const CProp &x) {
                       mix(h, x.op.hash());
                       mix(h, x.e.hash());
                       mix(h, static_cast<std::size_t>(x.expected));
                   },
                   [&](const CEq &x) {
                       mix(h, x.lhs.hash());
                       mix(h, x.rhs.hash());
                   },
                   [&](const CNot &x) { mix(h, x.c.hash()); },
                   [&](const CBin &x) {
                       mix(h, static_cast<std::size_t>(x.op));
                       mix(h, x.lhs.hash());
                       mix(h, x.rhs.hash());
                   },
               },
               n.v);
    return h;
}

std::size_t rename_hash(const RenameMap &f)
{
    std::size_t h = 0;
    for (auto &[a, b] : f) {
        mix(h, str_hash(a));
        mix(h, str_hash(b));
    }
    return h;
}

std::size_t term_hash(const TermNode &n)
{
    std::size_t h = 0x7f4a7c15u + n.v.index();
    std::visit(overloaded{
                   [&](const TEmpty &) {},
                   [&](const TDead &) {},
                   [&](const TSilent &) {},
                   [&](const TAct &x) { mix(h, str_hash(x.name)); },
                   [&](const TDataAct &x) {
                       mix(h, str_hash(x.name));
                       for (auto &a : x.args) mix(h, a.hash());
                   },
                   [&](const TAssign &x) {
                       mix(h, str_hash(x.var));
                       mix(h, x.e.hash());
                   },
                   [&](const TBinary &x) {
                       mix(h, static_cast<std::size_t>(x.op));
                       mix(h, x.lhs.hash());
                       mix(h, x.rhs.hash());
                   },
                   [&](const TEncap &x) {
                       mix(h, x.h.hash());
                       mix(h, x.t.hash());
                   },
                   [&](const TAbstr &x) {
                       mix(h, x.i.hash());
                       mix(h, x.t.hash());
                   },
                   [&](const TGuard &x) {
                       mix(h, x.c.hash());
                       mix(h, x.t.hash());
                   },
                   [&](const TEval &x) {
                       mix(h, hash_valuation(x.rho));
                       mix(h, x.t.hash());
                   },
                   [&](const TVar &x) { mix(h, str_hash(x.name)); },
                   [&](const TRec &x) {
                       mix(h, str_hash(x.name));
                       mix(h, x.spec->hash());
                   },
                   [&](const TProj &x) {
                       mix(h, x.n);
                       mix(h, x.t.hash());
                   },
                   [&](const TRename &x) {
                       mix(h, rename_hash(x.f));
                       mix(h, x.t.hash());
                   },
               },
               n.v);
    return h;
}

template <class Node, class V> std::shared_ptr<const Node> make_node(V &&v, std::size_t (*hasher)(const Node &))
{
    auto p = std::make_shared<Node>();
    p->v = std::forward<V>(v);
    p->hash = hasher(*p);
    return p;
}

} // namespace

std::size_t hash_valuation(const Valuation &rho)
{
    std::size_t h = 0;
    for (auto &[v, m] : rho) {
        if (m.all_empty()) continue;
        mix(h, str_hash(v));
        mix(h, m.hash());
    }
    return h;
}

std::string valuation_to_string(const Valuation &rho)
{
    std::string out;
    for (auto &[v, m] : rho) {
        if (!out.empty()) out += ", ";
        out += v + "=" + m.to_string();
    }
    return out;
}

// --- DataExpr ---------------------------------------------------------------

DataExpr DataExpr::var(std::string name) { return DataExpr(make_node<DataNode>(DVar{std::move(name)}, data_hash)); }
DataExpr DataExpr::lit(MemState m) { return DataExpr(make_node<DataNode>(DLit{std::move(m)}, data_hash)); }
DataExpr DataExpr::upd(DataExpr base, Natural idx, BitString val)
{
    return DataExpr(make_node<DataNode>(DUpd{std::move(base), std::move(idx), std::move(val)}, data_hash));
}

DataExpr DataExpr::apply(RamOp o, DataExpr e)
{
    if (!o.is_basic_operation() && !o.as<Ini>())
        throw Error("operator " + o.to_string() + " does not take a single memory");
    return DataExpr(make_node<DataNode>(DApply{std::move(o), {std::move(e)}}, data_hash));
}

DataExpr DataExpr::apply(RamOp o, DataExpr priv, DataExpr shared)
{
    if (!o.is_shared()) throw Error("operator " + o.to_string() + " does not take two memories");
    return DataExpr(make_node<DataNode>(DApply{std::move(o), {std::move(priv), std::move(shared)}}, data_hash));
}

DataExpr DataExpr::merge(std::vector<DataExpr> parts)
{
    if (parts.empty()) throw Error("need at least one memory");
    return DataExpr(make_node<DataNode>(DMerge{std::move(parts)}, data_hash));
}

DataExpr DataExpr::split(std::size_t k, std::size_t n, DataExpr e)
{
    if (n == 0 || k == 0 || k > n) throw Error("split component out of range");
    return DataExpr(make_node<DataNode>(DSplit{k, n, std::move(e)}, data_hash));
}

const DataNode &DataExpr::node() const { return *p_; }
std::size_t DataExpr::hash() const { return p_->hash; }

bool operator==(const DataExpr &a, const DataExpr &b)
{
    return a.p_ == b.p_ || (a.p_->hash == b.p_->hash && a.p_->v == b.p_->v);
}

// --- Cond -------------------------------------------------------------------

Cond Cond::truth() { return Cond(make_node<CondNode>(CConst{true}, cond_hash)); }
Cond Cond::falsity() { return Cond(make_node<CondNode>(CConst{false}, cond_hash)); }

Cond Cond::prop(RamOp p, DataExpr e, Bit expected)
{
    if (!p.is_comparison()) throw Error("operator " + p.to_string() + " is not a comparison");
    return Cond(make_node<CondNode>(CProp{std::move(p), std::move(e), expected}, cond_hash));
}

Cond Cond::data_eq(DataExpr e1, DataExpr e2) { return Cond(make_node<CondNode>(CEq{std::move(e1), std::move(e2)}, cond_hash)); }
Cond Cond::negate(Cond c) { return Cond(make_node<CondNode>(CNot{std::move(c)}, cond_hash)); }
Cond Cond::conj(Cond a, Cond b)
{
    return Cond(make_node<CondNode>(CBin{CondConnective::And, std::move(a), std::move(b)}, cond_hash));
}
Cond Cond::disj(Cond a, Cond b)
{
    return Cond(make_node<CondNode>(CBin{CondConnective::Or, std::move(a), std::move(b)}, cond_hash));
}
Cond Cond::implies(Cond a, Cond b)
{
    return Cond(make_node<CondNode>(CBin{CondConnective::Implies, std::move(a), std::move(b)}, cond_hash));
}

const CondNode &Cond::node() const { return *p_; }
std::size_t Cond::hash() const { return p_->hash; }
bool Cond::is_true() const
{
    auto c = std::get_if<CConst>(&p_->v);
    return c && c->value;
}

bool operator==(const Cond &a, const Cond &b)
{
    return a.p_ == b.p_ || (a.p_->hash == b.p_->hash && a.p_->v == b.p_->v);
}

// --- Actions ----------------------------------------------------------------

std::string ActionLabel::to_string() const
{
    switch (kind) {
    case Kind::Tau:
        return "tau";
    case Kind::Plain:
        return name;
    case Kind::Data: {
        std::string s = name + "(";
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) s += ", ";
            s += args[i].to_string();
        }
        return s + ")";
    }
    case Kind::Assign:
        return name + " := " + args.front().to_string();
    }
    return {};
}

std::size_t ActionLabel::hash() const
{
    std::size_t h = static_cast<std::size_t>(kind);
    mix(h, str_hash(name));
    for (auto &a : args) mix(h, a.hash());
    return h;
}

bool ActionSet::contains(const ActionLabel &l, const std::set<std::string> &mentions) const
{
    if (l.is_tau()) return tau;
    bool in = false;
    if (l.kind == ActionLabel::Kind::Assign) {
        in = assigned.count(l.name) > 0;
        for (auto &v : mentioning)
            if (v == l.name || mentions.count(v)) in = true;
    } else {
        in = names.count(l.name) > 0;
    }
    return complement ? !in : in;
}

std::string ActionSet::to_string() const
{
    std::string body;
    auto add = [&](const std::string &s) {
        if (!body.empty()) body += ", ";
        body += s;
    };
    for (auto &n : names) add(n);
    for (auto &v : assigned) add(v + ":=");
    for (auto &v : mentioning) add("~" + v);
    if (tau) add("tau");
    return std::string("{") + (complement ? "-" : "") + body + "}";
}

std::size_t ActionSet::hash() const
{
    std::size_t h = complement * 2 + tau;
    for (auto &n : names) mix(h, str_hash(n));
    for (auto &n : assigned) mix(h, str_hash(n) + 1);
    for (auto &n : mentioning) mix(h, str_hash(n) + 2);
    return h;
}

// --- Term -------------------------------------------------------------------

Term Term::eps() { return Term(make_node<TermNode>(TEmpty{}, term_hash)); }
Term Term::delta() { return Term(make_node<TermNode>(TDead{}, term_hash)); }
Term Term::tau() { return Term(make_node<TermNode>(TSilent{}, term_hash)); }
Term Term::act(std::string name) { return Term(make_node<TermNode>(TAct{std::move(name)}, term_hash)); }
Term Term::data_act(std::string name, std::vector<DataExpr> args)
{
    return Term(make_node<TermNode>(TDataAct{std::move(name), std::move(args)}, term_hash));
}
Term Term::assign(std::string var, DataExpr e)
{
    return Term(make_node<TermNode>(TAssign{std::move(var), std::move(e)}, term_hash));
}

Term Term::alt(Term x, Term y) { return binary(BinaryOp::Alt, std::move(x), std::move(y)); }
Term Term::seq(Term x, Term y) { return binary(BinaryOp::Seq, std::move(x), std::move(y)); }
Term Term::par(Term x, Term y) { return binary(BinaryOp::Par, std::move(x), std::move(y)); }
Term Term::left_merge(Term x, Term y) { return binary(BinaryOp::LeftMerge, std::move(x), std::move(y)); }
Term Term::comm_merge(Term x, Term y) { return binary(BinaryOp::CommMerge, std::move(x), std::move(y)); }
Term Term::sync_merge(Term x, Term y) { return binary(BinaryOp::SyncMerge, std::move(x), std::move(y)); }

Term Term::encap(ActionSet h, Term x) { return Term(make_node<TermNode>(TEncap{std::move(h), std::move(x)}, term_hash)); }
Term Term::abstr(ActionSet i, Term x) { return Term(make_node<TermNode>(TAbstr{std::move(i), std::move(x)}, term_hash)); }
Term Term::guard(Cond c, Term x) { return Term(make_node<TermNode>(TGuard{std::move(c), std::move(x)}, term_hash)); }
Term Term::eval(Valuation rho, Term x)
{
    for (auto it = rho.begin(); it != rho.end();) {
        if (it->second.all_empty())
            it = rho.erase(it);
        else
            ++it;
    }
    return Term(make_node<TermNode>(TEval{std::move(rho), std::move(x)}, term_hash));
}
Term Term::var(std::string name) { return Term(make_node<TermNode>(TVar{std::move(name)}, term_hash)); }
Term Term::rec(std::string name, std::shared_ptr<const RecSpec> spec)
{
    if (!spec || !spec->has(name)) throw Error("recursion variable " + name + " is not defined by the specification");
    return Term(make_node<TermNode>(TRec{std::move(name), std::move(spec)}, term_hash));
}
Term Term::proj(std::size_t n, Term x) { return Term(make_node<TermNode>(TProj{n, std::move(x)}, term_hash)); }
Term Term::rename(RenameMap f, Term x)
{
    for (auto it = f.begin(); it != f.end();) {
        if (it->first == it->second)
            it = f.erase(it);
        else
            ++it;
    }
    return Term(make_node<TermNode>(TRename{std::move(f), std::move(x)}, term_hash));
}

Term Term::alt_of(const std::vector<Term> &summands)
{
    if (summands.empty()) return delta();
    Term acc = summands.back();
    for (std::size_t i = summands.size() - 1; i-- > 0;) acc = alt(summands[i], acc);
    return acc;
}

Term Term::binary(BinaryOp op, Term x, Term y)
{
    return Term(make_node<TermNode>(TBinary{op, std::move(x), std::move(y)}, term_hash));
}

const TermNode &Term::node() const { return *p_; }
std::size_t Term::hash() const { return p_->hash; }

bool operator==(const Term &a, const Term &b)
{
    return a.p_ == b.p_ || (a.p_->hash == b.p_->hash && a.p_->v == b.p_->v);
}

bool operator==(const TRec &a, const TRec &b)
{
    return a.name == b.name && (a.spec == b.spec || *a.spec == *b.spec);
}

// --- RecSpec ----------------------------------------------------------------

RecSpec::RecSpec(std::vector<Equation> equations) : eqs_(std::move(equations))
{
    for (std::size_t i = 0; i < eqs_.size(); ++i) {
        if (!index_.emplace(eqs_[i].first, i).second)
            throw Error("recursion variable " + eqs_[i].first + " defined twice");
        mix(hash_, str_hash(eqs_[i].first));
        mix(hash_, eqs_[i].second.hash());
    }
}

const Term *RecSpec::find(const std::string &name) const
{
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &eqs_[it->second].second;
}

std::shared_ptr<const RecSpec> make_spec(std::vector<RecSpec::Equation> equations)
{
    return std::make_shared<const RecSpec>(std::move(equations));
}

// --- Evaluation -------------------------------------------------------------

MemState evaluate(const DataExpr &e, const Valuation *rho)
{
    return std::visit(
        overloaded{
            [&](const DVar &x) -> MemState {
                if (!rho) throw Error("condition not decidable without valuation (flexible variable " + x.name + ")");
                auto it = rho->find(x.name);
                return it == rho->end() ? ims() : it->second;
            },
            [&](const DLit &x) -> MemState { return x.value; },
            [&](const DUpd &x) -> MemState { return evaluate(x.base, rho).override(x.idx, x.val); },
            [&](const DApply &x) -> MemState {
                if (x.args.size() == 2) return apply_shared(x.op, evaluate(x.args[0], rho), evaluate(x.args[1], rho));
                if (auto ini = x.op.as<Ini>()) return apply_ini(ini->memory);
                return apply_op(x.op, evaluate(x.args[0], rho));
            },
            [&](const DMerge &x) -> MemState {
                std::vector<MemState> parts;
                for (auto &p : x.parts) parts.push_back(evaluate(p, rho));
                return merge_n(parts);
            },
            [&](const DSplit &x) -> MemState { return split_n(evaluate(x.e, rho), x.n)[x.k - 1]; },
        },
        e.node().v);
}

bool evaluate(const Cond &c, const Valuation *rho)
{
    return std::visit(overloaded{
                          [&](const CConst &x) { return x.value; },
                          [&](const CProp &x) { return apply_prop(x.op, evaluate(x.e, rho)) == x.expected; },
                          [&](const CEq &x) { return evaluate(x.lhs, rho) == evaluate(x.rhs, rho); },
                          [&](const CNot &x) { return !evaluate(x.c, rho); },
                          [&](const CBin &x) {
                              bool a = evaluate(x.lhs, rho);
                              switch (x.op) {
                              case CondConnective::And:
                                  return a && evaluate(x.rhs, rho);
                              case CondConnective::Or:
                                  return a || evaluate(x.rhs, rho);
                              case CondConnective::Implies:
                                  return !a || evaluate(x.rhs, rho);
                              }
                              return false;
                          },
                      },
                      c.node().v);
}

namespace {

void collect(const DataExpr &e, std::set<std::string> &out)
{
    std::visit(overloaded{
                   [&](const DVar &x) { out.insert(x.name); },
                   [&](const DLit &) {},
                   [&](const DUpd &x) { collect(x.base, out); },
                   [&](const DApply &x) {
                       for (auto &a : x.args) collect(a, out);
                   },
                   [&](const DMerge &x) {
                       for (auto &a : x.parts) collect(a, out);
                   },
                   [&](const DSplit &x) { collect(x.e, out); },
               },
               e.node().v);
}

void collect(const Cond &c, std::set<std::string> &out)
{
    std::visit(overloaded{
                   [&](const CConst &) {},
                   [&](const CProp &x) { collect(x.e, out); },
                   [&](const CEq &x) {
                       collect(x.lhs, out);
                       collect(x.rhs, out);
                   },
                   [&](const CNot &x) { collect(x.c, out); },
                   [&](const CBin &x) {
                       collect(x.lhs, out);
                       collect(x.rhs, out);
                   },
               },
               c.node().v);
}

} // namespace

std::set<std::string> flexible_vars(const DataExpr &e)
{
    std::set<std::string> out;
    collect(e, out);
    return out;
}

std::set<std::string> flexible_vars(const Cond &c)
{
    std::set<std::string> out;
    collect(c, out);
    return out;
}

bool is_closed(const DataExpr &e) { return flexible_vars(e).empty(); }

} // namespace deacp
