#include "deacp/semantics.hpp"

#include "deacp/error.hpp"
#include "deacp/shapes.hpp"
#include "deacp/syntax.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace deacp {

Communication Communication::standard()
{
    Communication c;
    c.define("sync", "sync", "synced");
    return c;
}

void Communication::define(const std::string &a, const std::string &b, const std::string &c)
{
    table_[{a, b}] = c;
    table_[{b, a}] = c;
}

std::optional<std::string> Communication::operator()(const std::string &a, const std::string &b) const
{
    auto it = table_.find({a, b});
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

namespace {

constexpr int max_unfoldings = 256;

const ActionSet &sync_only()
{
    static const ActionSet s = ActionSet::of({"sync"});
    return s;
}

std::string rename_name(const RenameMap &f, const std::string &a)
{
    auto it = f.find(a);
    return it == f.end() ? a : it->second;
}

ActionLabel relabel(const RenameMap &f, ActionLabel l)
{
    if (l.kind == ActionLabel::Kind::Plain || l.kind == ActionLabel::Kind::Data) l.name = rename_name(f, l.name);
    return l;
}

const RenameMap &synced_to_sync()
{
    static const RenameMap f{{"synced", "sync"}};
    return f;
}

std::set<std::string> united(const std::set<std::string> &a, const std::set<std::string> &b)
{
    std::set<std::string> out = a;
    out.insert(b.begin(), b.end());
    return out;
}

Term par_residual(const Term &x, const Term &y)
{
    if (x.is<TEmpty>()) return y;
    if (y.is<TEmpty>()) return x;
    return Term::par(x, y);
}

} // namespace

std::optional<ActionLabel> communicate(const Communication &gamma, const ActionLabel &a, const ActionLabel &b)
{
    using K = ActionLabel::Kind;
    if (a.kind == K::Plain && b.kind == K::Plain) {
        if (auto c = gamma(a.name, b.name)) return ActionLabel::plain(*c);
        return std::nullopt;
    }
    if (a.kind == K::Data && b.kind == K::Data) {
        if (a.args.size() != b.args.size() || a.args != b.args) return std::nullopt;
        if (auto c = gamma(a.name, b.name)) return ActionLabel::data(*c, a.args);
        return std::nullopt;
    }
    return std::nullopt;
}

StepResult Semantics::step(const Term &t, const Valuation *rho) const { return step_at(t, rho, 0); }

StepResult Semantics::step_at(const Term &t, const Valuation *rho, int unfoldings) const
{
    StepResult r;
    auto recurse = [&](const Term &x) { return step_at(x, rho, unfoldings); };

    std::visit(
        [&](const auto &n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, TEmpty>) {
                r.success = true;
            } else if constexpr (std::is_same_v<N, TDead>) {
            } else if constexpr (std::is_same_v<N, TSilent>) {
                r.steps.push_back({ActionLabel::tau(), {}, Term::eps()});
            } else if constexpr (std::is_same_v<N, TAct>) {
                r.steps.push_back({ActionLabel::plain(n.name), {}, Term::eps()});
            } else if constexpr (std::is_same_v<N, TDataAct>) {
                std::vector<MemState> args;
                std::set<std::string> mentions;
                for (auto &e : n.args) {
                    args.push_back(evaluate(e, rho));
                    auto fv = flexible_vars(e);
                    mentions.insert(fv.begin(), fv.end());
                }
                r.steps.push_back({ActionLabel::data(n.name, std::move(args)), std::move(mentions), Term::eps()});
            } else if constexpr (std::is_same_v<N, TAssign>) {
                auto mentions = flexible_vars(n.e);
                mentions.insert(n.var);
                r.steps.push_back({ActionLabel::assign(n.var, evaluate(n.e, rho)), std::move(mentions), Term::eps()});
            } else if constexpr (std::is_same_v<N, TBinary>) {
                switch (n.op) {
                case BinaryOp::Alt: {
                    r = recurse(n.lhs);
                    StepResult b = recurse(n.rhs);
                    r.success = r.success || b.success;
                    for (auto &s : b.steps) r.steps.push_back(std::move(s));
                    break;
                }
                case BinaryOp::Seq: {
                    StepResult a = recurse(n.lhs);
                    for (auto &s : a.steps)
                        r.steps.push_back({std::move(s.label), std::move(s.mentions),
                                           s.target.template is<TEmpty>() ? n.rhs : Term::seq(s.target, n.rhs)});
                    if (a.success) {
                        StepResult b = recurse(n.rhs);
                        r.success = b.success;
                        for (auto &s : b.steps) r.steps.push_back(std::move(s));
                    }
                    break;
                }
                case BinaryOp::Par:
                case BinaryOp::LeftMerge:
                case BinaryOp::CommMerge: {
                    StepResult a = recurse(n.lhs), b = recurse(n.rhs);
                    if (n.op == BinaryOp::Par) r.success = a.success && b.success;
                    if (n.op != BinaryOp::CommMerge)
                        for (auto &s : a.steps)
                            r.steps.push_back({s.label, s.mentions, par_residual(s.target, n.rhs)});
                    if (n.op == BinaryOp::Par)
                        for (auto &s : b.steps)
                            r.steps.push_back({s.label, s.mentions, par_residual(n.lhs, s.target)});
                    if (n.op != BinaryOp::LeftMerge)
                        for (auto &sa : a.steps)
                            for (auto &sb : b.steps)
                                if (auto c = communicate(gamma_, sa.label, sb.label))
                                    r.steps.push_back({*c, united(sa.mentions, sb.mentions),
                                                       par_residual(sa.target, sb.target)});
                    break;
                }
                case BinaryOp::SyncMerge: {
                    StepResult a = recurse(n.lhs), b = recurse(n.rhs);
                    r.success = a.success && b.success;
                    const RenameMap &f = synced_to_sync();
                    auto admit = [&](const ActionLabel &l) { return !sync_only().contains(l, {}); };
                    for (auto &s : a.steps) {
                        ActionLabel l = relabel(f, s.label);
                        if (admit(l)) r.steps.push_back({relabel(f, l), s.mentions, Term::sync_merge(s.target, n.rhs)});
                    }
                    for (auto &s : b.steps) {
                        ActionLabel l = relabel(f, s.label);
                        if (admit(l)) r.steps.push_back({relabel(f, l), s.mentions, Term::sync_merge(n.lhs, s.target)});
                    }
                    for (auto &sa : a.steps)
                        for (auto &sb : b.steps)
                            if (auto c = communicate(gamma_, relabel(f, sa.label), relabel(f, sb.label)); c && admit(*c))
                                r.steps.push_back({relabel(f, *c), united(sa.mentions, sb.mentions),
                                                   Term::sync_merge(sa.target, sb.target)});
                    break;
                }
                }
            } else if constexpr (std::is_same_v<N, TEncap>) {
                StepResult a = recurse(n.t);
                r.success = a.success;
                for (auto &s : a.steps)
                    if (!n.h.contains(s.label, s.mentions))
                        r.steps.push_back({std::move(s.label), std::move(s.mentions),
                                           s.target.template is<TEmpty>() ? s.target : Term::encap(n.h, s.target)});
            } else if constexpr (std::is_same_v<N, TAbstr>) {
                StepResult a = recurse(n.t);
                r.success = a.success;
                for (auto &s : a.steps) {
                    bool hide = n.i.contains(s.label, s.mentions);
                    r.steps.push_back({hide ? ActionLabel::tau() : std::move(s.label), std::move(s.mentions),
                                       s.target.template is<TEmpty>() ? s.target : Term::abstr(n.i, s.target)});
                }
            } else if constexpr (std::is_same_v<N, TRename>) {
                StepResult a = recurse(n.t);
                r.success = a.success;
                for (auto &s : a.steps)
                    r.steps.push_back({relabel(n.f, std::move(s.label)), std::move(s.mentions),
                                       s.target.template is<TEmpty>() ? s.target : Term::rename(n.f, s.target)});
            } else if constexpr (std::is_same_v<N, TGuard>) {
                if (evaluate(n.c, rho)) r = recurse(n.t);
            } else if constexpr (std::is_same_v<N, TEval>) {
                StepResult a = step_at(n.t, &n.rho, unfoldings);
                r.success = a.success;
                for (auto &s : a.steps) {
                    Valuation next = n.rho;
                    if (s.label.kind == ActionLabel::Kind::Assign) next[s.label.name] = s.label.args.front();
                    Term target = Term::eval(std::move(next), s.target);
                    r.steps.push_back({std::move(s.label), std::move(s.mentions), std::move(target)});
                }
            } else if constexpr (std::is_same_v<N, TProj>) {
                StepResult a = recurse(n.t);
                r.success = a.success;
                for (auto &s : a.steps) {
                    if (s.label.is_tau()) {
                        r.steps.push_back({std::move(s.label), std::move(s.mentions),
                                           s.target.template is<TEmpty>() ? s.target : Term::proj(n.n, s.target)});
                    } else if (n.n == 0) {
                        r.success = true;
                    } else {
                        r.steps.push_back({std::move(s.label), std::move(s.mentions),
                                           s.target.template is<TEmpty>() ? s.target : Term::proj(n.n - 1, s.target)});
                    }
                }
            } else if constexpr (std::is_same_v<N, TRec>) {
                if (unfoldings >= max_unfoldings) throw Error("unguarded recursion at " + n.name);
                r = step_at(subst_rec(t), rho, unfoldings + 1);
            } else if constexpr (std::is_same_v<N, TVar>) {
                throw Error("free recursion variable " + n.name);
            }
        },
        t.node().v);
    return r;
}

// --- LTS ------------------------------------------------------------------

Lts build_lts(const Term &t, const LtsOptions &opts)
{
    Semantics sem(opts.gamma);
    Lts l;
    std::unordered_map<Term, std::size_t> index;
    auto intern = [&](const Term &s) -> std::optional<std::size_t> {
        auto it = index.find(s);
        if (it != index.end()) return it->second;
        if (l.states.size() >= opts.max_states) return std::nullopt;
        std::size_t id = l.states.size();
        index.emplace(s, id);
        l.states.push_back(s);
        l.success.push_back(false);
        l.out.emplace_back();
        return id;
    };
    intern(t);
    for (std::size_t cur = 0; cur < l.states.size(); ++cur) {
        StepResult r = sem.step(l.states[cur]);
        l.success[cur] = r.success;
        // Deduplicate (label, target) pairs, merging their mention sets.
        std::map<std::pair<ActionLabel, std::size_t>, std::size_t> seen;
        for (auto &s : r.steps) {
            auto dst = intern(s.target);
            if (!dst) {
                l.exploded = true;
                return l;
            }
            auto key = std::make_pair(s.label, *dst);
            if (auto it = seen.find(key); it != seen.end()) {
                auto &m = l.transitions[it->second].mentions;
                m.insert(s.mentions.begin(), s.mentions.end());
                continue;
            }
            seen.emplace(key, l.transitions.size());
            l.out[cur].push_back(l.transitions.size());
            l.transitions.push_back({cur, std::move(s.label), *dst, std::move(s.mentions)});
        }
    }
    return l;
}

Lts build_lts(const Term &t, const Valuation &rho, std::size_t max_states)
{
    LtsOptions opts;
    opts.max_states = max_states;
    return build_lts(Term::eval(rho, t), opts);
}

namespace {

// Topological order of the states reachable from the initial state, or
// nullopt when there is a cycle.
std::optional<std::vector<std::size_t>> topological(const Lts &l)
{
    std::vector<int> colour(l.size(), 0);
    std::vector<std::size_t> order;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{l.initial, 0}};
    colour[l.initial] = 1;
    while (!stack.empty()) {
        auto &[s, k] = stack.back();
        if (k < l.out[s].size()) {
            std::size_t d = l.transitions[l.out[s][k++]].dst;
            if (colour[d] == 1) return std::nullopt;
            if (colour[d] == 0) {
                colour[d] = 1;
                stack.emplace_back(d, 0);
            }
        } else {
            colour[s] = 2;
            order.push_back(s);
            stack.pop_back();
        }
    }
    std::reverse(order.begin(), order.end());
    return order;
}

void require_complete(const Lts &l)
{
    if (l.exploded)
        throw Undecided("undecided at this bound (" + std::to_string(l.size()) + " states explored)");
}

} // namespace

bool is_acyclic(const Lts &l) { return topological(l).has_value(); }

bool eventually_halts(const Lts &l)
{
    require_complete(l);
    auto order = topological(l);
    if (!order) return false;
    for (std::size_t s : *order)
        if (l.out[s].empty() && !l.success[s]) return false;
    return true;
}

bool not_tau(const Transition &t) { return !t.label.is_tau(); }

std::size_t depth(const Lts &l, const TransitionFilter &counts)
{
    require_complete(l);
    auto order = topological(l);
    if (!order) throw Error("depth undefined: the transition system has a cycle");
    std::vector<std::size_t> longest(l.size(), 0);
    for (auto it = order->rbegin(); it != order->rend(); ++it) {
        std::size_t best = 0;
        for (std::size_t ti : l.out[*it]) {
            const Transition &tr = l.transitions[ti];
            best = std::max(best, longest[tr.dst] + (counts(tr) ? 1 : 0));
        }
        longest[*it] = best;
    }
    return longest[l.initial];
}

// --- branching bisimulation -------------------------------------------------

namespace {

struct Graph {
    std::size_t n = 0;
    std::vector<bool> success;
    // (label id, target); label id 0 is tau.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
};

void add_lts(Graph &g, const Lts &l, std::map<ActionLabel, std::size_t> &labels)
{
    std::size_t base = g.n;
    g.n += l.size();
    g.success.insert(g.success.end(), l.success.begin(), l.success.end());
    g.out.resize(g.n);
    for (auto &t : l.transitions) {
        std::size_t id = 0;
        if (!t.label.is_tau()) id = labels.emplace(t.label, labels.size() + 1).first->second;
        g.out[base + t.src].emplace_back(id, base + t.dst);
    }
}

// Signature refinement for branching bisimilarity.
std::vector<std::size_t> branching_partition(const Graph &g)
{
    std::vector<std::size_t> block(g.n, 0);
    std::size_t blocks = 1;
    using Sig = std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>;
    for (;;) {
        // Inert tau closure: states reachable through tau steps that stay in
        // the current block.
        std::vector<Sig> sig(g.n);
        for (std::size_t s = 0; s < g.n; ++s) {
            std::set<std::pair<std::size_t, std::size_t>> pairs;
            bool tick = false;
            std::vector<std::size_t> stack{s};
            std::vector<bool> seen(g.n, false);
            seen[s] = true;
            while (!stack.empty()) {
                std::size_t u = stack.back();
                stack.pop_back();
                if (g.success[u]) tick = true;
                for (auto &[a, v] : g.out[u]) {
                    if (a == 0 && block[v] == block[s]) {
                        if (!seen[v]) {
                            seen[v] = true;
                            stack.push_back(v);
                        }
                    } else {
                        pairs.emplace(a, block[v]);
                    }
                }
            }
            sig[s] = {block[s] * 2 + (tick ? 1 : 0), {pairs.begin(), pairs.end()}};
        }
        std::map<Sig, std::size_t> ids;
        std::vector<std::size_t> next(g.n);
        for (std::size_t s = 0; s < g.n; ++s) next[s] = ids.emplace(sig[s], ids.size()).first->second;
        if (ids.size() == blocks) return next;
        blocks = ids.size();
        block = std::move(next);
    }
}

} // namespace

bool rb_bisim(const Lts &a, const Lts &b)
{
    require_complete(a);
    require_complete(b);
    Graph g;
    std::map<ActionLabel, std::size_t> labels;
    add_lts(g, a, labels);
    add_lts(g, b, labels);
    auto block = branching_partition(g);
    std::size_t ra = a.initial, rb = a.size() + b.initial;
    if (g.success[ra] != g.success[rb]) return false;
    auto moves = [&](std::size_t s) {
        std::set<std::pair<std::size_t, std::size_t>> m;
        for (auto &[l, v] : g.out[s]) m.emplace(l, block[v]);
        return m;
    };
    return block[ra] == block[rb] && moves(ra) == moves(rb);
}

// --- basic terms ------------------------------------------------------------

Term label_term(const ActionLabel &l)
{
    switch (l.kind) {
    case ActionLabel::Kind::Tau:
        return Term::tau();
    case ActionLabel::Kind::Plain:
        return Term::act(l.name);
    case ActionLabel::Kind::Data: {
        std::vector<DataExpr> args;
        for (auto &m : l.args) args.push_back(DataExpr::lit(m));
        return Term::data_act(l.name, std::move(args));
    }
    case ActionLabel::Kind::Assign:
        return Term::assign(l.name, DataExpr::lit(l.args.front()));
    }
    return Term::delta();
}

Term normalize_basic(const Lts &l)
{
    require_complete(l);
    auto order = topological(l);
    if (!order) throw Error("no finite basic form: the transition system has a cycle");
    std::vector<std::optional<Term>> form(l.size());
    for (auto it = order->rbegin(); it != order->rend(); ++it) {
        std::vector<Term> summands;
        for (std::size_t ti : l.out[*it]) {
            const Transition &tr = l.transitions[ti];
            summands.push_back(Term::guard(Cond::truth(), Term::seq(label_term(tr.label), *form[tr.dst])));
        }
        if (l.success[*it]) summands.push_back(Term::guard(Cond::truth(), Term::eps()));
        form[*it] = Term::alt_of(summands);
    }
    return *form[l.initial];
}

Term normalize_basic(const Term &t, const Valuation &rho, std::size_t max_states)
{
    return normalize_basic(build_lts(t, rho, max_states));
}

Term sync_merge_expand(const Term &x, const Term &y)
{
    const RenameMap &f = synced_to_sync();
    return Term::rename(f, Term::encap(sync_only(), Term::par(Term::rename(f, x), Term::rename(f, y))));
}

// --- export -----------------------------------------------------------------

std::string lts_to_json(const Lts &l)
{
    nlohmann::ordered_json j;
    j["initial"] = l.initial;
    j["exploded"] = l.exploded;
    auto states = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < l.size(); ++s) {
        nlohmann::ordered_json st;
        st["id"] = s;
        st["success"] = static_cast<bool>(l.success[s]);
        st["term"] = to_string(l.states[s]);
        states.push_back(std::move(st));
    }
    j["states"] = std::move(states);
    auto edges = nlohmann::ordered_json::array();
    for (auto &t : l.transitions) {
        nlohmann::ordered_json e;
        e["src"] = t.src;
        e["label"] = t.label.to_string();
        e["dst"] = t.dst;
        edges.push_back(std::move(e));
    }
    j["transitions"] = std::move(edges);
    return j.dump(2) + "\n";
}

std::string lts_to_dot(const Lts &l)
{
    auto quote = [](const std::string &s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    };
    std::ostringstream os;
    os << "digraph lts {\n  node [shape=circle];\n  start [shape=point];\n";
    for (std::size_t s = 0; s < l.size(); ++s)
        os << "  s" << s << " [label=\"" << s << "\"" << (l.success[s] ? ", shape=doublecircle" : "") << "];\n";
    os << "  start -> s" << l.initial << ";\n";
    for (auto &t : l.transitions) os << "  s" << t.src << " -> s" << t.dst << " [label=" << quote(t.label.to_string()) << "];\n";
    os << "}\n";
    return os.str();
}

} // namespace deacp
