#pragma once

#include "deacp/bits.hpp"
#include "deacp/memory.hpp"
#include "deacp/ramops.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace deacp {

// Flexible variable valuation. Variables absent from the map hold the
// all-empty memory.
using Valuation = std::map<std::string, MemState>;

std::size_t hash_valuation(const Valuation &rho);
std::string valuation_to_string(const Valuation &rho);

// ---------------------------------------------------------------------------
// Data expressions (sort D = RAM memory states)

struct DataNode;

class DataExpr {
public:
    static DataExpr var(std::string name);
    static DataExpr lit(MemState m);
    static DataExpr upd(DataExpr base, Natural idx, BitString val);
    // o(e): BinOp/UnOp, or Ini.
    static DataExpr apply(RamOp o, DataExpr e);
    // o(e_priv, e_shared): Load/Store.
    static DataExpr apply(RamOp o, DataExpr priv, DataExpr shared);
    // Interleaving of n memories into one (n-RAM operations are
    // expressed as split(k, n, o(merge(...)))).
    static DataExpr merge(std::vector<DataExpr> parts);
    // Component k (1-based) of a memory merged from n.
    static DataExpr split(std::size_t k, std::size_t n, DataExpr e);

    const DataNode &node() const;
    std::size_t hash() const;

    friend bool operator==(const DataExpr &a, const DataExpr &b);

private:
    explicit DataExpr(std::shared_ptr<const DataNode> p) : p_(std::move(p)) {}
    std::shared_ptr<const DataNode> p_;
};

struct DVar {
    std::string name;
    friend bool operator==(const DVar &, const DVar &) = default;
};
struct DLit {
    MemState value;
    friend bool operator==(const DLit &, const DLit &) = default;
};
struct DUpd {
    DataExpr base;
    Natural idx;
    BitString val;
    friend bool operator==(const DUpd &, const DUpd &) = default;
};
struct DApply {
    RamOp op;
    std::vector<DataExpr> args;
    friend bool operator==(const DApply &, const DApply &) = default;
};
struct DMerge {
    std::vector<DataExpr> parts;
    friend bool operator==(const DMerge &, const DMerge &) = default;
};
struct DSplit {
    std::size_t k, n;
    DataExpr e;
    friend bool operator==(const DSplit &, const DSplit &) = default;
};

struct DataNode {
    std::variant<DVar, DLit, DUpd, DApply, DMerge, DSplit> v;
    std::size_t hash = 0;
};

// ---------------------------------------------------------------------------
// Conditions (quantifier-free)

struct CondNode;

class Cond {
public:
    static Cond truth();
    static Cond falsity();
    // p(e) = b for a comparison operator p.
    static Cond prop(RamOp p, DataExpr e, Bit expected);
    static Cond data_eq(DataExpr e1, DataExpr e2);
    static Cond negate(Cond c);
    static Cond conj(Cond a, Cond b);
    static Cond disj(Cond a, Cond b);
    static Cond implies(Cond a, Cond b);

    const CondNode &node() const;
    std::size_t hash() const;
    bool is_true() const;

    friend bool operator==(const Cond &a, const Cond &b);

private:
    explicit Cond(std::shared_ptr<const CondNode> p) : p_(std::move(p)) {}
    std::shared_ptr<const CondNode> p_;
};

struct CConst {
    bool value;
    friend bool operator==(const CConst &, const CConst &) = default;
};
struct CProp {
    RamOp op;
    DataExpr e;
    Bit expected;
    friend bool operator==(const CProp &, const CProp &) = default;
};
struct CEq {
    DataExpr lhs, rhs;
    friend bool operator==(const CEq &, const CEq &) = default;
};
struct CNot {
    Cond c;
    friend bool operator==(const CNot &, const CNot &) = default;
};
enum class CondConnective { And, Or, Implies };
struct CBin {
    CondConnective op;
    Cond lhs, rhs;
    friend bool operator==(const CBin &, const CBin &) = default;
};

struct CondNode {
    std::variant<CConst, CProp, CEq, CNot, CBin> v;
    std::size_t hash = 0;
};

// ---------------------------------------------------------------------------
// Actions

// Concrete action label of a transition.
struct ActionLabel {
    enum class Kind { Tau, Plain, Data, Assign };
    Kind kind = Kind::Tau;
    std::string name;           // action name, or the assigned variable
    std::vector<MemState> args; // Data: arguments; Assign: the single value

    static ActionLabel tau() { return {}; }
    static ActionLabel plain(std::string n) { return {Kind::Plain, std::move(n), {}}; }
    static ActionLabel data(std::string n, std::vector<MemState> a) { return {Kind::Data, std::move(n), std::move(a)}; }
    static ActionLabel assign(std::string v, MemState value) { return {Kind::Assign, std::move(v), {std::move(value)}}; }

    bool is_tau() const { return kind == Kind::Tau; }
    std::string to_string() const;
    std::size_t hash() const;

    friend bool operator==(const ActionLabel &, const ActionLabel &) = default;
    friend auto operator<=>(const ActionLabel &, const ActionLabel &) = default;
};

// A set of atomic actions, given extensionally (action names, assignments
// to listed variables) and/or by the predicate "assignment in which a listed
// variable occurs". `complement` flips membership for atomic actions; tau is
// a member only when `tau` is set.
struct ActionSet {
    bool complement = false;
    bool tau = false;
    std::set<std::string> names;
    std::set<std::string> assigned;
    std::set<std::string> mentioning;

    static ActionSet of(std::set<std::string> names) { return {false, false, std::move(names), {}, {}}; }
    static ActionSet all_but(std::set<std::string> names) { return {true, false, std::move(names), {}, {}}; }
    // All atomic actions plus tau.
    static ActionSet all_with_tau() { return {true, true, {}, {}, {}}; }
    // Atomic actions in which `var` does not occur.
    static ActionSet not_mentioning(std::string var) { return {true, false, {}, {}, {std::move(var)}}; }

    // `mentions` are the flexible variables occurring in the unevaluated
    // action term (target and expression of an assignment).
    bool contains(const ActionLabel &l, const std::set<std::string> &mentions) const;

    std::string to_string() const;
    std::size_t hash() const;
    friend bool operator==(const ActionSet &, const ActionSet &) = default;
};

// Action renaming on action names. Assignments and tau are always fixed.
using RenameMap = std::map<std::string, std::string>;

// ---------------------------------------------------------------------------
// Process terms

struct TermNode;
class RecSpec;
enum class BinaryOp { Alt, Seq, Par, LeftMerge, CommMerge, SyncMerge };

class Term {
public:
    static Term eps();
    static Term delta();
    static Term tau();
    static Term act(std::string name);
    static Term data_act(std::string name, std::vector<DataExpr> args);
    static Term assign(std::string var, DataExpr e);
    static Term alt(Term x, Term y);
    static Term seq(Term x, Term y);
    static Term par(Term x, Term y);
    static Term left_merge(Term x, Term y);
    static Term comm_merge(Term x, Term y);
    static Term sync_merge(Term x, Term y);
    static Term encap(ActionSet h, Term x);
    static Term abstr(ActionSet i, Term x);
    static Term guard(Cond c, Term x);
    static Term eval(Valuation rho, Term x);
    static Term var(std::string name);
    static Term rec(std::string name, std::shared_ptr<const RecSpec> spec);
    static Term proj(std::size_t n, Term x);
    static Term rename(RenameMap f, Term x);

    // Right-nested alternatives; delta for an empty list.
    static Term alt_of(const std::vector<Term> &summands);

    const TermNode &node() const;
    std::size_t hash() const;

    template <class T> const T *as() const;
    template <class T> bool is() const { return as<T>() != nullptr; }

    friend bool operator==(const Term &a, const Term &b);

private:
    explicit Term(std::shared_ptr<const TermNode> p) : p_(std::move(p)) {}
    static Term binary(BinaryOp op, Term x, Term y);
    std::shared_ptr<const TermNode> p_;
};

struct TEmpty {
    friend bool operator==(const TEmpty &, const TEmpty &) = default;
};
struct TDead {
    friend bool operator==(const TDead &, const TDead &) = default;
};
struct TSilent {
    friend bool operator==(const TSilent &, const TSilent &) = default;
};
struct TAct {
    std::string name;
    friend bool operator==(const TAct &, const TAct &) = default;
};
struct TDataAct {
    std::string name;
    std::vector<DataExpr> args;
    friend bool operator==(const TDataAct &, const TDataAct &) = default;
};
struct TAssign {
    std::string var;
    DataExpr e;
    friend bool operator==(const TAssign &, const TAssign &) = default;
};

struct TBinary {
    BinaryOp op;
    Term lhs, rhs;
    friend bool operator==(const TBinary &, const TBinary &) = default;
};

struct TEncap {
    ActionSet h;
    Term t;
    friend bool operator==(const TEncap &, const TEncap &) = default;
};
struct TAbstr {
    ActionSet i;
    Term t;
    friend bool operator==(const TAbstr &, const TAbstr &) = default;
};
struct TGuard {
    Cond c;
    Term t;
    friend bool operator==(const TGuard &, const TGuard &) = default;
};
struct TEval {
    Valuation rho;
    Term t;
    friend bool operator==(const TEval &, const TEval &) = default;
};
struct TVar {
    std::string name;
    friend bool operator==(const TVar &, const TVar &) = default;
};
struct TRec {
    std::string name;
    std::shared_ptr<const RecSpec> spec;
    friend bool operator==(const TRec &a, const TRec &b);
};
struct TProj {
    std::size_t n;
    Term t;
    friend bool operator==(const TProj &, const TProj &) = default;
};
struct TRename {
    RenameMap f;
    Term t;
    friend bool operator==(const TRename &, const TRename &) = default;
};

struct TermNode {
    std::variant<TEmpty, TDead, TSilent, TAct, TDataAct, TAssign, TBinary, TEncap, TAbstr, TGuard, TEval,
                 TVar, TRec, TProj, TRename>
        v;
    std::size_t hash = 0;
};

template <class T> const T *Term::as() const { return std::get_if<T>(&node().v); }

// Recursive specification {X = t_X, ...}. Equation order is preserved for
// printing; lookups are by name.
class RecSpec {
public:
    using Equation = std::pair<std::string, Term>;

    explicit RecSpec(std::vector<Equation> equations);

    const std::vector<Equation> &equations() const { return eqs_; }
    const Term *find(const std::string &name) const;
    bool has(const std::string &name) const { return find(name) != nullptr; }
    std::size_t hash() const { return hash_; }

    friend bool operator==(const RecSpec &a, const RecSpec &b) { return a.hash_ == b.hash_ && a.eqs_ == b.eqs_; }

private:
    std::vector<Equation> eqs_;
    std::map<std::string, std::size_t> index_;
    std::size_t hash_ = 0;
};

std::shared_ptr<const RecSpec> make_spec(std::vector<RecSpec::Equation> equations);

// ---------------------------------------------------------------------------
// Evaluation of data and conditions

// Evaluates `e`; a null valuation means "outside any evaluation context",
// where flexible variables cannot be read.
MemState evaluate(const DataExpr &e, const Valuation *rho);
bool evaluate(const Cond &c, const Valuation *rho);

std::set<std::string> flexible_vars(const DataExpr &e);
std::set<std::string> flexible_vars(const Cond &c);
bool is_closed(const DataExpr &e);

} // namespace deacp

template <>
struct std::hash<deacp::Term> {
    std::size_t operator()(const deacp::Term &t) const noexcept { return t.hash(); }
};
