#pragma once

#include "deacp/terms.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace deacp {

// Communication function on basic action names; symmetric, undefined pairs
// communicate to delta.
class Communication {
public:
    // The instance with sync | sync = synced only.
    static Communication standard();
    static Communication none() { return {}; }

    void define(const std::string &a, const std::string &b, const std::string &c);
    std::optional<std::string> operator()(const std::string &a, const std::string &b) const;

private:
    std::map<std::pair<std::string, std::string>, std::string> table_;
};

// Joint label of two simultaneous steps: plain actions per gamma, data
// actions when arities and evaluated arguments agree. Assignments and tau
// never communicate.
std::optional<ActionLabel> communicate(const Communication &gamma, const ActionLabel &a, const ActionLabel &b);

struct Step {
    ActionLabel label;
    // Flexible variables occurring in the action term before evaluation.
    std::set<std::string> mentions;
    Term target;
};

struct StepResult {
    bool success = false;
    std::vector<Step> steps;
};

class Semantics {
public:
    explicit Semantics(Communication gamma = Communication::standard()) : gamma_(std::move(gamma)) {}

    // Outgoing steps of `t`. A null valuation means `t` is not inside an
    // evaluation context; reading a flexible variable then fails.
    StepResult step(const Term &t, const Valuation *rho = nullptr) const;

    const Communication &communication() const { return gamma_; }

private:
    Communication gamma_;
    StepResult step_at(const Term &t, const Valuation *rho, int unfoldings) const;
};

struct Transition {
    std::size_t src;
    ActionLabel label;
    std::size_t dst;
    std::set<std::string> mentions;
};

struct Lts {
    std::vector<Term> states;
    std::vector<bool> success;
    std::vector<Transition> transitions;
    // Outgoing transition indices per state, in exploration order.
    std::vector<std::vector<std::size_t>> out;
    std::size_t initial = 0;
    // Exploration stopped at the state bound; the graph is a prefix.
    bool exploded = false;

    std::size_t size() const { return states.size(); }
};

struct LtsOptions {
    std::size_t max_states = 100000;
    Communication gamma = Communication::standard();
};

// Breadth-first exploration from `t`, in summand order.
Lts build_lts(const Term &t, const LtsOptions &opts = {});
// Exploration from eval{rho}(t).
Lts build_lts(const Term &t, const Valuation &rho, std::size_t max_states);

bool is_acyclic(const Lts &l);
// Acyclic and every state without outgoing transitions is successful.
// Throws Undecided on an exploded LTS.
bool eventually_halts(const Lts &l);

using TransitionFilter = std::function<bool(const Transition &)>;
bool not_tau(const Transition &t);

// Longest path counting the transitions accepted by `counts` (non-tau by
// default). Throws Error("depth undefined") when the LTS has a cycle.
std::size_t depth(const Lts &l, const TransitionFilter &counts = not_tau);

// Rooted branching bisimilarity of the initial states, with successful
// termination as an observable predicate.
bool rb_bisim(const Lts &a, const Lts &b);

// Basic term reading of an acyclic LTS: every state becomes the right-nested
// alternative of True :-> alpha . (target) per transition, plus True :-> eps
// when successful, or delta when there is nothing.
Term normalize_basic(const Lts &l);
Term normalize_basic(const Term &t, const Valuation &rho, std::size_t max_states);

// rename[synced->sync](encap{sync}(rename[synced->sync](x) || rename[synced->sync](y)))
Term sync_merge_expand(const Term &x, const Term &y);

// Concrete action label as an atomic action term.
Term label_term(const ActionLabel &l);

std::string lts_to_json(const Lts &l);
std::string lts_to_dot(const Lts &l);

} // namespace deacp
