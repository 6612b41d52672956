#pragma once

#include "deacp/bits.hpp"
#include "deacp/semantics.hpp"
#include "deacp/terms.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace deacp {

enum class Measure { SUTM, SWM, APUTM, APWM, SPUTM, SPWM };
enum class ModelClass { RAMP, APRAMP, SPRAMP };

std::string measure_name(Measure m);
Measure parse_measure(const std::string &name);
std::string class_name(ModelClass c);
ModelClass measure_class(Measure m);

struct Classified {
    ModelClass cls;
    std::size_t degree;
};
// Throws Error when `t` belongs to none of the three classes.
Classified classify(const Term &t);

struct MeasureReport {
    Measure measure;
    std::size_t value = 0;
    // APUTM: the depth seen by each component.
    std::vector<std::size_t> per_component;
    std::size_t states = 0;
    std::size_t transitions = 0;

    std::string to_json() const;
};

// Evaluates `t` under `rho`. Throws Error when the measure does not fit the
// class of `t`, Undecided when the state bound is hit, and UndefinedMeasure
// when the evaluation does not eventually halt.
MeasureReport measure(const Term &t, Measure m, const Valuation &rho, std::size_t max_states = 100000);
MeasureReport measure(const Lts &l, Measure m, std::size_t degree);

std::size_t sutm(const Term &t, const Valuation &rho, std::size_t max_states = 100000);
std::size_t swm(const Term &t, const Valuation &rho, std::size_t max_states = 100000);
std::size_t aputm(const Term &t, const Valuation &rho, std::size_t max_states = 100000);
std::size_t apwm(const Term &t, const Valuation &rho, std::size_t max_states = 100000);
std::size_t sputm(const Term &t, const Valuation &rho, std::size_t max_states = 100000);
std::size_t spwm(const Term &t, const Valuation &rho, std::size_t max_states = 100000);

// a*n + b
struct AffineBound {
    Natural a = 0, b = 0;

    Natural operator()(std::size_t n) const { return a * n + b; }
    static AffineBound parse(const std::string &text);
    std::string to_string() const;
};

// Smallest-slack affine bound above the points (n, steps).
AffineBound fit_affine(const std::vector<std::pair<std::size_t, std::size_t>> &points);

using Bound = std::function<Natural(std::size_t)>;

struct FunctionSpec {
    std::size_t arity = 0;
    // nullopt where F is undefined.
    std::function<std::optional<BitString>(const std::vector<BitString> &)> oracle;
};

// Initial valuation for arguments w_1..w_n: RM holds w_k in register k.
Valuation input_valuation(const std::vector<BitString> &args);

struct InputVerdict {
    enum class Status { Pass, Fail, Undecided };
    std::vector<BitString> input;
    std::optional<BitString> expected;
    std::optional<BitString> got;
    std::optional<std::size_t> steps;
    std::optional<Natural> bound;
    Status status = Status::Pass;
    std::string note;
};

struct Verdict {
    std::vector<InputVerdict> rows;

    std::size_t count(InputVerdict::Status s) const;
    bool passed() const { return count(InputVerdict::Status::Pass) == rows.size(); }
    std::string table() const;
};

std::string status_name(InputVerdict::Status s);

// "t computes F in W steps" on the given inputs. An empty bound means no
// step limit. Undefined F values pass only when the evaluation provably does
// not halt; hitting the state bound yields Undecided.
Verdict check_computes(const Term &t, const FunctionSpec &f, const Bound &w,
                       const std::vector<std::vector<BitString>> &inputs, std::size_t max_states = 100000);

// t computes F and M(t, rho) <= V(total input length) for each defined input.
Verdict is_of_complexity(const Term &t, const FunctionSpec &f, const Bound &v, Measure m,
                         const std::vector<std::vector<BitString>> &inputs, std::size_t max_states = 100000);

// All bit strings of length <= max_len (including the empty one), shortest
// first, and their n-fold products.
std::vector<BitString> all_bitstrings(std::size_t max_len);
std::vector<std::vector<BitString>> all_inputs(std::size_t arity, std::size_t max_len);

} // namespace deacp
