#include "deacp/complexity.hpp"

#include "deacp/error.hpp"
#include "deacp/shapes.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <regex>
#include <sstream>

namespace deacp {

std::string measure_name(Measure m)
{
    switch (m) {
    case Measure::SUTM:
        return "sutm";
    case Measure::SWM:
        return "swm";
    case Measure::APUTM:
        return "aputm";
    case Measure::APWM:
        return "apwm";
    case Measure::SPUTM:
        return "sputm";
    case Measure::SPWM:
        return "spwm";
    }
    return {};
}

Measure parse_measure(const std::string &name)
{
    for (Measure m : {Measure::SUTM, Measure::SWM, Measure::APUTM, Measure::APWM, Measure::SPUTM, Measure::SPWM})
        if (measure_name(m) == name) return m;
    throw Error("unknown measure '" + name + "'");
}

std::string class_name(ModelClass c)
{
    switch (c) {
    case ModelClass::RAMP:
        return "RAMP";
    case ModelClass::APRAMP:
        return "APRAMP";
    case ModelClass::SPRAMP:
        return "SPRAMP";
    }
    return {};
}

ModelClass measure_class(Measure m)
{
    switch (m) {
    case Measure::SUTM:
    case Measure::SWM:
        return ModelClass::RAMP;
    case Measure::APUTM:
    case Measure::APWM:
        return ModelClass::APRAMP;
    case Measure::SPUTM:
    case Measure::SPWM:
        return ModelClass::SPRAMP;
    }
    return ModelClass::RAMP;
}

Classified classify(const Term &t)
{
    if (validate_ramp(t)) return {ModelClass::RAMP, 1};
    if (auto b = t.as<TBinary>(); b && b->op == BinaryOp::SyncMerge) return {ModelClass::SPRAMP, validate_spramp(t)};
    try {
        return {ModelClass::APRAMP, validate_apramp(t)};
    } catch (const Error &) {
    }
    try {
        return {ModelClass::SPRAMP, validate_spramp(t)};
    } catch (const Error &) {
    }
    throw Error("term is not a RAMP, APRAMP or SPRAMP term");
}

namespace {

bool is_sync(const Transition &t) { return t.label.kind == ActionLabel::Kind::Plain && t.label.name == "sync"; }

bool mentions(const Transition &t, const std::string &var)
{
    return t.label.kind == ActionLabel::Kind::Assign && (t.label.name == var || t.mentions.count(var) > 0);
}

} // namespace

MeasureReport measure(const Lts &l, Measure m, std::size_t degree)
{
    if (l.exploded)
        throw Undecided("undecided at this bound (" + std::to_string(l.size()) + " states explored)");
    if (!eventually_halts(l)) throw UndefinedMeasure(measure_name(m) + " is undefined: the evaluation does not eventually halt");
    MeasureReport r;
    r.measure = m;
    r.states = l.size();
    r.transitions = l.transitions.size();
    switch (m) {
    case Measure::SUTM:
    case Measure::SWM:
    case Measure::APWM:
        r.value = depth(l);
        break;
    case Measure::APUTM:
        for (std::size_t i = 1; i <= degree; ++i) {
            std::string rmi = "RM_" + std::to_string(i);
            r.per_component.push_back(depth(l, [&](const Transition &t) { return mentions(t, rmi); }));
        }
        r.value = r.per_component.empty() ? 0 : *std::max_element(r.per_component.begin(), r.per_component.end());
        break;
    case Measure::SPUTM:
        r.value = depth(l, is_sync);
        break;
    case Measure::SPWM:
        r.value = depth(l, [](const Transition &t) { return !t.label.is_tau() && !is_sync(t); });
        break;
    }
    return r;
}

MeasureReport measure(const Term &t, Measure m, const Valuation &rho, std::size_t max_states)
{
    Classified c = classify(t);
    if (c.cls != measure_class(m))
        throw Error("measure " + measure_name(m) + " requires " + class_name(measure_class(m)) + " class, term is " +
                    class_name(c.cls));
    return measure(build_lts(t, rho, max_states), m, c.degree);
}

std::size_t sutm(const Term &t, const Valuation &rho, std::size_t max_states)
{
    return measure(t, Measure::SUTM, rho, max_states).value;
}
std::size_t swm(const Term &t, const Valuation &rho, std::size_t max_states)
{
    return measure(t, Measure::SWM, rho, max_states).value;
}
std::size_t aputm(const Term &t, const Valuation &rho, std::size_t max_states)
{
    return measure(t, Measure::APUTM, rho, max_states).value;
}
std::size_t apwm(const Term &t, const Valuation &rho, std::size_t max_states)
{
    return measure(t, Measure::APWM, rho, max_states).value;
}
std::size_t sputm(const Term &t, const Valuation &rho, std::size_t max_states)
{
    return measure(t, Measure::SPUTM, rho, max_states).value;
}
std::size_t spwm(const Term &t, const Valuation &rho, std::size_t max_states)
{
    return measure(t, Measure::SPWM, rho, max_states).value;
}

std::string MeasureReport::to_json() const
{
    nlohmann::ordered_json j;
    j["measure"] = measure_name(measure);
    j["value"] = value;
    if (!per_component.empty()) j["per_component"] = per_component;
    j["states"] = states;
    j["transitions"] = transitions;
    return j.dump(2) + "\n";
}

// --- bounds -----------------------------------------------------------------

AffineBound AffineBound::parse(const std::string &text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    static const std::regex affine(R"(^(?:(\d*)\*?n)?(?:\+?(\d+))?$)");
    std::smatch m;
    if (s.empty() || !std::regex_match(s, m, affine)) throw Error("bound must have the form a*n+b, got '" + text + "'");
    AffineBound b;
    if (m[1].matched) b.a = m[1].length() ? Natural(m[1].str()) : Natural(1);
    if (m[2].matched) b.b = Natural(m[2].str());
    return b;
}

std::string AffineBound::to_string() const { return a.str() + "*n+" + b.str(); }

AffineBound fit_affine(const std::vector<std::pair<std::size_t, std::size_t>> &points)
{
    AffineBound best;
    if (points.empty()) return best;
    std::size_t top = 0;
    for (auto &[n, s] : points) top = std::max(top, s);
    Natural best_slack = -1;
    for (std::size_t a = 0; a <= top; ++a) {
        Natural b = 0;
        for (auto &[n, s] : points) b = std::max(b, Natural(s) - Natural(a) * n);
        Natural slack = 0;
        for (auto &[n, s] : points) slack += Natural(a) * n + b - s;
        if (best_slack < 0 || slack < best_slack) {
            best_slack = slack;
            best = {a, b};
        }
    }
    return best;
}

// --- computing functions ----------------------------------------------------

Valuation input_valuation(const std::vector<BitString> &args)
{
    MemState m;
    for (std::size_t k = 0; k < args.size(); ++k) m = m.override(k + 1, args[k]);
    return {{"RM", m}};
}

std::size_t Verdict::count(InputVerdict::Status s) const
{
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [&](auto &r) { return r.status == s; }));
}

std::string status_name(InputVerdict::Status s)
{
    switch (s) {
    case InputVerdict::Status::Pass:
        return "pass";
    case InputVerdict::Status::Fail:
        return "fail";
    case InputVerdict::Status::Undecided:
        return "undecided";
    }
    return {};
}

std::string Verdict::table() const
{
    std::ostringstream os;
    os << "input\texpected\tgot\tsteps\tbound\tverdict\n";
    for (auto &r : rows) {
        for (std::size_t i = 0; i < r.input.size(); ++i) os << (i ? "," : "") << r.input[i].to_string();
        os << '\t' << (r.expected ? r.expected->to_string() : "undef");
        os << '\t' << (r.got ? r.got->to_string() : "-");
        os << '\t' << (r.steps ? std::to_string(*r.steps) : "-");
        os << '\t' << (r.bound ? r.bound->str() : "-");
        os << '\t' << status_name(r.status);
        if (!r.note.empty()) os << " (" << r.note << ")";
        os << '\n';
    }
    return os.str();
}

namespace {

std::size_t total_length(const std::vector<BitString> &args)
{
    std::size_t n = 0;
    for (auto &w : args) n += w.size();
    return n;
}

InputVerdict check_one(const Term &t, const FunctionSpec &f, const std::vector<BitString> &args,
                       std::size_t max_states, Lts &l)
{
    using S = InputVerdict::Status;
    InputVerdict row;
    row.input = args;
    if (args.size() != f.arity) {
        row.status = S::Fail;
        row.note = "wrong number of arguments";
        return row;
    }
    try {
        row.expected = f.oracle(args);
    } catch (const std::exception &e) {
        row.status = S::Fail;
        row.note = std::string("oracle error: ") + e.what();
        return row;
    }
    l = build_lts(t, input_valuation(args), max_states);
    if (l.exploded) {
        row.status = S::Undecided;
        row.note = "state bound reached";
        return row;
    }
    bool halts = eventually_halts(l);
    if (!row.expected) {
        row.status = halts ? S::Fail : S::Pass;
        if (halts) row.note = "halts although F is undefined";
        return row;
    }
    if (!halts) {
        row.status = S::Fail;
        row.note = "does not eventually halt";
        return row;
    }
    row.steps = depth(l);
    for (std::size_t s = 0; s < l.size(); ++s) {
        if (!l.success[s]) continue;
        auto ev = l.states[s].as<TEval>();
        MemState rm;
        if (ev)
            if (auto it = ev->rho.find("RM"); it != ev->rho.end()) rm = it->second;
        BitString r0 = rm[0];
        if (row.got && !(*row.got == r0)) {
            row.status = S::Fail;
            row.note = "terminal states disagree";
            return row;
        }
        row.got = r0;
    }
    if (!(*row.got == *row.expected)) {
        row.status = S::Fail;
        row.note = "wrong result";
    }
    return row;
}

} // namespace

Verdict check_computes(const Term &t, const FunctionSpec &f, const Bound &w,
                       const std::vector<std::vector<BitString>> &inputs, std::size_t max_states)
{
    Verdict v;
    for (auto &args : inputs) {
        Lts l;
        InputVerdict row = check_one(t, f, args, max_states, l);
        if (w && row.expected) {
            row.bound = w(total_length(args));
            if (row.status == InputVerdict::Status::Pass && row.steps && Natural(*row.steps) > *row.bound) {
                row.status = InputVerdict::Status::Fail;
                row.note = "too many steps";
            }
        }
        v.rows.push_back(std::move(row));
    }
    return v;
}

Verdict is_of_complexity(const Term &t, const FunctionSpec &f, const Bound &bound, Measure m,
                         const std::vector<std::vector<BitString>> &inputs, std::size_t max_states)
{
    Classified c = classify(t);
    if (c.cls != measure_class(m))
        throw Error("measure " + measure_name(m) + " requires " + class_name(measure_class(m)) + " class");
    Verdict v;
    for (auto &args : inputs) {
        Lts l;
        InputVerdict row = check_one(t, f, args, max_states, l);
        if (row.status == InputVerdict::Status::Pass && row.expected) {
            row.steps = measure(l, m, c.degree).value;
            row.bound = bound(total_length(args));
            if (Natural(*row.steps) > *row.bound) {
                row.status = InputVerdict::Status::Fail;
                row.note = measure_name(m) + " exceeds the bound";
            }
        }
        v.rows.push_back(std::move(row));
    }
    return v;
}

std::vector<BitString> all_bitstrings(std::size_t max_len)
{
    std::vector<BitString> out{BitString()};
    std::vector<BitString> layer{BitString()};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<BitString> next;
        for (auto &w : layer)
            for (Bit b : {Bit::Zero, Bit::One}) {
                BitString x = w;
                x.push_back(b);
                next.push_back(x);
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

std::vector<std::vector<BitString>> all_inputs(std::size_t arity, std::size_t max_len)
{
    auto words = all_bitstrings(max_len);
    std::vector<std::vector<BitString>> out{{}};
    for (std::size_t k = 0; k < arity; ++k) {
        std::vector<std::vector<BitString>> next;
        for (auto &prefix : out)
            for (auto &w : words) {
                auto x = prefix;
                x.push_back(w);
                next.push_back(std::move(x));
            }
        out = std::move(next);
    }
    return out;
}

} // namespace deacp
