#include "deacp_cli/cli.hpp"

#include "deacp/complexity.hpp"
#include "deacp/error.hpp"
#include "deacp/machines.hpp"
#include "deacp/memory.hpp"
#include "deacp/semantics.hpp"
#include "deacp/shapes.hpp"
#include "deacp/syntax.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace deacp::cli {

namespace {

// Thrown for problems that map directly to an exit code.
struct Failure {
    int code;
    std::string message;
};

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{exit_code::no_input, "cannot open " + path};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// "path:line: message" for parse errors inside a file.
Failure data_error(const std::string &path, const Error &e)
{
    std::string msg = e.what();
    if (auto p = dynamic_cast<const ParseError *>(&e); p && p->line()) {
        msg = msg.substr(msg.find(": ") + 2);
        return {exit_code::data, path + ":" + std::to_string(p->line()) + ": " + msg};
    }
    return {exit_code::data, path + ": " + msg};
}

struct Source {
    std::string model = "ramp";
    std::vector<std::string> files;
    bool term = false;
    std::vector<std::string> mems;
    std::size_t max_states = 100000;
    std::optional<std::size_t> fuel;

    std::size_t state_bound() const { return fuel ? std::min(max_states, *fuel + 1) : max_states; }
};

void add_source_options(CLI::App *cmd, Source &s)
{
    cmd->add_option("--model", s.model, "ramp, apramp or spramp")
        ->check(CLI::IsMember({"ramp", "apramp", "spramp"}));
    cmd->add_flag("--term", s.term, "the single input file holds a process term instead of programs");
    cmd->add_option("--mem", s.mems, "initial memory k=FILE: k = 0 is RM, k >= 1 is RM_k");
    cmd->add_option("--max-states", s.max_states, "exploration bound")->check(CLI::PositiveNumber);
    cmd->add_option("--fuel", s.fuel, "at most this many steps are explored");
    cmd->add_option("files", s.files, "program files, numbered 1..n in order")->required();
}

Term load_term(const Source &s)
{
    if (s.term) {
        if (s.files.size() != 1) throw Failure{exit_code::usage, "--term takes exactly one file"};
        std::string text = read_file(s.files[0]);
        try {
            return parse_term(text);
        } catch (const Error &e) {
            throw data_error(s.files[0], e);
        }
    }
    if (s.model == "ramp" && s.files.size() != 1)
        throw Failure{exit_code::usage, "model ramp takes exactly one program"};
    MachineKind kind = s.model == "ramp" ? MachineKind::BBRAM : MachineKind::SMBRAM;
    std::vector<Program> programs;
    for (auto &path : s.files) {
        std::string text = read_file(path);
        try {
            programs.push_back(parse_program(text, kind));
        } catch (const Error &e) {
            throw data_error(path, e);
        }
    }
    if (s.model == "ramp") return proc_of_bbram(programs[0]);
    if (s.model == "apramp") return apramp_of(programs);
    return spramp_of(programs);
}

Valuation load_valuation(const Source &s)
{
    Valuation rho;
    for (auto &spec : s.mems) {
        auto eq = spec.find('=');
        std::string k = spec.substr(0, eq);
        if (eq == std::string::npos || k.empty() || k.find_first_not_of("0123456789") != std::string::npos || k.size() > 6)
            throw Failure{exit_code::usage, "--mem expects k=FILE, got '" + spec + "'"};
        std::string path = spec.substr(eq + 1);
        std::string text = read_file(path);
        std::size_t index = std::stoul(k);
        try {
            rho[index == 0 ? "RM" : "RM_" + std::to_string(index)] = MemState::parse_file(text);
        } catch (const Error &e) {
            throw data_error(path, e);
        }
    }
    return rho;
}

// --- compile ----------------------------------------------------------------

int cmd_compile(const Source &s, bool inverse, std::ostream &out)
{
    if (!inverse) {
        out << to_string(load_term(s)) << "\n";
        return exit_code::ok;
    }
    if (s.files.size() != 1) throw Failure{exit_code::usage, "--inverse takes exactly one term file"};
    std::string text = read_file(s.files[0]);
    try {
        out << format_program(program_of_ramp(parse_term(text)));
    } catch (const Error &e) {
        throw data_error(s.files[0], e);
    }
    return exit_code::ok;
}

// --- run --------------------------------------------------------------------

void write_lts(const Lts &l, const std::string &path, const std::string &format, std::ostream &out)
{
    if (path == "-") {
        out << (format == "dot" ? lts_to_dot(l) : lts_to_json(l));
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Failure{exit_code::no_input, "cannot write " + path};
    f << (format == "dot" ? lts_to_dot(l) : lts_to_json(l));
}

int cmd_run(const Source &s, const std::string &lts_path, const std::string &format, std::ostream &out)
{
    Term t = load_term(s);
    Valuation rho = load_valuation(s);
    Lts l = build_lts(t, rho, s.state_bound());
    if (!lts_path.empty()) write_lts(l, lts_path, format, out);
    out << "states: " << l.size() << "\n";
    out << "transitions: " << l.transitions.size() << "\n";
    if (l.exploded) {
        out << "status: state bound reached\n";
        return exit_code::exploded;
    }
    if (!eventually_halts(l)) {
        out << "status: does not halt\n";
        return exit_code::no_halt;
    }
    out << "status: halted\n";
    out << "steps: " << depth(l) << "\n";
    std::set<std::string> finals;
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (!l.success[i]) continue;
        auto ev = l.states[i].as<TEval>();
        std::string v = valuation_to_string(ev ? ev->rho : Valuation{});
        finals.insert(v.empty() ? "all memories empty" : v);
    }
    for (auto &f : finals) out << "final: " << f << "\n";
    return exit_code::ok;
}

// --- measure ----------------------------------------------------------------

Measure checked_measure(const std::string &name, const Term &t)
{
    Measure m;
    try {
        m = parse_measure(name);
    } catch (const Error &e) {
        throw Failure{exit_code::usage, e.what()};
    }
    Classified c;
    try {
        c = classify(t);
    } catch (const Error &e) {
        throw Failure{exit_code::data, e.what()};
    }
    if (c.cls != measure_class(m))
        throw Failure{exit_code::usage, "measure " + measure_name(m) + " requires " + class_name(measure_class(m)) +
                                            " class, term is " + class_name(c.cls)};
    return m;
}

int cmd_measure(const Source &s, const std::string &name, std::ostream &out)
{
    Term t = load_term(s);
    Measure m = checked_measure(name, t);
    Valuation rho = load_valuation(s);
    try {
        out << measure(t, m, rho, s.state_bound()).to_json();
    } catch (const UndefinedMeasure &e) {
        throw Failure{exit_code::no_halt, e.what()};
    } catch (const Undecided &e) {
        throw Failure{exit_code::exploded, e.what()};
    }
    return exit_code::ok;
}

// --- check ------------------------------------------------------------------

struct CheckOptions {
    std::string oracle;
    std::size_t arity = 2;
    std::size_t max_len = 3;
    std::string inputs;
    std::string bound;
    std::string measure;
};

int cmd_check(const Source &s, const CheckOptions &c, std::ostream &out, std::ostream &err)
{
    Term t = load_term(s);
    std::optional<Measure> m;
    if (!c.measure.empty()) {
        m = checked_measure(c.measure, t);
        if (c.bound.empty()) throw Failure{exit_code::usage, "--measure needs --bound"};
    }
    std::optional<AffineBound> bound;
    if (!c.bound.empty()) {
        try {
            bound = AffineBound::parse(c.bound);
        } catch (const Error &e) {
            throw Failure{exit_code::usage, e.what()};
        }
    }
    std::vector<std::vector<BitString>> inputs;
    std::size_t arity = c.arity;
    if (!c.inputs.empty()) {
        try {
            inputs = parse_inputs(read_file(c.inputs));
        } catch (const Error &e) {
            throw data_error(c.inputs, e);
        }
        if (!inputs.empty()) arity = inputs.front().size();
    } else {
        inputs = all_inputs(c.arity, c.max_len);
    }
    if (inputs.empty()) {
        err << "warning: no inputs, the check holds vacuously\n";
        return exit_code::ok;
    }
    FunctionSpec f = external_oracle(c.oracle, arity, inputs);
    Bound w;
    if (bound) w = [b = *bound](std::size_t n) { return b(n); };
    Verdict v = m ? is_of_complexity(t, f, w, *m, inputs, s.state_bound())
                  : check_computes(t, f, w, inputs, s.state_bound());
    out << v.table();
    std::size_t failed = v.count(InputVerdict::Status::Fail);
    std::size_t undecided = v.count(InputVerdict::Status::Undecided);
    out << v.rows.size() << " inputs: " << v.count(InputVerdict::Status::Pass) << " pass, " << failed << " fail, "
        << undecided << " undecided\n";
    if (!bound) {
        std::vector<std::pair<std::size_t, std::size_t>> points;
        for (auto &r : v.rows) {
            if (r.status != InputVerdict::Status::Pass || !r.steps) continue;
            std::size_t n = 0;
            for (auto &w : r.input) n += w.size();
            points.emplace_back(n, *r.steps);
        }
        if (!points.empty()) out << "fitted bound: " << fit_affine(points).to_string() << "\n";
    }
    if (failed) return exit_code::check_failed;
    if (undecided) return exit_code::exploded;
    return exit_code::ok;
}

} // namespace

std::vector<std::vector<BitString>> parse_inputs(const std::string &text)
{
    std::vector<std::vector<BitString>> out;
    std::istringstream in(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream words(line);
        std::vector<BitString> tuple;
        std::string w;
        try {
            while (words >> w) tuple.push_back(BitString::parse(w));
        } catch (const Error &e) {
            throw ParseError(e.what(), number);
        }
        if (tuple.empty()) continue;
        if (!out.empty() && tuple.size() != out.front().size()) throw ParseError("tuples differ in length", number);
        out.push_back(std::move(tuple));
    }
    return out;
}

std::string format_tuple(const std::vector<BitString> &args)
{
    std::string s;
    for (auto &w : args) {
        if (!s.empty()) s += ' ';
        s += w.to_string();
    }
    return s;
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Process terms, RAM programs and their complexity measures", "deacp"};
    app.require_subcommand(1);

    Source src;
    bool inverse = false;
    auto *compile = app.add_subcommand("compile", "print the process term of the given programs");
    add_source_options(compile, src);
    compile->add_flag("--inverse", inverse, "read a RAMP term and print its program");

    std::string lts_path, format = "json";
    auto *run = app.add_subcommand("run", "explore the evaluated term and report halting and final memories");
    add_source_options(run, src);
    run->add_option("--lts", lts_path, "write the transition system to this file (- for standard output)");
    run->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

    std::string measure_flag;
    auto *meas = app.add_subcommand("measure", "evaluate a complexity measure");
    add_source_options(meas, src);
    meas->add_option("--measure", measure_flag, "sutm, swm, aputm, apwm, sputm or spwm")->required();

    CheckOptions check;
    auto *chk = app.add_subcommand("check", "check that the term computes the oracle's function");
    add_source_options(chk, src);
    chk->add_option("--oracle", check.oracle, "shell command answering one tuple per line")->required();
    chk->add_option("--arity", check.arity, "number of arguments when enumerating inputs");
    chk->add_option("--max-len", check.max_len, "enumerate all arguments up to this length");
    chk->add_option("--inputs", check.inputs, "file with one argument tuple per line");
    chk->add_option("--bound", check.bound, "step bound a*n+b in the total input length n");
    chk->add_option("--measure", check.measure, "check this measure against --bound instead of the steps");

    std::vector<std::string> argv_store{"deacp"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (auto &a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        if (*compile) return cmd_compile(src, inverse, out);
        if (*run) return cmd_run(src, lts_path, format, out);
        if (*meas) return cmd_measure(src, measure_flag, out);
        return cmd_check(src, check, out, err);
    } catch (const Failure &f) {
        err << "deacp: " << f.message << "\n";
        return f.code;
    } catch (const std::exception &e) {
        err << "deacp: " << e.what() << "\n";
        return exit_code::data;
    }
}

} // namespace deacp::cli
