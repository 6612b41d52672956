#include "deacp/syntax.hpp"

#include "deacp/error.hpp"

#include <cctype>
#include <optional>

namespace deacp {

namespace {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};

enum class Tok { End, Ident, Op, Number, Punct };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s)
{
    static const char *puncts[] = {":->", ":=", "||sync", "||L", "||", "|", "=>", "->", "/\\", "\\/", "+", ".",
                                   "(",   ")",  "{",      "}",   "[",  "]", ",",  "=",  "~",   "-",   "/"};
    std::vector<Token> out;
    std::size_t line = 1, i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < s.size() && ident_char(s[j])) ++j;
            if (j + 1 < s.size() && s[j] == ':' &&
                (s[j + 1] == '#' || s[j + 1] == '@' || std::isdigit(static_cast<unsigned char>(s[j + 1])))) {
                while (j < s.size() && (ident_char(s[j]) || s[j] == ':' || s[j] == '#' || s[j] == '@')) ++j;
                out.push_back({Tok::Op, std::string(s.substr(i, j - i)), line});
            } else {
                out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), line});
            }
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Number, std::string(s.substr(i, j - i)), line});
            i = j;
            continue;
        }
        bool matched = false;
        for (const char *p : puncts) {
            std::string_view pv(p);
            if (s.substr(i, pv.size()) != pv) continue;
            // "||L" and "||sync" must not swallow the start of an identifier.
            if ((pv == "||L" || pv == "||sync") && i + pv.size() < s.size() && ident_char(s[i + pv.size()]))
                continue;
            out.push_back({Tok::Punct, std::string(pv), line});
            i += pv.size();
            matched = true;
            break;
        }
        if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", line);
    }
    out.push_back({Tok::End, "", line});
    return out;
}

const std::set<std::string> &keywords()
{
    static const std::set<std::string> k{"eps",  "delta", "tau",  "True",  "False", "rec",
                                         "encap", "abstr", "eval", "proj", "rename", "merge",
                                         "split", "upd"};
    return k;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    Term whole_term()
    {
        Term t = term();
        expect_end();
        return t;
    }
    Cond whole_cond()
    {
        Cond c = cond();
        expect_end();
        return c;
    }
    DataExpr whole_data()
    {
        DataExpr e = data();
        expect_end();
        return e;
    }
    ActionSet whole_set()
    {
        ActionSet s = action_set();
        expect_end();
        return s;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<std::set<std::string>> scopes_;

    const Token &peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    [[noreturn]] void fail(const std::string &msg) const
    {
        const Token &t = peek();
        throw ParseError(msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"), t.line);
    }
    bool is_punct(const char *p, std::size_t k = 0) const { return peek(k).kind == Tok::Punct && peek(k).text == p; }
    bool is_ident(const char *p, std::size_t k = 0) const { return peek(k).kind == Tok::Ident && peek(k).text == p; }
    bool accept(const char *p)
    {
        if (!is_punct(p)) return false;
        ++pos_;
        return true;
    }
    void expect(const char *p)
    {
        if (!accept(p)) fail(std::string("expected '") + p + "'");
    }
    void expect_keyword(const char *k)
    {
        if (!is_ident(k)) fail(std::string("expected '") + k + "'");
        ++pos_;
    }
    void expect_end()
    {
        if (peek().kind != Tok::End) fail("trailing input");
    }
    std::string ident()
    {
        if (peek().kind != Tok::Ident || keywords().count(peek().text)) fail("expected identifier");
        return toks_[pos_++].text;
    }
    std::string number_text()
    {
        if (peek().kind != Tok::Number) fail("expected number");
        return toks_[pos_++].text;
    }
    Natural natural() { return Natural(number_text()); }
    std::size_t small_number()
    {
        std::string s = number_text();
        if (s.size() > 9) fail("number too large");
        return static_cast<std::size_t>(std::stoul(s));
    }
    BitString bits()
    {
        if (peek().kind == Tok::Number) return BitString::parse(toks_[pos_++].text);
        if (is_ident("e")) {
            ++pos_;
            return BitString();
        }
        fail("expected bit string");
    }
    RamOp op_token()
    {
        if (peek().kind != Tok::Op) fail("expected operator");
        try {
            return RamOp::parse(peek().text);
        } catch (const ParseError &e) {
            throw ParseError(e.what(), peek().line);
        } catch (const Error &e) {
            throw ParseError(e.what(), peek().line);
        }
    }

    // --- process terms --------------------------------------------------

    Term term()
    {
        Term lhs = guarded();
        if (accept("+")) return Term::alt(lhs, term());
        return lhs;
    }

    Term guarded()
    {
        std::size_t save = pos_;
        try {
            Cond c = cond();
            if (accept(":->")) return Term::guard(c, guarded());
        } catch (const ParseError &) {
        }
        pos_ = save;
        return merged();
    }

    Term merged()
    {
        Term lhs = sequential();
        if (accept("||")) return Term::par(lhs, merged());
        if (accept("||L")) return Term::left_merge(lhs, merged());
        if (accept("||sync")) return Term::sync_merge(lhs, merged());
        if (accept("|")) return Term::comm_merge(lhs, merged());
        return lhs;
    }

    Term sequential()
    {
        Term lhs = primary();
        if (accept(".")) return Term::seq(lhs, sequential());
        return lhs;
    }

    Term parenthesised_term()
    {
        expect("(");
        Term t = term();
        expect(")");
        return t;
    }

    Term primary()
    {
        if (accept("(")) {
            Term t = term();
            expect(")");
            return t;
        }
        const Token &t = peek();
        if (t.kind != Tok::Ident) fail("expected process term");
        if (t.text == "eps") return ++pos_, Term::eps();
        if (t.text == "delta") return ++pos_, Term::delta();
        if (t.text == "tau") return ++pos_, Term::tau();
        if (t.text == "encap") {
            ++pos_;
            ActionSet h = action_set();
            return Term::encap(std::move(h), parenthesised_term());
        }
        if (t.text == "abstr") {
            ++pos_;
            ActionSet i = action_set();
            return Term::abstr(std::move(i), parenthesised_term());
        }
        if (t.text == "eval") {
            ++pos_;
            Valuation rho = valuation();
            return Term::eval(std::move(rho), parenthesised_term());
        }
        if (t.text == "proj") {
            ++pos_;
            expect("[");
            std::size_t n = small_number();
            expect("]");
            return Term::proj(n, parenthesised_term());
        }
        if (t.text == "rename") {
            ++pos_;
            expect("[");
            RenameMap f;
            if (!is_punct("]")) {
                do {
                    std::string a = ident();
                    expect("->");
                    f[a] = ident();
                } while (accept(","));
            }
            expect("]");
            return Term::rename(std::move(f), parenthesised_term());
        }
        if (t.text == "rec") return recursion();
        std::string name = ident();
        if (accept(":=")) return Term::assign(name, data());
        if (accept("(")) {
            std::vector<DataExpr> args;
            if (!is_punct(")")) {
                do args.push_back(data());
                while (accept(","));
            }
            expect(")");
            return Term::data_act(name, std::move(args));
        }
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
            if (it->count(name)) return Term::var(name);
        return Term::act(name);
    }

    Term recursion()
    {
        expect_keyword("rec");
        std::string root = ident();
        expect("{");
        // Collect the equation names first so that every body can refer to
        // every variable of the specification.
        std::set<std::string> names;
        {
            std::size_t depth = 0;
            for (std::size_t k = pos_; k < toks_.size(); ++k) {
                const Token &tk = toks_[k];
                if (tk.kind == Tok::End) break;
                if (tk.kind == Tok::Punct && (tk.text == "{" || tk.text == "(" || tk.text == "[")) ++depth;
                if (tk.kind == Tok::Punct && (tk.text == "}" || tk.text == ")" || tk.text == "]")) {
                    if (depth == 0) break;
                    --depth;
                }
                bool at_start = k == pos_ || (depth == 0 && toks_[k - 1].kind == Tok::Punct && toks_[k - 1].text == ",");
                if (depth == 0 && at_start && tk.kind == Tok::Ident && k + 1 < toks_.size() &&
                    toks_[k + 1].kind == Tok::Punct && toks_[k + 1].text == "=")
                    names.insert(tk.text);
            }
        }
        scopes_.push_back(names);
        std::vector<RecSpec::Equation> eqs;
        if (!is_punct("}")) {
            do {
                std::string lhs = ident();
                expect("=");
                eqs.emplace_back(lhs, term());
            } while (accept(","));
        }
        expect("}");
        scopes_.pop_back();
        auto spec = make_spec(std::move(eqs));
        if (!spec->has(root)) fail("recursion variable " + root + " has no equation");
        return Term::rec(root, spec);
    }

    ActionSet action_set()
    {
        ActionSet s;
        expect("{");
        if (accept("-")) s.complement = true;
        if (!is_punct("}")) {
            do {
                if (accept("~")) {
                    s.mentioning.insert(ident());
                } else if (is_ident("tau")) {
                    ++pos_;
                    s.tau = true;
                } else {
                    std::string n = ident();
                    if (accept(":="))
                        s.assigned.insert(n);
                    else
                        s.names.insert(n);
                }
            } while (accept(","));
        }
        expect("}");
        return s;
    }

    Valuation valuation()
    {
        Valuation rho;
        expect("{");
        if (!is_punct("}")) {
            do {
                std::string v = ident();
                expect("=");
                rho[v] = memory_literal();
            } while (accept(","));
        }
        expect("}");
        return rho;
    }

    // --- data -----------------------------------------------------------

    MemState memory_literal()
    {
        MemState m;
        expect("[");
        if (!is_punct("]")) {
            do {
                Natural i = natural();
                expect("=");
                m = m.override(i, bits());
            } while (accept(","));
        }
        expect("]");
        return m;
    }

    DataExpr data()
    {
        if (is_punct("[")) return DataExpr::lit(memory_literal());
        if (peek().kind == Tok::Op) {
            RamOp o = op_token();
            ++pos_;
            if (o.is_comparison()) fail("comparison operator in data position");
            expect("(");
            DataExpr a = data();
            if (accept(",")) {
                DataExpr b = data();
                expect(")");
                if (!o.is_shared()) fail("operator takes one memory");
                return DataExpr::apply(o, a, b);
            }
            expect(")");
            if (o.is_shared()) fail("operator takes two memories");
            return DataExpr::apply(o, a);
        }
        if (is_ident("upd")) {
            ++pos_;
            expect("(");
            DataExpr base = data();
            expect(",");
            Natural i = natural();
            expect(",");
            BitString w = bits();
            expect(")");
            return DataExpr::upd(base, i, w);
        }
        if (is_ident("merge")) {
            ++pos_;
            expect("(");
            std::vector<DataExpr> parts;
            do parts.push_back(data());
            while (accept(","));
            expect(")");
            return DataExpr::merge(std::move(parts));
        }
        if (is_ident("split")) {
            ++pos_;
            expect("[");
            std::size_t k = small_number();
            expect("/");
            std::size_t n = small_number();
            expect("]");
            expect("(");
            DataExpr e = data();
            expect(")");
            if (n == 0 || k == 0 || k > n) fail("split component out of range");
            return DataExpr::split(k, n, e);
        }
        return DataExpr::var(ident());
    }

    // --- conditions -----------------------------------------------------

    Cond cond()
    {
        Cond lhs = disjunction();
        if (accept("=>")) return Cond::implies(lhs, cond());
        return lhs;
    }
    Cond disjunction()
    {
        Cond lhs = conjunction();
        if (accept("\\/")) return Cond::disj(lhs, disjunction());
        return lhs;
    }
    Cond conjunction()
    {
        Cond lhs = unary();
        if (accept("/\\")) return Cond::conj(lhs, conjunction());
        return lhs;
    }
    Cond unary()
    {
        if (accept("~")) return Cond::negate(unary());
        if (is_ident("True")) return ++pos_, Cond::truth();
        if (is_ident("False")) return ++pos_, Cond::falsity();
        if (accept("(")) {
            Cond c = cond();
            expect(")");
            return c;
        }
        if (peek().kind == Tok::Op) {
            RamOp o = op_token();
            if (o.is_comparison()) {
                ++pos_;
                expect("(");
                DataExpr e = data();
                expect(")");
                expect("=");
                std::string b = number_text();
                if (b != "0" && b != "1") fail("expected bit 0 or 1");
                return Cond::prop(o, e, b == "1" ? Bit::One : Bit::Zero);
            }
        }
        DataExpr lhs = data();
        expect("=");
        return Cond::data_eq(lhs, data());
    }
};

// --- printing -------------------------------------------------------------

std::string print(const DataExpr &e)
{
    return std::visit(overloaded{
                          [](const DVar &x) { return x.name; },
                          [](const DLit &x) { return x.value.to_string(); },
                          [](const DUpd &x) {
                              return "upd(" + print(x.base) + ", " + x.idx.str() + ", " + x.val.to_string() + ")";
                          },
                          [](const DApply &x) {
                              std::string s = x.op.to_string() + "(" + print(x.args[0]);
                              if (x.args.size() > 1) s += ", " + print(x.args[1]);
                              return s + ")";
                          },
                          [](const DMerge &x) {
                              std::string s = "merge(";
                              for (std::size_t i = 0; i < x.parts.size(); ++i) s += (i ? ", " : "") + print(x.parts[i]);
                              return s + ")";
                          },
                          [](const DSplit &x) {
                              return "split[" + std::to_string(x.k) + "/" + std::to_string(x.n) + "](" + print(x.e) + ")";
                          },
                      },
                      e.node().v);
}

std::string paren(bool p, std::string s) { return p ? "(" + s + ")" : s; }

std::string print(const Cond &c, int level)
{
    return std::visit(overloaded{
                          [](const CConst &x) -> std::string { return x.value ? "True" : "False"; },
                          [](const CProp &x) -> std::string {
                              return x.op.to_string() + "(" + print(x.e) + ") = " + (x.expected == Bit::One ? "1" : "0");
                          },
                          [](const CEq &x) -> std::string { return print(x.lhs) + " = " + print(x.rhs); },
                          [](const CNot &x) -> std::string { return "~" + print(x.c, 3); },
                          [&](const CBin &x) -> std::string {
                              switch (x.op) {
                              case CondConnective::Implies:
                                  return paren(level > 0, print(x.lhs, 1) + " => " + print(x.rhs, 0));
                              case CondConnective::Or:
                                  return paren(level > 1, print(x.lhs, 2) + " \\/ " + print(x.rhs, 1));
                              case CondConnective::And:
                                  return paren(level > 2, print(x.lhs, 3) + " /\\ " + print(x.rhs, 2));
                              }
                              return {};
                          },
                      },
                      c.node().v);
}

// Levels: 0 alternative, 1 guard, 2 merge, 3 sequential, 4 primary.
std::string print(const Term &t, int level)
{
    return std::visit(
        overloaded{
            [](const TEmpty &) -> std::string { return "eps"; },
            [](const TDead &) -> std::string { return "delta"; },
            [](const TSilent &) -> std::string { return "tau"; },
            [](const TAct &x) -> std::string { return x.name; },
            [](const TDataAct &x) -> std::string {
                std::string s = x.name + "(";
                for (std::size_t i = 0; i < x.args.size(); ++i) s += (i ? ", " : "") + print(x.args[i]);
                return s + ")";
            },
            [](const TAssign &x) -> std::string { return x.var + " := " + print(x.e); },
            [&](const TBinary &x) -> std::string {
                switch (x.op) {
                case BinaryOp::Alt:
                    return paren(level > 0, print(x.lhs, 1) + " + " + print(x.rhs, 0));
                case BinaryOp::Seq:
                    return paren(level > 3, print(x.lhs, 4) + " . " + print(x.rhs, 3));
                default: {
                    const char *sym = x.op == BinaryOp::Par         ? " || "
                                      : x.op == BinaryOp::LeftMerge ? " ||L "
                                      : x.op == BinaryOp::CommMerge ? " | "
                                                                    : " ||sync ";
                    auto rb = x.rhs.as<TBinary>();
                    int rl = rb && rb->op == x.op ? 2 : 3;
                    return paren(level > 2, print(x.lhs, 3) + sym + print(x.rhs, rl));
                }
                }
            },
            [](const TEncap &x) -> std::string { return "encap" + x.h.to_string() + "(" + print(x.t, 0) + ")"; },
            [](const TAbstr &x) -> std::string { return "abstr" + x.i.to_string() + "(" + print(x.t, 0) + ")"; },
            [&](const TGuard &x) -> std::string {
                return paren(level > 1, print(x.c, 0) + " :-> " + print(x.t, 1));
            },
            [](const TEval &x) -> std::string {
                std::string s = "eval{";
                bool first = true;
                for (auto &[v, m] : x.rho) {
                    s += (first ? "" : ", ") + v + "=" + m.to_string();
                    first = false;
                }
                return s + "}(" + print(x.t, 0) + ")";
            },
            [](const TVar &x) -> std::string { return x.name; },
            [](const TRec &x) -> std::string {
                std::string s = "rec " + x.name + " {";
                bool first = true;
                for (auto &[v, body] : x.spec->equations()) {
                    s += (first ? "" : ", ") + v + " = " + print(body, 0);
                    first = false;
                }
                return s + "}";
            },
            [](const TProj &x) -> std::string { return "proj[" + std::to_string(x.n) + "](" + print(x.t, 0) + ")"; },
            [](const TRename &x) -> std::string {
                std::string s = "rename[";
                bool first = true;
                for (auto &[a, b] : x.f) {
                    s += (first ? "" : ", ") + a + "->" + b;
                    first = false;
                }
                return s + "](" + print(x.t, 0) + ")";
            },
        },
        t.node().v);
}

} // namespace

Term parse_term(std::string_view text) { return Parser(text).whole_term(); }
Cond parse_cond(std::string_view text) { return Parser(text).whole_cond(); }
DataExpr parse_data(std::string_view text) { return Parser(text).whole_data(); }
ActionSet parse_action_set(std::string_view text) { return Parser(text).whole_set(); }

std::string to_string(const Term &t) { return print(t, 0); }
std::string to_string(const Cond &c) { return print(c, 0); }
std::string to_string(const DataExpr &e) { return print(e); }

} // namespace deacp
