#pragma once

// First-order logic formulas: immutable AST, a parser for a small concrete
// syntax with Unicode and ASCII operator spellings, a minimal-parenthesis
// renderer and structural queries used by the feature extractors.
//
// Grammar (one token of lookahead; -> and <-> are right-associative, & and |
// left-associative; a quantifier's scope extends as far right as possible):
//
//   formula  := iff
//   iff      := imp (('<->' | '↔') iff)?
//   imp      := or (('->' | '→') imp)?
//   or       := and (('|' | '∨') and)*
//   and      := unary (('&' | '∧') unary)*
//   unary    := ('~' | '¬') unary | ('forall' | '∀' | 'exists' | '∃') name formula | primary
//   primary  := '(' formula ')' | atom
//   atom     := name '(' term (',' term)* ')' | term ('=' | '!=' | '≠') term
//   term     := name | number        (number: digits, optionally 2:00-style)
//
// a != b is sugar for ~(a = b). A term name is a Variable when it is bound
// by an enclosing quantifier or is a single letter in t..z; every other name
// (and every number) is a Constant.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "foldiff/errors.hpp"

namespace foldiff::fol {

// ── AST ──────────────────────────────────────────────────────────────────

enum class TermKind { Variable, Constant };

struct Term {
    TermKind kind = TermKind::Constant;
    std::string name;
    bool operator==(const Term&) const = default;
};

struct Atom {
    std::string predicate; // "=" for equality
    std::vector<Term> args;
    bool operator==(const Atom&) const = default;
};

enum class NodeKind { Atomic, Not, And, Or, Implies, Iff, ForAll, Exists };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
public:
    NodeKind kind = NodeKind::Atomic;
    Atom atom;       // Atomic
    std::string var; // ForAll / Exists
    FormulaPtr lhs;  // binary lhs, Not child, quantifier body
    FormulaPtr rhs;  // binary rhs

    static FormulaPtr atomic(Atom a) {
        if (a.args.empty())
            throw Error("atom '" + a.predicate + "' needs at least one argument");
        if (a.predicate == "=" && a.args.size() != 2)
            throw Error("equality takes exactly two arguments");
        auto f = std::make_shared<Formula>();
        f->kind = NodeKind::Atomic;
        f->atom = std::move(a);
        return f;
    }
    static FormulaPtr negation(FormulaPtr c) { return unary(NodeKind::Not, "", std::move(c)); }
    static FormulaPtr conjunction(FormulaPtr l, FormulaPtr r) { return binary(NodeKind::And, std::move(l), std::move(r)); }
    static FormulaPtr disjunction(FormulaPtr l, FormulaPtr r) { return binary(NodeKind::Or, std::move(l), std::move(r)); }
    static FormulaPtr implication(FormulaPtr l, FormulaPtr r) { return binary(NodeKind::Implies, std::move(l), std::move(r)); }
    static FormulaPtr biconditional(FormulaPtr l, FormulaPtr r) { return binary(NodeKind::Iff, std::move(l), std::move(r)); }
    static FormulaPtr forall(std::string v, FormulaPtr body) { return unary(NodeKind::ForAll, std::move(v), std::move(body)); }
    static FormulaPtr exists(std::string v, FormulaPtr body) { return unary(NodeKind::Exists, std::move(v), std::move(body)); }

private:
    static FormulaPtr unary(NodeKind k, std::string v, FormulaPtr c) {
        if (!c)
            throw Error("null subformula");
        auto f = std::make_shared<Formula>();
        f->kind = k;
        f->var = std::move(v);
        f->lhs = std::move(c);
        return f;
    }
    static FormulaPtr binary(NodeKind k, FormulaPtr l, FormulaPtr r) {
        if (!l || !r)
            throw Error("null subformula");
        auto f = std::make_shared<Formula>();
        f->kind = k;
        f->lhs = std::move(l);
        f->rhs = std::move(r);
        return f;
    }
};

inline bool equal(const Formula& a, const Formula& b) {
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
    case NodeKind::Atomic:
        return a.atom == b.atom;
    case NodeKind::Not:
        return equal(*a.lhs, *b.lhs);
    case NodeKind::ForAll:
    case NodeKind::Exists:
        return a.var == b.var && equal(*a.lhs, *b.lhs);
    default:
        return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    }
}

// ── parsing ──────────────────────────────────────────────────────────────

struct ParseError {
    std::size_t position = 0; // byte offset into the input
    std::string expected;
    std::string found;
    std::string message() const {
        return "parse error at byte " + std::to_string(position) + ": expected " + expected +
               ", found " + found;
    }
};

struct ParseResult {
    FormulaPtr formula; // null on failure
    std::optional<ParseError> error;
    bool ok() const { return formula != nullptr; }
};

namespace detail {

enum class Tok { LParen, RParen, Comma, Name, Number, Forall, Exists, Not, And, Or, Implies, Iff, Eq, Neq, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

inline bool name_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
inline bool name_char(char c) {
    return name_start(c) || (c >= '0' && c <= '9');
}
inline bool digit(char c) { return c >= '0' && c <= '9'; }

struct Lexer {
    std::string_view in;
    std::size_t i = 0;
    std::optional<ParseError> error;

    bool match(std::string_view s) {
        if (in.substr(i, s.size()) == s) {
            i += s.size();
            return true;
        }
        return false;
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        while (i < in.size()) {
            char c = in[i];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                ++i;
                continue;
            }
            std::size_t start = i;
            if (c == '(') { ++i; out.push_back({Tok::LParen, "(", start}); continue; }
            if (c == ')') { ++i; out.push_back({Tok::RParen, ")", start}); continue; }
            if (c == ',') { ++i; out.push_back({Tok::Comma, ",", start}); continue; }
            if (c == '&') { ++i; out.push_back({Tok::And, "&", start}); continue; }
            if (c == '|') { ++i; out.push_back({Tok::Or, "|", start}); continue; }
            if (c == '~') { ++i; out.push_back({Tok::Not, "~", start}); continue; }
            if (c == '=') { ++i; out.push_back({Tok::Eq, "=", start}); continue; }
            if (match("->")) { out.push_back({Tok::Implies, "->", start}); continue; }
            if (match("<->")) { out.push_back({Tok::Iff, "<->", start}); continue; }
            if (match("!=")) { out.push_back({Tok::Neq, "!=", start}); continue; }
            if (match("\xE2\x88\x80")) { out.push_back({Tok::Forall, "\xE2\x88\x80", start}); continue; }
            if (match("\xE2\x88\x83")) { out.push_back({Tok::Exists, "\xE2\x88\x83", start}); continue; }
            if (match("\xE2\x88\xA7")) { out.push_back({Tok::And, "\xE2\x88\xA7", start}); continue; }
            if (match("\xE2\x88\xA8")) { out.push_back({Tok::Or, "\xE2\x88\xA8", start}); continue; }
            if (match("\xE2\x86\x92")) { out.push_back({Tok::Implies, "\xE2\x86\x92", start}); continue; }
            if (match("\xE2\x86\x94")) { out.push_back({Tok::Iff, "\xE2\x86\x94", start}); continue; }
            if (match("\xC2\xAC")) { out.push_back({Tok::Not, "\xC2\xAC", start}); continue; }
            if (match("\xE2\x89\xA0")) { out.push_back({Tok::Neq, "\xE2\x89\xA0", start}); continue; }
            if (name_start(c)) {
                std::size_t j = i;
                while (j < in.size() && name_char(in[j]))
                    ++j;
                std::string word(in.substr(i, j - i));
                i = j;
                if (word == "forall")
                    out.push_back({Tok::Forall, word, start});
                else if (word == "exists")
                    out.push_back({Tok::Exists, word, start});
                else
                    out.push_back({Tok::Name, word, start});
                continue;
            }
            if (digit(c)) {
                std::size_t j = i;
                while (j < in.size() && digit(in[j]))
                    ++j;
                if (j < in.size() && in[j] == ':' && j + 1 < in.size() && digit(in[j + 1])) {
                    ++j;
                    while (j < in.size() && digit(in[j]))
                        ++j;
                }
                out.push_back({Tok::Number, std::string(in.substr(i, j - i)), start});
                i = j;
                continue;
            }
            error = ParseError{start, "a token", "'" + std::string(1, c) + "'"};
            break;
        }
        out.push_back({Tok::End, "end of input", in.size()});
        return out;
    }
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ParseResult run() {
        FormulaPtr f = parse_iff();
        if (err_)
            return {nullptr, err_};
        if (cur().kind != Tok::End) {
            fail("end of input");
            return {nullptr, err_};
        }
        return {f, std::nullopt};
    }

private:
    // each nesting level costs several stack frames; keep well under typical
    // 8 MB stacks so pathological inputs fail with a ParseError, not a crash
    static constexpr int max_depth_ = 2000;

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    std::vector<std::string> scope_;
    std::optional<ParseError> err_;
    int depth_ = 0;

    const Token& cur() const { return toks_[i_]; }
    void advance() { if (i_ + 1 < toks_.size()) ++i_; }

    void fail(const std::string& expected) {
        if (!err_)
            err_ = ParseError{cur().pos, expected, "'" + cur().text + "'"};
    }

    bool expect(Tok k, const std::string& what) {
        if (cur().kind != k) {
            fail(what);
            return false;
        }
        advance();
        return true;
    }

    FormulaPtr parse_iff() {
        FormulaPtr l = parse_imp();
        if (!l)
            return nullptr;
        if (cur().kind == Tok::Iff) {
            advance();
            FormulaPtr r = parse_iff();
            return r ? Formula::biconditional(l, r) : nullptr;
        }
        return l;
    }

    FormulaPtr parse_imp() {
        FormulaPtr l = parse_or();
        if (!l)
            return nullptr;
        if (cur().kind == Tok::Implies) {
            advance();
            FormulaPtr r = parse_imp();
            return r ? Formula::implication(l, r) : nullptr;
        }
        return l;
    }

    FormulaPtr parse_or() {
        FormulaPtr l = parse_and();
        if (!l)
            return nullptr;
        while (cur().kind == Tok::Or) {
            advance();
            FormulaPtr r = parse_and();
            if (!r)
                return nullptr;
            l = Formula::disjunction(l, r);
        }
        return l;
    }

    FormulaPtr parse_and() {
        FormulaPtr l = parse_unary();
        if (!l)
            return nullptr;
        while (cur().kind == Tok::And) {
            advance();
            FormulaPtr r = parse_unary();
            if (!r)
                return nullptr;
            l = Formula::conjunction(l, r);
        }
        return l;
    }

    FormulaPtr parse_unary() {
        if (++depth_ > max_depth_) {
            fail("a shallower formula (nesting limit reached)");
            --depth_;
            return nullptr;
        }
        FormulaPtr out;
        switch (cur().kind) {
        case Tok::Not: {
            advance();
            FormulaPtr c = parse_unary();
            out = c ? Formula::negation(c) : nullptr;
            break;
        }
        case Tok::Forall:
        case Tok::Exists: {
            bool universal = cur().kind == Tok::Forall;
            advance();
            if (cur().kind != Tok::Name) {
                fail("a variable name");
                break;
            }
            std::string v = cur().text;
            advance();
            scope_.push_back(v);
            FormulaPtr body = parse_iff(); // scope extends maximally right
            scope_.pop_back();
            if (body)
                out = universal ? Formula::forall(v, body) : Formula::exists(v, body);
            break;
        }
        default:
            out = parse_primary();
            break;
        }
        --depth_;
        return out;
    }

    FormulaPtr parse_primary() {
        if (cur().kind == Tok::LParen) {
            advance();
            FormulaPtr f = parse_iff();
            if (!f)
                return nullptr;
            if (!expect(Tok::RParen, "')'"))
                return nullptr;
            return f;
        }
        if (cur().kind == Tok::Number)
            return parse_equality(make_term(cur().text, /*number=*/true));
        if (cur().kind != Tok::Name) {
            fail("a formula");
            return nullptr;
        }
        std::string name = cur().text;
        advance();
        if (cur().kind == Tok::LParen) {
            advance();
            std::vector<Term> args;
            while (true) {
                std::optional<Term> t = parse_term();
                if (!t)
                    return nullptr;
                args.push_back(*t);
                if (cur().kind == Tok::Comma) {
                    advance();
                    continue;
                }
                break;
            }
            if (!expect(Tok::RParen, "')'"))
                return nullptr;
            return Formula::atomic(Atom{name, std::move(args)});
        }
        --i_; // re-read the name as an equality's left term
        return parse_equality(std::nullopt);
    }

    // lhs already consumed when passed in; otherwise parse it first
    FormulaPtr parse_equality(std::optional<Term> lhs) {
        if (!lhs) {
            lhs = parse_term();
            if (!lhs)
                return nullptr;
        }
        bool negated = false;
        if (cur().kind == Tok::Neq)
            negated = true;
        else if (cur().kind != Tok::Eq) {
            fail("'(', '=' or '!=' after a term");
            return nullptr;
        }
        advance();
        std::optional<Term> rhs = parse_term();
        if (!rhs)
            return nullptr;
        FormulaPtr eq = Formula::atomic(Atom{"=", {*lhs, *rhs}});
        return negated ? Formula::negation(eq) : eq;
    }

    FormulaPtr parse_equality(Term lhs) {
        advance(); // the number token
        return parse_equality(std::optional<Term>(std::move(lhs)));
    }

    std::optional<Term> parse_term() {
        if (cur().kind == Tok::Name) {
            Term t = make_term(cur().text, /*number=*/false);
            advance();
            return t;
        }
        if (cur().kind == Tok::Number) {
            Term t = make_term(cur().text, /*number=*/true);
            advance();
            return t;
        }
        fail("a term");
        return std::nullopt;
    }

    Term make_term(const std::string& name, bool number) const {
        if (number)
            return {TermKind::Constant, name};
        bool bound = false;
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (*it == name) {
                bound = true;
                break;
            }
        bool free_letter = name.size() == 1 && name[0] >= 't' && name[0] <= 'z';
        return {bound || free_letter ? TermKind::Variable : TermKind::Constant, name};
    }
};

} // namespace detail

inline ParseResult parse_formula(std::string_view text) {
    detail::Lexer lex{text, 0, {}};
    std::vector<detail::Token> toks = lex.run();
    if (lex.error)
        return {nullptr, lex.error};
    detail::Parser p(std::move(toks));
    return p.run();
}

// ── rendering ────────────────────────────────────────────────────────────

enum class RenderStyle { Unicode, Ascii };

namespace detail {

struct Ops {
    const char* nt;
    const char* an;
    const char* orr;
    const char* imp;
    const char* iff;
    const char* fa;
    const char* ex;
    const char* eq;
    const char* neq;
};

inline const Ops& ops(RenderStyle s) {
    static const Ops uni{"\xC2\xAC", " \xE2\x88\xA7 ", " \xE2\x88\xA8 ", " \xE2\x86\x92 ",
                         " \xE2\x86\x94 ", "\xE2\x88\x80", "\xE2\x88\x83", " = ", " \xE2\x89\xA0 "};
    static const Ops asc{"~", " & ", " | ", " -> ", " <-> ", "forall ", "exists ", " = ", " != "};
    return s == RenderStyle::Unicode ? uni : asc;
}

inline bool neq_sugar(const Formula& f) {
    return f.kind == NodeKind::Not && f.lhs->kind == NodeKind::Atomic && f.lhs->atom.predicate == "=";
}

inline int prec(const Formula& f) {
    if (neq_sugar(f))
        return 7;
    switch (f.kind) {
    case NodeKind::Atomic: return 7;
    case NodeKind::Not: return 6;
    case NodeKind::And: return 4;
    case NodeKind::Or: return 3;
    case NodeKind::Implies: return 2;
    case NodeKind::Iff: return 1;
    default: return 0;
    }
}

// whether a quantifier sits on the right spine, where its scope would
// swallow anything following an unparenthesised rendering
inline bool open_scope(const Formula& f) {
    switch (f.kind) {
    case NodeKind::ForAll:
    case NodeKind::Exists: return true;
    case NodeKind::Not: return open_scope(*f.lhs);
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Implies:
    case NodeKind::Iff: return open_scope(*f.rhs);
    default: return false;
    }
}

inline std::string render_node(const Formula& f, const Ops& o, int required, bool right_edge) {
    // a quantifier in tail position never needs parentheses: its scope runs
    // maximally right, which is exactly where the parent expression ends
    bool quant = f.kind == NodeKind::ForAll || f.kind == NodeKind::Exists;
    bool parens = (prec(f) < required && !(right_edge && quant)) || (!right_edge && open_scope(f));
    bool re = parens || right_edge;
    std::string s;
    if (neq_sugar(f)) {
        s = f.lhs->atom.args[0].name + o.neq + f.lhs->atom.args[1].name;
    } else {
        switch (f.kind) {
        case NodeKind::Atomic:
            if (f.atom.predicate == "=") {
                s = f.atom.args[0].name + o.eq + f.atom.args[1].name;
            } else {
                s = f.atom.predicate + "(";
                for (std::size_t i = 0; i < f.atom.args.size(); ++i) {
                    if (i)
                        s += ", ";
                    s += f.atom.args[i].name;
                }
                s += ")";
            }
            break;
        case NodeKind::Not: {
            bool quant_child = f.lhs->kind == NodeKind::ForAll || f.lhs->kind == NodeKind::Exists;
            s = o.nt + render_node(*f.lhs, o, quant_child ? 0 : 6, re);
            break;
        }
        case NodeKind::ForAll:
            s = o.fa + f.var + " " + render_node(*f.lhs, o, 0, true);
            break;
        case NodeKind::Exists:
            s = o.ex + f.var + " " + render_node(*f.lhs, o, 0, true);
            break;
        case NodeKind::And:
            s = render_node(*f.lhs, o, 4, false) + o.an + render_node(*f.rhs, o, 5, re);
            break;
        case NodeKind::Or:
            s = render_node(*f.lhs, o, 3, false) + o.orr + render_node(*f.rhs, o, 4, re);
            break;
        case NodeKind::Implies:
            s = render_node(*f.lhs, o, 3, false) + o.imp + render_node(*f.rhs, o, 2, re);
            break;
        case NodeKind::Iff:
            s = render_node(*f.lhs, o, 2, false) + o.iff + render_node(*f.rhs, o, 1, re);
            break;
        }
    }
    return parens ? "(" + s + ")" : s;
}

} // namespace detail

inline std::string render_formula(const Formula& f, RenderStyle style = RenderStyle::Unicode) {
    return detail::render_node(f, detail::ops(style), 0, true);
}

// ── structural queries ───────────────────────────────────────────────────

struct ConnectiveCensus {
    int negations = 0;
    int conjunctions = 0;
    int disjunctions = 0;
    int implications = 0;
    int biconditionals = 0;
    int universals = 0;
    int existentials = 0;

    int quantifiers() const { return universals + existentials; }

    // kinds present among {negation, conjunction, disjunction, implication}
    int distinct_connectives() const {
        return (negations > 0) + (conjunctions > 0) + (disjunctions > 0) + (implications > 0);
    }
};

namespace detail {
inline void census_walk(const Formula& f, ConnectiveCensus& c) {
    switch (f.kind) {
    case NodeKind::Atomic: return;
    case NodeKind::Not: ++c.negations; break;
    case NodeKind::And: ++c.conjunctions; break;
    case NodeKind::Or: ++c.disjunctions; break;
    case NodeKind::Implies: ++c.implications; break;
    case NodeKind::Iff: ++c.biconditionals; break;
    case NodeKind::ForAll: ++c.universals; break;
    case NodeKind::Exists: ++c.existentials; break;
    }
    census_walk(*f.lhs, c);
    if (f.rhs)
        census_walk(*f.rhs, c);
}
} // namespace detail

inline ConnectiveCensus connective_census(const Formula& f) {
    ConnectiveCensus c;
    detail::census_walk(f, c);
    return c;
}

inline bool contains_biconditional(const Formula& f) {
    if (f.kind == NodeKind::Iff)
        return true;
    if (f.kind == NodeKind::Atomic)
        return false;
    return contains_biconditional(*f.lhs) || (f.rhs && contains_biconditional(*f.rhs));
}

// predicate occurrences, left to right; rank is 1-based
struct PredicateOccurrence {
    std::string symbol;
    int arity = 0;
    int rank = 0;
    bool operator==(const PredicateOccurrence&) const = default;
};

namespace detail {
inline void occurrences_walk(const Formula& f, std::vector<PredicateOccurrence>& out) {
    if (f.kind == NodeKind::Atomic) {
        out.push_back({f.atom.predicate, static_cast<int>(f.atom.args.size()),
                       static_cast<int>(out.size()) + 1});
        return;
    }
    occurrences_walk(*f.lhs, out);
    if (f.rhs)
        occurrences_walk(*f.rhs, out);
}
} // namespace detail

inline std::vector<PredicateOccurrence> predicate_occurrences(const Formula& f) {
    std::vector<PredicateOccurrence> out;
    detail::occurrences_walk(f, out);
    return out;
}

inline int atom_count(const Formula& f) {
    if (f.kind == NodeKind::Atomic)
        return 1;
    return atom_count(*f.lhs) + (f.rhs ? atom_count(*f.rhs) : 0);
}

// connective at the lowest common ancestor of two atom occurrences
// (0-based indices in predicate_occurrences order, a != b); for distinct
// atoms this is always a binary connective
inline NodeKind lowest_common_connective(const Formula& f, int a, int b) {
    if (a > b)
        std::swap(a, b);
    const Formula* node = &f;
    while (true) {
        switch (node->kind) {
        case NodeKind::Atomic:
            return node->kind; // only reachable when a == b
        case NodeKind::Not:
        case NodeKind::ForAll:
        case NodeKind::Exists:
            node = node->lhs.get();
            break;
        default: {
            int nl = atom_count(*node->lhs);
            if (b < nl) {
                node = node->lhs.get();
            } else if (a >= nl) {
                a -= nl;
                b -= nl;
                node = node->rhs.get();
            } else {
                return node->kind;
            }
        }
        }
    }
}

struct VariablePartition {
    std::set<std::string> free;
    std::set<std::string> bound;
};

namespace detail {
inline void variables_walk(const Formula& f, std::vector<std::string>& scope, VariablePartition& out) {
    switch (f.kind) {
    case NodeKind::Atomic:
        for (const Term& t : f.atom.args)
            if (t.kind == TermKind::Variable &&
                std::find(scope.begin(), scope.end(), t.name) == scope.end())
                out.free.insert(t.name);
        return;
    case NodeKind::ForAll:
    case NodeKind::Exists:
        out.bound.insert(f.var);
        scope.push_back(f.var);
        variables_walk(*f.lhs, scope, out);
        scope.pop_back();
        return;
    default:
        variables_walk(*f.lhs, scope, out);
        if (f.rhs)
            variables_walk(*f.rhs, scope, out);
    }
}

inline bool occurs_free(const Formula& f, const std::string& v) {
    switch (f.kind) {
    case NodeKind::Atomic:
        for (const Term& t : f.atom.args)
            if (t.kind == TermKind::Variable && t.name == v)
                return true;
        return false;
    case NodeKind::ForAll:
    case NodeKind::Exists:
        if (f.var == v)
            return false;
        return occurs_free(*f.lhs, v);
    default:
        return occurs_free(*f.lhs, v) || (f.rhs && occurs_free(*f.rhs, v));
    }
}
} // namespace detail

inline VariablePartition free_and_bound_variables(const Formula& f) {
    VariablePartition out;
    std::vector<std::string> scope;
    detail::variables_walk(f, scope, out);
    return out;
}

// a quantifier is vacuous when its variable has no free occurrence in its body
inline bool has_vacuous_quantifier(const Formula& f) {
    switch (f.kind) {
    case NodeKind::Atomic:
        return false;
    case NodeKind::ForAll:
    case NodeKind::Exists:
        if (!detail::occurs_free(*f.lhs, f.var))
            return true;
        return has_vacuous_quantifier(*f.lhs);
    default:
        return has_vacuous_quantifier(*f.lhs) || (f.rhs && has_vacuous_quantifier(*f.rhs));
    }
}

} // namespace foldiff::fol
