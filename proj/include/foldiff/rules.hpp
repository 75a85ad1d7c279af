#pragma once

// Two-stage difficulty rule engine: a logic rule table maps the logic
// features to a base level, then a natural-language rule table escalates
// that level. Both tables are first-match, top to bottom; an uncovered
// feature combination raises NoRuleMatched rather than defaulting.
//
// Override file format, line oriented, '#' comments, '*' wildcards; numeric
// guards are N, <N, <=N, >N, >=N:
//
//   [logic]    implications quantifiers forall exists distinct level
//   [nl]       base wom anaphora negation special sum quant_mismatch conn level
//
// where "sum" guards anaphora+negation+special. Level names: very_easy,
// easy, medium, difficult, advanced. A section that is present replaces the
// built-in table of that stage.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "foldiff/detail/text.hpp"
#include "foldiff/errors.hpp"
#include "foldiff/features.hpp"

namespace foldiff::rules {

// ── difficulty levels ────────────────────────────────────────────────────

enum class DifficultyLevel { VeryEasy = 0, Easy = 1, Medium = 2, Difficult = 3, Advanced = 4 };

inline int numeric(DifficultyLevel l) { return static_cast<int>(l); }

inline std::string to_string(DifficultyLevel l) {
    switch (l) {
    case DifficultyLevel::VeryEasy: return "Very Easy";
    case DifficultyLevel::Easy: return "Easy";
    case DifficultyLevel::Medium: return "Medium";
    case DifficultyLevel::Difficult: return "Difficult";
    default: return "Advanced";
    }
}

inline std::optional<DifficultyLevel> level_from_string(std::string_view name) {
    std::string key;
    for (char c : name)
        if (c != ' ' && c != '_' && c != '-')
            key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (key == "veryeasy") return DifficultyLevel::VeryEasy;
    if (key == "easy") return DifficultyLevel::Easy;
    if (key == "medium") return DifficultyLevel::Medium;
    if (key == "difficult") return DifficultyLevel::Difficult;
    if (key == "advanced") return DifficultyLevel::Advanced;
    return std::nullopt;
}

// ── guards ───────────────────────────────────────────────────────────────

struct Guard {
    enum class Op { Any, Eq, Lt, Le, Gt, Ge } op = Op::Any;
    int value = 0;

    bool matches(int x) const {
        switch (op) {
        case Op::Any: return true;
        case Op::Eq: return x == value;
        case Op::Lt: return x < value;
        case Op::Le: return x <= value;
        case Op::Gt: return x > value;
        default: return x >= value;
        }
    }

    static Guard any() { return {}; }
    static Guard eq(int v) { return {Op::Eq, v}; }
    static Guard lt(int v) { return {Op::Lt, v}; }
    static Guard le(int v) { return {Op::Le, v}; }
    static Guard gt(int v) { return {Op::Gt, v}; }
    static Guard ge(int v) { return {Op::Ge, v}; }

    static Guard parse(const std::string& s, std::size_t line) {
        if (s == "*")
            return any();
        Op op = Op::Eq;
        std::size_t i = 0;
        if (detail::starts_with(s, "<=")) { op = Op::Le; i = 2; }
        else if (detail::starts_with(s, ">=")) { op = Op::Ge; i = 2; }
        else if (detail::starts_with(s, "<")) { op = Op::Lt; i = 1; }
        else if (detail::starts_with(s, ">")) { op = Op::Gt; i = 1; }
        if (i >= s.size())
            throw SchemaError(line, "guard '" + s + "' has no number");
        int v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9')
                throw SchemaError(line, "bad guard '" + s + "'");
            v = v * 10 + (s[i] - '0');
        }
        return {op, v};
    }
};

struct BoolGuard {
    enum class Op { Any, Yes, No } op = Op::Any;

    bool matches(bool x) const {
        return op == Op::Any || (op == Op::Yes) == x;
    }

    static BoolGuard any() { return {Op::Any}; }
    static BoolGuard yes() { return {Op::Yes}; }
    static BoolGuard no() { return {Op::No}; }

    static BoolGuard parse(const std::string& s, std::size_t line) {
        if (s == "*") return any();
        if (s == "yes" || s == "Yes") return yes();
        if (s == "no" || s == "No") return no();
        throw SchemaError(line, "bad yes/no guard '" + s + "'");
    }
};

// ── rule tables ──────────────────────────────────────────────────────────

struct LogicRule {
    Guard implications, quantifiers;
    BoolGuard has_forall, has_exists;
    Guard distinct;
    DifficultyLevel output = DifficultyLevel::VeryEasy;

    bool matches(const features::LogicFeatures& lf) const {
        return implications.matches(lf.num_implications) && quantifiers.matches(lf.num_quantifiers) &&
               has_forall.matches(lf.has_forall) && has_exists.matches(lf.has_exists) &&
               distinct.matches(lf.num_distinct_connectives);
    }
};

struct NlRule {
    std::optional<DifficultyLevel> base; // nullopt = any
    Guard word_order, anaphora, negation, special, cue_sum;
    BoolGuard quant_mismatch;
    Guard connective;
    DifficultyLevel output = DifficultyLevel::VeryEasy;

    bool matches(DifficultyLevel b, const features::NlFeatures& nl) const {
        return (!base || *base == b) && word_order.matches(nl.word_order_mismatch) &&
               anaphora.matches(nl.anaphora_count) && negation.matches(nl.negation_count) &&
               special.matches(nl.special_phrase_count) &&
               cue_sum.matches(nl.anaphora_count + nl.negation_count + nl.special_phrase_count) &&
               quant_mismatch.matches(nl.quantifier_mismatch) &&
               connective.matches(nl.connective_mismatch_count);
    }
};

struct RuleTables {
    std::vector<LogicRule> logic;
    std::vector<NlRule> nl;

    static const RuleTables& builtin();
    static RuleTables from_stream(std::istream& in, const RuleTables& base);
    static RuleTables from_file(const std::filesystem::path& path,
                                const RuleTables& base = builtin());
};

inline const RuleTables& RuleTables::builtin() {
    using L = DifficultyLevel;
    static const RuleTables t = [] {
        RuleTables rt;
        auto A = Guard::any;
        auto Y = BoolGuard::yes;
        auto N = BoolGuard::no;
        auto B = BoolGuard::any;
        rt.logic = {
            {Guard::lt(2), Guard::eq(0), B(), B(), A(), L::VeryEasy},   // 1
            {Guard::ge(2), Guard::eq(0), B(), B(), A(), L::Easy},       // 2
            {Guard::eq(0), Guard::eq(1), B(), B(), Guard::lt(3), L::Easy},   // 3
            {Guard::eq(1), A(), Y(), N(), Guard::le(1), L::Easy},       // 4
            {Guard::eq(1), Guard::gt(1), N(), Y(), Guard::ge(3), L::Medium}, // 5
            {Guard::eq(0), Guard::gt(1), B(), B(), Guard::ge(3), L::Medium}, // 6
            {Guard::eq(1), A(), Y(), N(), Guard::eq(2), L::Medium},     // 7
            {Guard::eq(1), Guard::le(2), Y(), N(), Guard::ge(3), L::Medium}, // 8
            {Guard::ge(2), Guard::eq(1), B(), B(), Guard::lt(2), L::Medium}, // 9
            {Guard::eq(1), A(), Y(), Y(), A(), L::Difficult},           // 10
            {Guard::eq(1), Guard::gt(2), Y(), N(), Guard::ge(3), L::Difficult}, // 11
            {Guard::ge(2), Guard::eq(1), B(), B(), Guard::ge(2), L::Difficult}, // 12
            {Guard::ge(2), Guard::gt(1), B(), B(), A(), L::Advanced},   // 13
        };
        rt.nl = {
            {L::Easy, Guard::eq(0), Guard::gt(1), A(), A(), A(), Y(), A(), L::Medium},
            {L::Medium, A(), A(), Guard::gt(1), A(), A(), B(), A(), L::Difficult},
            {L::Difficult, A(), A(), A(), A(), Guard::gt(3), B(), A(), L::Advanced},
        };
        return rt;
    }();
    return t;
}

inline RuleTables RuleTables::from_stream(std::istream& in, const RuleTables& base) {
    RuleTables out = base;
    std::string section;
    bool logic_fresh = false, nl_fresh = false;
    std::string raw;
    std::size_t lineno = 0;

    auto parse_level = [](const std::string& s, std::size_t line) {
        std::optional<DifficultyLevel> l = level_from_string(s);
        if (!l)
            throw SchemaError(line, "unknown difficulty level '" + s + "'");
        return *l;
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#')
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw SchemaError(lineno, "unterminated section header");
            section = line.substr(1, line.size() - 2);
            if (section != "logic" && section != "nl")
                throw SchemaError(lineno, "unknown section [" + section + "]");
            continue;
        }
        if (section.empty())
            throw SchemaError(lineno, "rule line before any [section] header");

        std::vector<std::string> cols = detail::split_ws(line);
        if (section == "logic") {
            if (!logic_fresh) {
                out.logic.clear();
                logic_fresh = true;
            }
            if (cols.size() != 6)
                throw SchemaError(lineno, "[logic] rows need 6 columns, got " +
                                              std::to_string(cols.size()));
            LogicRule r;
            r.implications = Guard::parse(cols[0], lineno);
            r.quantifiers = Guard::parse(cols[1], lineno);
            r.has_forall = BoolGuard::parse(cols[2], lineno);
            r.has_exists = BoolGuard::parse(cols[3], lineno);
            r.distinct = Guard::parse(cols[4], lineno);
            r.output = parse_level(cols[5], lineno);
            out.logic.push_back(r);
        } else {
            if (!nl_fresh) {
                out.nl.clear();
                nl_fresh = true;
            }
            if (cols.size() != 9)
                throw SchemaError(lineno, "[nl] rows need 9 columns, got " +
                                              std::to_string(cols.size()));
            NlRule r;
            if (cols[0] != "*")
                r.base = parse_level(cols[0], lineno);
            r.word_order = Guard::parse(cols[1], lineno);
            r.anaphora = Guard::parse(cols[2], lineno);
            r.negation = Guard::parse(cols[3], lineno);
            r.special = Guard::parse(cols[4], lineno);
            r.cue_sum = Guard::parse(cols[5], lineno);
            r.quant_mismatch = BoolGuard::parse(cols[6], lineno);
            r.connective = Guard::parse(cols[7], lineno);
            r.output = parse_level(cols[8], lineno);
            out.nl.push_back(r);
        }
    }
    return out;
}

inline RuleTables RuleTables::from_file(const std::filesystem::path& path, const RuleTables& base) {
    std::ifstream in(path);
    if (!in)
        throw SchemaError(0, "cannot open rule-table file " + path.string());
    return from_stream(in, base);
}

// ── rule engine ──────────────────────────────────────────────────────────

inline DifficultyLevel logic_difficulty(const features::LogicFeatures& lf,
                                        const std::vector<LogicRule>& table) {
    for (const LogicRule& r : table)
        if (r.matches(lf))
            return r.output;
    throw NoRuleMatchedError(
        "no logic rule matches features {implications=" + std::to_string(lf.num_implications) +
        ", quantifiers=" + std::to_string(lf.num_quantifiers) +
        ", forall=" + (lf.has_forall ? "yes" : "no") +
        ", exists=" + (lf.has_exists ? "yes" : "no") +
        ", distinct_connectives=" + std::to_string(lf.num_distinct_connectives) + "}");
}

inline DifficultyLevel nl_adjusted_difficulty(DifficultyLevel base, const features::NlFeatures& nl,
                                              const std::vector<NlRule>& table) {
    for (const NlRule& r : table)
        if (r.matches(base, nl))
            return r.output;
    return base;
}

// ── scoring ──────────────────────────────────────────────────────────────

struct ScoreConfig {
    features::WordOrderMode word_order_mode = features::WordOrderMode::Perikos;
    int unmatched_penalty = 0;
    RuleTables tables = RuleTables::builtin();
};

struct FormulaScore {
    DifficultyLevel level = DifficultyLevel::VeryEasy;      // after NL adjustment
    DifficultyLevel base_level = DifficultyLevel::VeryEasy; // logic stage only
    features::LogicFeatures logic;
    features::NlFeatures nl;
};

inline FormulaScore score_formula(std::string_view sentence, const fol::Formula& f,
                                  const Lexicon& lex, const ScoreConfig& cfg = {}) {
    FormulaScore s;
    s.logic = features::extract_logic_features(f);
    s.base_level = logic_difficulty(s.logic, cfg.tables.logic);
    std::vector<features::Token> tokens = features::tokenize(sentence);
    s.nl = features::extract_nl_features(tokens, f, lex, cfg.word_order_mode, cfg.unmatched_penalty);
    s.level = nl_adjusted_difficulty(s.base_level, s.nl, cfg.tables.nl);
    return s;
}

struct WeightedFormula {
    fol::FormulaPtr formula;
    int weight = 1;
};

enum class Aggregation { Mean, Min, Modal };

inline double score_exercise(std::string_view sentence, const std::vector<WeightedFormula>& refs,
                             const Lexicon& lex, const ScoreConfig& cfg = {},
                             Aggregation agg = Aggregation::Mean) {
    if (refs.empty())
        throw EmptyReferenceSetError();
    double weighted_sum = 0;
    long long total_weight = 0;
    int min_level = 4;
    int modal_level = 4;
    int modal_weight = -1;
    for (const WeightedFormula& wf : refs) {
        if (!wf.formula)
            throw Error("null reference formula");
        if (wf.weight < 1)
            throw Error("reference weight must be >= 1");
        int level = numeric(score_formula(sentence, *wf.formula, lex, cfg).level);
        weighted_sum += static_cast<double>(level) * wf.weight;
        total_weight += wf.weight;
        min_level = std::min(min_level, level);
        if (wf.weight > modal_weight || (wf.weight == modal_weight && level < modal_level)) {
            modal_weight = wf.weight;
            modal_level = level;
        }
    }
    switch (agg) {
    case Aggregation::Mean: return weighted_sum / static_cast<double>(total_weight);
    case Aggregation::Min: return min_level;
    default: return modal_level;
    }
}

} // namespace foldiff::rules
