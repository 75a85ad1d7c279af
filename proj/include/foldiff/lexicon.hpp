#pragma once

// Lexicon: predicate-symbol-to-lemma mappings plus the cue-word tables used
// by the natural-language feature extractors. A default Tarski's World
// lexicon and default cue lists are built in; a lexicon file can replace any
// section (sections absent from the file keep the base values).
//
// File format, line oriented, '#' comments:
//
//   [predicates]          Symbol: lemma, lemma, ...
//   [anaphora]            phrase, phrase, ...        (one or more lines)
//   [negation]            phrase, phrase, ...
//   [special]             phrase, phrase, ...
//   [quantifier_cues]     forall|exists|negated_exists: phrase, phrase, ...
//   [connective_cues]     and|or|implies|not: word, word, ...
//
// Phrases may be multi-word ("at least"); everything is lowercased on load.

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "foldiff/detail/text.hpp"
#include "foldiff/errors.hpp"

namespace foldiff {

using Phrase = std::vector<std::string>;

enum class QuantCueKind { Forall, Exists, NegatedExists };
enum class ConnCueKind { And, Or, Implies, Not };

struct Lexicon {
    std::map<std::string, std::vector<std::string>> predicates;
    std::vector<Phrase> anaphora;
    std::vector<Phrase> negation;
    std::vector<Phrase> special;
    std::vector<std::pair<Phrase, QuantCueKind>> quantifier_cues;
    std::vector<std::pair<std::string, ConnCueKind>> connective_cues;

    static const Lexicon& defaults();
    static Lexicon from_stream(std::istream& in, const Lexicon& base);
    static Lexicon from_file(const std::filesystem::path& path, const Lexicon& base = defaults());
};

namespace detail {

inline Phrase to_phrase(const std::string& s) {
    return split_ws(lower(s));
}

inline std::vector<Phrase> phrase_list(const std::string& csv, std::size_t line) {
    std::vector<Phrase> out;
    for (const std::string& item : split(csv, ',')) {
        if (item.empty())
            throw SchemaError(line, "empty phrase in list");
        out.push_back(to_phrase(item));
    }
    return out;
}

} // namespace detail

inline const Lexicon& Lexicon::defaults() {
    static const Lexicon lex = [] {
        Lexicon l;
        l.predicates = {
            {"Cube", {"cube"}},
            {"Tet", {"tet", "tetrahedron"}},
            {"Dodec", {"dodec", "dodecahedron"}},
            {"Small", {"small"}},
            {"Medium", {"medium"}},
            {"Large", {"large"}},
            {"LeftOf", {"left"}},
            {"RightOf", {"right"}},
            {"FrontOf", {"front"}},
            {"BackOf", {"back"}},
            {"Between", {"between"}},
            {"Adjoins", {"adjoin"}},
            {"Smaller", {"smaller"}},
            {"Larger", {"larger"}},
            {"SameSize", {"size"}},
            {"SameShape", {"shape"}},
            {"SameRow", {"row"}},
            {"SameCol", {"column", "col"}},
        };
        auto phrases = [](std::initializer_list<const char*> items) {
            std::vector<Phrase> out;
            for (const char* s : items)
                out.push_back(detail::to_phrase(s));
            return out;
        };
        l.anaphora = phrases({"he", "she", "it", "they", "him", "her", "them",
                              "himself", "herself", "itself", "themselves"});
        l.negation = phrases({"not", "no", "never", "n't", "none", "nothing",
                              "nobody", "neither", "nor"});
        l.special = phrases({"only", "unless", "exactly", "at least", "at most",
                             "but", "if and only if", "just in case"});
        auto quant = [](std::initializer_list<const char*> items, QuantCueKind k) {
            std::vector<std::pair<Phrase, QuantCueKind>> out;
            for (const char* s : items)
                out.emplace_back(detail::to_phrase(s), k);
            return out;
        };
        for (auto& p : quant({"every", "all", "each", "any"}, QuantCueKind::Forall))
            l.quantifier_cues.push_back(p);
        for (auto& p : quant({"some", "a", "an", "there is", "there are"}, QuantCueKind::Exists))
            l.quantifier_cues.push_back(p);
        for (auto& p : quant({"no", "none"}, QuantCueKind::NegatedExists))
            l.quantifier_cues.push_back(p);
        l.connective_cues = {
            {"and", ConnCueKind::And}, {"but", ConnCueKind::And},
            {"or", ConnCueKind::Or},
            {"if", ConnCueKind::Implies}, {"then", ConnCueKind::Implies}, {"implies", ConnCueKind::Implies},
            {"not", ConnCueKind::Not},
        };
        return l;
    }();
    return lex;
}

inline Lexicon Lexicon::from_stream(std::istream& in, const Lexicon& base) {
    Lexicon out = base;
    std::string section;
    std::map<std::string, bool> seen; // first entry of a section replaces the base section
    std::string raw;
    std::size_t lineno = 0;

    auto fresh = [&](const std::string& name) {
        if (!seen[name]) {
            seen[name] = true;
            return true;
        }
        return false;
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
            if (section != "predicates" && section != "anaphora" && section != "negation" &&
                section != "special" && section != "quantifier_cues" && section != "connective_cues")
                throw SchemaError(lineno, "unknown section [" + section + "]");
            continue;
        }
        if (section.empty())
            throw SchemaError(lineno, "entry before any [section] header");

        if (section == "anaphora" || section == "negation" || section == "special") {
            auto* list = section == "anaphora" ? &out.anaphora
                       : section == "negation" ? &out.negation
                                               : &out.special;
            if (fresh(section))
                list->clear();
            for (Phrase& p : detail::phrase_list(line, lineno))
                list->push_back(std::move(p));
            continue;
        }

        // key/value rows take a tab or a colon as separator
        std::size_t sep = line.find('\t');
        if (sep == std::string::npos)
            sep = line.find(':');
        if (sep == std::string::npos)
            throw SchemaError(lineno, "expected 'key<TAB>values' or 'key: values' in [" + section + "]");
        std::string key = detail::trim(line.substr(0, sep));
        std::string values = line.substr(sep + 1);
        if (key.empty())
            throw SchemaError(lineno, "empty key");

        if (section == "predicates") {
            if (fresh(section))
                out.predicates.clear();
            std::vector<std::string> lemmas;
            for (const std::string& item : detail::split(values, ',')) {
                if (item.empty())
                    throw SchemaError(lineno, "empty lemma for predicate " + key);
                lemmas.push_back(detail::lower(item));
            }
            out.predicates[key] = std::move(lemmas);
        } else if (section == "quantifier_cues") {
            if (fresh(section))
                out.quantifier_cues.clear();
            QuantCueKind kind;
            if (key == "forall")
                kind = QuantCueKind::Forall;
            else if (key == "exists")
                kind = QuantCueKind::Exists;
            else if (key == "negated_exists")
                kind = QuantCueKind::NegatedExists;
            else
                throw SchemaError(lineno, "unknown quantifier cue kind '" + key + "'");
            for (Phrase& p : detail::phrase_list(values, lineno))
                out.quantifier_cues.emplace_back(std::move(p), kind);
        } else { // connective_cues
            if (fresh(section))
                out.connective_cues.clear();
            ConnCueKind kind;
            if (key == "and")
                kind = ConnCueKind::And;
            else if (key == "or")
                kind = ConnCueKind::Or;
            else if (key == "implies")
                kind = ConnCueKind::Implies;
            else if (key == "not")
                kind = ConnCueKind::Not;
            else
                throw SchemaError(lineno, "unknown connective cue kind '" + key + "'");
            for (const std::string& item : detail::split(values, ',')) {
                if (item.empty())
                    throw SchemaError(lineno, "empty cue word");
                out.connective_cues.emplace_back(detail::lower(item), kind);
            }
        }
    }
    return out;
}

inline Lexicon Lexicon::from_file(const std::filesystem::path& path, const Lexicon& base) {
    std::ifstream in(path);
    if (!in)
        throw SchemaError(0, "cannot open lexicon file " + path.string());
    return from_stream(in, base);
}

} // namespace foldiff
