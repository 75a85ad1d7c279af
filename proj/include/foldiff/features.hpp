#pragma once

// Feature extraction: the logic-feature vector consumed by the rule tables
// and the six natural-language features (word-order mismatch, anaphora,
// negation, special phrases, quantifier mismatch, connective mismatch).
//
// Word positions are ordinal ranks among matched items, not raw token
// indices, so function words never inflate the mismatch. The
// commutative-invariant word-order mode minimizes the mismatch over
// permutations of operands within maximal ∧/∨ blocks.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "foldiff/errors.hpp"
#include "foldiff/fol.hpp"
#include "foldiff/lexicon.hpp"

namespace foldiff::features {

// ── tokenization ─────────────────────────────────────────────────────────

struct Token {
    std::string text;  // lowercased, punctuation-stripped
    std::string lemma; // single suffix-stripping pass
    int position = 0;  // 1-based
    bool operator==(const Token&) const = default;
};

// plural -s/-es and verbal -ed/-ing stripping; one suffix per word
inline std::string lemmatize(std::string_view word) {
    using detail::ends_with;
    std::string w(word);
    if (ends_with(w, "sses") || ends_with(w, "xes") || ends_with(w, "ches") ||
        ends_with(w, "shes") || ends_with(w, "zes"))
        return w.substr(0, w.size() - 2);
    if (ends_with(w, "s") && !ends_with(w, "ss") && w.size() >= 3)
        return w.substr(0, w.size() - 1);
    if (ends_with(w, "ed") && w.size() >= 5)
        return w.substr(0, w.size() - 2);
    if (ends_with(w, "ing") && w.size() >= 6)
        return w.substr(0, w.size() - 3);
    return w;
}

inline std::vector<Token> tokenize(std::string_view sentence) {
    std::vector<Token> out;
    auto word_char = [](unsigned char c) {
        return std::isalnum(c) || c == '\'' || c == '_' || c >= 0x80;
    };
    auto emit = [&](std::string_view chunk) {
        // trim stray apostrophes, split a trailing n't into its own token
        std::size_t b = 0, e = chunk.size();
        while (b < e && chunk[b] == '\'')
            ++b;
        while (e > b && chunk[e - 1] == '\'')
            --e;
        if (b == e)
            return;
        std::string w = detail::lower(chunk.substr(b, e - b));
        std::vector<std::string> parts;
        if (detail::ends_with(w, "n't") && w.size() > 3) {
            parts.push_back(w.substr(0, w.size() - 3));
            parts.push_back("n't");
        } else {
            parts.push_back(w);
        }
        for (std::string& p : parts) {
            int pos = static_cast<int>(out.size()) + 1;
            out.push_back({p, lemmatize(p), pos});
        }
    };
    std::size_t i = 0;
    while (i < sentence.size()) {
        if (!word_char(static_cast<unsigned char>(sentence[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < sentence.size() && word_char(static_cast<unsigned char>(sentence[i])))
            ++i;
        emit(sentence.substr(start, i - start));
    }
    return out;
}

namespace detail_f {

// cue entries match a token by lemma or by raw lowercased text, so inflected
// list entries ("themselves") still hit
inline bool entry_matches(const std::string& entry, const Token& t) {
    return entry == t.lemma || entry == t.text;
}

inline bool phrase_at(const Phrase& phrase, const std::vector<Token>& toks, std::size_t i) {
    if (i + phrase.size() > toks.size())
        return false;
    for (std::size_t k = 0; k < phrase.size(); ++k)
        if (!entry_matches(phrase[k], toks[i + k]))
            return false;
    return true;
}

} // namespace detail_f

// ── alignment ────────────────────────────────────────────────────────────

struct AlignedPair {
    std::string symbol;
    int occurrence_index = 0; // 0-based index into predicate_occurrences(f)
    int token_position = 0;   // 1-based sentence position of the matched word
    int predicate_rank = 0;   // 1-based rank among matched occurrences
    int word_rank = 0;        // 1-based rank among matched words
};

struct Alignment {
    std::vector<AlignedPair> pairs;                // ordered by predicate_rank
    std::vector<std::string> unmatched_predicates; // formula order
    std::vector<std::string> unmatched_cue_words;  // lexicon hits left unclaimed
    // per symbol, the matched words' ranks in ascending sentence order;
    // enough to re-pair occurrences after operand permutations
    std::map<std::string, std::vector<int>> matched_word_ranks;
};

inline Alignment align_predicates(const fol::Formula& f, const std::vector<Token>& tokens,
                                  const Lexicon& lex) {
    Alignment out;
    std::vector<fol::PredicateOccurrence> occs = fol::predicate_occurrences(f);

    // symbols in order of first occurrence; per-symbol demand
    std::vector<std::string> symbols;
    std::map<std::string, int> demand;
    for (const auto& occ : occs) {
        if (demand.find(occ.symbol) == demand.end())
            symbols.push_back(occ.symbol);
        ++demand[occ.symbol];
    }

    // candidate tokens per symbol
    std::map<std::string, std::vector<std::size_t>> candidates;
    for (std::size_t ti = 0; ti < tokens.size(); ++ti) {
        for (const std::string& sym : symbols) {
            auto it = lex.predicates.find(sym);
            if (it == lex.predicates.end())
                continue;
            for (const std::string& lemma : it->second)
                if (detail_f::entry_matches(lemma, tokens[ti])) {
                    candidates[sym].push_back(ti);
                    break;
                }
        }
    }

    // claim words: each symbol takes its first unclaimed candidates,
    // leftmost-to-leftmost (order-preserving within the symbol)
    std::vector<char> claimed(tokens.size(), 0);
    std::map<std::string, std::vector<std::size_t>> taken;
    for (const std::string& sym : symbols) {
        int want = demand[sym];
        for (std::size_t ti : candidates[sym]) {
            if (static_cast<int>(taken[sym].size()) >= want)
                break;
            if (!claimed[ti]) {
                claimed[ti] = 1;
                taken[sym].push_back(ti);
            }
        }
    }

    // global ranks among matched items on both sides
    std::vector<std::size_t> matched_tokens;
    for (std::size_t ti = 0; ti < tokens.size(); ++ti)
        if (claimed[ti])
            matched_tokens.push_back(ti);
    std::map<std::size_t, int> word_rank;
    for (std::size_t r = 0; r < matched_tokens.size(); ++r)
        word_rank[matched_tokens[r]] = static_cast<int>(r) + 1;

    std::map<std::string, int> used; // occurrences of sym already paired
    int predicate_rank = 0;
    for (std::size_t oi = 0; oi < occs.size(); ++oi) {
        const std::string& sym = occs[oi].symbol;
        int idx = used[sym]++;
        if (idx < static_cast<int>(taken[sym].size())) {
            std::size_t ti = taken[sym][idx];
            out.pairs.push_back({sym, static_cast<int>(oi), tokens[ti].position,
                                 ++predicate_rank, word_rank[ti]});
        } else {
            out.unmatched_predicates.push_back(sym);
        }
    }

    for (auto& [sym, tis] : taken) {
        std::vector<int>& ranks = out.matched_word_ranks[sym];
        for (std::size_t ti : tis)
            ranks.push_back(word_rank[ti]);
        std::sort(ranks.begin(), ranks.end());
    }

    for (auto& [sym, cand] : candidates)
        for (std::size_t ti : cand)
            if (!claimed[ti])
                out.unmatched_cue_words.push_back(tokens[ti].text);

    return out;
}

// ── word-order mismatch ──────────────────────────────────────────────────

enum class WordOrderMode { Perikos, CommutativeInvariant };

namespace detail_f {

struct BlockNode {
    enum Kind { Leaf, Fixed, Block } kind = Leaf;
    std::string symbol;           // Leaf
    int occ = -1;                 // Leaf: original occurrence index
    int block_id = -1;            // Block: index into the orders table
    std::vector<BlockNode> kids;  // Fixed / Block
};

inline void flatten_operands(const fol::Formula& f, fol::NodeKind op,
                             std::vector<const fol::Formula*>& out) {
    if (f.kind == op) {
        flatten_operands(*f.lhs, op, out);
        flatten_operands(*f.rhs, op, out);
    } else {
        out.push_back(&f);
    }
}

inline BlockNode build_block_tree(const fol::Formula& f, int& counter) {
    BlockNode n;
    switch (f.kind) {
    case fol::NodeKind::Atomic:
        n.kind = BlockNode::Leaf;
        n.symbol = f.atom.predicate;
        n.occ = counter++;
        return n;
    case fol::NodeKind::And:
    case fol::NodeKind::Or: {
        n.kind = BlockNode::Block;
        std::vector<const fol::Formula*> operands;
        flatten_operands(f, f.kind, operands);
        for (const fol::Formula* op : operands)
            n.kids.push_back(build_block_tree(*op, counter));
        return n;
    }
    case fol::NodeKind::Not:
    case fol::NodeKind::ForAll:
    case fol::NodeKind::Exists:
        n.kind = BlockNode::Fixed;
        n.kids.push_back(build_block_tree(*f.lhs, counter));
        return n;
    default: // Implies, Iff
        n.kind = BlockNode::Fixed;
        n.kids.push_back(build_block_tree(*f.lhs, counter));
        n.kids.push_back(build_block_tree(*f.rhs, counter));
        return n;
    }
}

struct ArrangementCost {
    std::map<std::string, std::vector<int>> ranks;
    std::map<std::string, std::size_t> cursor;
    int matched_rank = 0;
    long long cost = 0;

    // record per-occurrence word ranks when requested (greedy keying)
    std::vector<int>* occ_rank = nullptr;

    void leaf(const BlockNode& n) {
        auto it = ranks.find(n.symbol);
        if (it == ranks.end())
            return;
        std::size_t& c = cursor[n.symbol];
        if (c >= it->second.size())
            return;
        int wr = it->second[c++];
        int pr = ++matched_rank;
        cost += wr > pr ? wr - pr : pr - wr;
        if (occ_rank)
            (*occ_rank)[n.occ] = wr;
    }
};

// orders[b] is the child order for the block with block_id b
inline void walk_arrangement(const BlockNode& n, const std::vector<std::vector<int>>& orders,
                             ArrangementCost& acc) {
    switch (n.kind) {
    case BlockNode::Leaf:
        acc.leaf(n);
        return;
    case BlockNode::Fixed:
        for (const BlockNode& k : n.kids)
            walk_arrangement(k, orders, acc);
        return;
    case BlockNode::Block:
        for (int ki : orders[n.block_id])
            walk_arrangement(n.kids[ki], orders, acc);
        return;
    }
}

inline void collect_blocks(BlockNode& n, std::vector<BlockNode*>& out) {
    if (n.kind == BlockNode::Block) {
        n.block_id = static_cast<int>(out.size());
        out.push_back(&n);
    }
    for (BlockNode& k : n.kids)
        collect_blocks(k, out);
}

inline int min_occ_rank(const BlockNode& n, const std::vector<int>& occ_rank) {
    if (n.kind == BlockNode::Leaf)
        return n.occ >= 0 && occ_rank[n.occ] > 0 ? occ_rank[n.occ]
                                                 : std::numeric_limits<int>::max();
    int best = std::numeric_limits<int>::max();
    for (const BlockNode& k : n.kids)
        best = std::min(best, min_occ_rank(k, occ_rank));
    return best;
}

} // namespace detail_f

inline int word_order_mismatch(const Alignment& a, const fol::Formula& f, WordOrderMode mode,
                               int unmatched_penalty = 0) {
    long long penalty =
        static_cast<long long>(unmatched_penalty) * static_cast<long long>(a.unmatched_predicates.size());

    long long perikos = 0;
    for (const AlignedPair& p : a.pairs)
        perikos += std::abs(p.predicate_rank - p.word_rank);

    if (mode == WordOrderMode::Perikos)
        return static_cast<int>(perikos + penalty);

    int counter = 0;
    detail_f::BlockNode root = detail_f::build_block_tree(f, counter);
    std::vector<detail_f::BlockNode*> blocks;
    detail_f::collect_blocks(root, blocks);
    if (blocks.empty())
        return static_cast<int>(perikos + penalty);

    auto evaluate = [&](const std::vector<std::vector<int>>& orders,
                        std::vector<int>* rank_out) -> long long {
        detail_f::ArrangementCost acc;
        acc.ranks = a.matched_word_ranks;
        acc.occ_rank = rank_out;
        detail_f::walk_arrangement(root, orders, acc);
        return acc.cost;
    };

    std::vector<std::vector<int>> orders(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        orders[b].resize(blocks[b]->kids.size());
        for (std::size_t k = 0; k < orders[b].size(); ++k)
            orders[b][k] = static_cast<int>(k);
    }

    // per-occurrence word ranks in the original arrangement, for greedy keys
    std::vector<int> occ_rank(counter, 0);
    long long best = evaluate(orders, &occ_rank);

    // exhaustive when every block is small and the total assignment count
    // stays tractable; greedy ordering by matched word ranks otherwise
    bool exhaustive = true;
    long long total = 1;
    for (detail_f::BlockNode* b : blocks) {
        if (b->kids.size() > 6) {
            exhaustive = false;
            break;
        }
        long long fact = 1;
        for (std::size_t k = 2; k <= b->kids.size(); ++k)
            fact *= static_cast<long long>(k);
        total *= fact;
        if (total > (1ll << 21)) {
            exhaustive = false;
            break;
        }
    }

    if (exhaustive) {
        // odometer over per-block permutations
        while (true) {
            std::size_t b = 0;
            while (b < blocks.size() && !std::next_permutation(orders[b].begin(), orders[b].end()))
                ++b;
            if (b == blocks.size())
                break;
            best = std::min(best, evaluate(orders, nullptr));
        }
    } else {
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            std::vector<int>& order = orders[b];
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
                return detail_f::min_occ_rank(blocks[b]->kids[x], occ_rank) <
                       detail_f::min_occ_rank(blocks[b]->kids[y], occ_rank);
            });
        }
        best = std::min(best, evaluate(orders, nullptr));
    }

    return static_cast<int>(best + penalty);
}

// ── cue features ─────────────────────────────────────────────────────────

enum class CueClass { Anaphora, Negation, Special };

inline int count_cues(const std::vector<Token>& tokens, CueClass cls, const Lexicon& lex) {
    const std::vector<Phrase>* list = cls == CueClass::Anaphora ? &lex.anaphora
                                    : cls == CueClass::Negation ? &lex.negation
                                                                : &lex.special;
    int count = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i)
        for (const Phrase& phrase : *list)
            if (detail_f::phrase_at(phrase, tokens, i)) {
                ++count;
                break; // one hit per start position
            }
    return count;
}

inline bool quantifier_mismatch(const std::vector<Token>& tokens, const fol::Formula& f,
                                const Lexicon& lex) {
    fol::ConnectiveCensus census = fol::connective_census(f);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        for (const auto& [phrase, kind] : lex.quantifier_cues) {
            if (!detail_f::phrase_at(phrase, tokens, i))
                continue;
            bool satisfied = kind == QuantCueKind::Forall    ? census.universals > 0
                           : kind == QuantCueKind::Exists    ? census.existentials > 0
                           : census.existentials > 0 || census.universals > 0;
            if (!satisfied)
                return true;
        }
    }
    return false;
}

inline int connective_mismatch(const std::vector<Token>& tokens, const fol::Formula& f,
                               const Alignment& a, const Lexicon& lex) {
    fol::ConnectiveCensus census = fol::connective_census(f);
    // matched token position -> occurrence index
    std::vector<std::pair<int, int>> matched;
    for (const AlignedPair& p : a.pairs)
        matched.emplace_back(p.token_position, p.occurrence_index);
    std::sort(matched.begin(), matched.end());

    auto present = [&](ConnCueKind k) {
        switch (k) {
        case ConnCueKind::And: return census.conjunctions > 0;
        case ConnCueKind::Or: return census.disjunctions > 0;
        case ConnCueKind::Implies: return census.implications > 0;
        default: return census.negations > 0;
        }
    };
    auto kind_of = [](fol::NodeKind k) {
        switch (k) {
        case fol::NodeKind::And: return ConnCueKind::And;
        case fol::NodeKind::Or: return ConnCueKind::Or;
        case fol::NodeKind::Implies: return ConnCueKind::Implies;
        default: return ConnCueKind::Not; // Iff/Not: matches no cue's expectation
        }
    };

    int mismatches = 0;
    for (const Token& t : tokens) {
        for (const auto& [word, expected] : lex.connective_cues) {
            if (!detail_f::entry_matches(word, t))
                continue;
            const std::pair<int, int>* left = nullptr;
            const std::pair<int, int>* right = nullptr;
            for (const auto& m : matched) {
                if (m.first < t.position)
                    left = &m;
                if (m.first > t.position) {
                    right = &m;
                    break;
                }
            }
            bool ok;
            if (left && right) {
                fol::NodeKind lca = fol::lowest_common_connective(f, left->second, right->second);
                ok = lca != fol::NodeKind::Iff && lca != fol::NodeKind::Atomic &&
                     kind_of(lca) == expected;
            } else {
                ok = present(expected);
            }
            if (!ok)
                ++mismatches;
            break; // at most one cue entry per token
        }
    }
    return mismatches;
}

// ── feature vectors ──────────────────────────────────────────────────────

struct LogicFeatures {
    int num_implications = 0;
    int num_quantifiers = 0;
    bool has_forall = false;
    bool has_exists = false;
    int num_distinct_connectives = 0;
    bool operator==(const LogicFeatures&) const = default;
};

inline LogicFeatures extract_logic_features(const fol::Formula& f) {
    fol::ConnectiveCensus c = fol::connective_census(f);
    if (c.biconditionals > 0)
        throw ContainsBiconditionalError();
    return {c.implications, c.quantifiers(), c.universals > 0, c.existentials > 0,
            c.distinct_connectives()};
}

struct NlFeatures {
    int word_order_mismatch = 0;
    int anaphora_count = 0;
    int negation_count = 0;
    int special_phrase_count = 0;
    bool quantifier_mismatch = false;
    int connective_mismatch_count = 0;
    bool operator==(const NlFeatures&) const = default;
};

inline NlFeatures extract_nl_features(const std::vector<Token>& tokens, const fol::Formula& f,
                                      const Lexicon& lex,
                                      WordOrderMode mode = WordOrderMode::Perikos,
                                      int unmatched_penalty = 0) {
    Alignment a = align_predicates(f, tokens, lex);
    NlFeatures nl;
    nl.word_order_mismatch = word_order_mismatch(a, f, mode, unmatched_penalty);
    nl.anaphora_count = count_cues(tokens, CueClass::Anaphora, lex);
    nl.negation_count = count_cues(tokens, CueClass::Negation, lex);
    nl.special_phrase_count = count_cues(tokens, CueClass::Special, lex);
    nl.quantifier_mismatch = quantifier_mismatch(tokens, f, lex);
    nl.connective_mismatch_count = connective_mismatch(tokens, f, a, lex);
    return nl;
}

inline double avg_predicate_arity(const fol::Formula& f) {
    std::vector<fol::PredicateOccurrence> occs = fol::predicate_occurrences(f);
    if (occs.empty())
        throw Error("formula has no atoms");
    long long total = 0;
    for (const auto& o : occs)
        total += o.arity;
    return static_cast<double>(total) / static_cast<double>(occs.size());
}

inline bool is_monadic(const fol::Formula& f) {
    for (const auto& o : fol::predicate_occurrences(f))
        if (o.symbol != "=" && o.arity != 1)
            return false;
    return true;
}

} // namespace foldiff::features
