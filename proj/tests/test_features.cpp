#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "foldiff/features.hpp"
#include "helpers.hpp"

using namespace foldiff;

static fol::FormulaPtr parse_ok(const std::string& text) {
    fol::ParseResult r = fol::parse_formula(text);
    REQUIRE(r.ok());
    return r.formula;
}

static Lexicon lexicon_from(const std::string& text) {
    std::istringstream in(text);
    return Lexicon::from_stream(in, Lexicon::defaults());
}

// ── tokenize / lemmatize ─────────────────────────────────────────────────

TEST_CASE("tokenize lowercases, strips punctuation, keeps order") {
    std::vector<features::Token> toks = features::tokenize("A large cube is in front of a small cube");
    REQUIRE(toks.size() == 10);
    CHECK(toks[2].lemma == "cube");
    CHECK(toks[2].position == 3);
    CHECK(toks[9].lemma == "cube");
    CHECK(toks[9].position == 10);

    std::vector<features::Token> fruit = features::tokenize("Apples and oranges are fruits");
    REQUIRE(fruit.size() == 5);
    CHECK(fruit[0].lemma == "apple");
    CHECK(fruit[1].lemma == "and");
    CHECK(fruit[2].lemma == "orange");
    CHECK(fruit[3].lemma == "are");
    CHECK(fruit[4].lemma == "fruit");

    CHECK(features::tokenize("").empty());
    CHECK(features::tokenize("  ,,  !?").empty());
}

TEST_CASE("tokenize splits n't and trims apostrophes") {
    std::vector<features::Token> toks = features::tokenize("Max isn't 'home'");
    REQUIRE(toks.size() == 4);
    CHECK(toks[0].text == "max");
    CHECK(toks[1].text == "is");
    CHECK(toks[2].text == "n't");
    CHECK(toks[3].text == "home");
}

TEST_CASE("lemmatizer strips one suffix") {
    CHECK(features::lemmatize("cubes") == "cube");
    CHECK(features::lemmatize("boxes") == "box");
    CHECK(features::lemmatize("matches") == "match");
    CHECK(features::lemmatize("glasses") == "glass");
    CHECK(features::lemmatize("adjoins") == "adjoin");
    CHECK(features::lemmatize("walked") == "walk");
    CHECK(features::lemmatize("feeding") == "feed");
    CHECK(features::lemmatize("is") == "is");       // too short for -s
    CHECK(features::lemmatize("glass") == "glass"); // -ss protected
    CHECK(features::lemmatize("red") == "red");     // too short for -ed
}

// ── alignment ────────────────────────────────────────────────────────────

TEST_CASE("alignment pairs ranks among matched items, order-preserving per symbol") {
    fol::FormulaPtr f = parse_ok(
        "exists x (Cube(x) & Large(x) & exists y (Cube(y) & Small(y) & FrontOf(x,y)))");
    std::vector<features::Token> toks =
        features::tokenize("A large cube is in front of a small cube");
    features::Alignment a = features::align_predicates(*f, toks, Lexicon::defaults());

    REQUIRE(a.pairs.size() == 5);
    CHECK(a.unmatched_predicates.empty());
    // (predicate_rank, word_rank): Cube(1,2) Large(2,1) Cube(3,5) Small(4,4) FrontOf(5,3)
    CHECK(a.pairs[0].symbol == "Cube");
    CHECK(a.pairs[0].predicate_rank == 1);
    CHECK(a.pairs[0].word_rank == 2);
    CHECK(a.pairs[1].symbol == "Large");
    CHECK(a.pairs[1].predicate_rank == 2);
    CHECK(a.pairs[1].word_rank == 1);
    CHECK(a.pairs[2].symbol == "Cube");
    CHECK(a.pairs[2].predicate_rank == 3);
    CHECK(a.pairs[2].word_rank == 5);
    CHECK(a.pairs[3].symbol == "Small");
    CHECK(a.pairs[3].predicate_rank == 4);
    CHECK(a.pairs[3].word_rank == 4);
    CHECK(a.pairs[4].symbol == "FrontOf");
    CHECK(a.pairs[4].predicate_rank == 5);
    CHECK(a.pairs[4].word_rank == 3);
}

TEST_CASE("alignment trivial and unmatched cases") {
    Lexicon lex = lexicon_from("[predicates]\nHome: home\n");
    features::Alignment one = features::align_predicates(
        *parse_ok("Home(max)"), features::tokenize("Max is home"), lex);
    REQUIRE(one.pairs.size() == 1);
    CHECK(one.pairs[0].predicate_rank == 1);
    CHECK(one.pairs[0].word_rank == 1);

    features::Alignment none = features::align_predicates(
        *parse_ok("Cube(a)"), features::tokenize("Something is a tetrahedron"),
        Lexicon::defaults());
    CHECK(none.pairs.empty());
    CHECK(none.unmatched_predicates == std::vector<std::string>{"Cube"});
}

// ── word-order mismatch ──────────────────────────────────────────────────

TEST_CASE("word order mismatch: perikos sum and commutative-invariant minimum") {
    fol::FormulaPtr f = parse_ok(
        "exists x (Cube(x) & Large(x) & exists y (Cube(y) & Small(y) & FrontOf(x,y)))");
    std::vector<features::Token> toks =
        features::tokenize("A large cube is in front of a small cube");
    features::Alignment a = features::align_predicates(*f, toks, Lexicon::defaults());

    CHECK(features::word_order_mismatch(a, *f, features::WordOrderMode::Perikos) == 6);
    CHECK(features::word_order_mismatch(a, *f, features::WordOrderMode::CommutativeInvariant) == 0);
}

TEST_CASE("word order mismatch zero when ranks already agree") {
    Lexicon lex = lexicon_from("[predicates]\nHome: home\n");
    fol::FormulaPtr f = parse_ok("Home(max)");
    std::vector<features::Token> toks = features::tokenize("Max is home");
    features::Alignment a = features::align_predicates(*f, toks, lex);
    CHECK(features::word_order_mismatch(a, *f, features::WordOrderMode::Perikos) == 0);
    CHECK(features::word_order_mismatch(a, *f, features::WordOrderMode::CommutativeInvariant) == 0);
}

TEST_CASE("unmatched predicates cost nothing by default, penalty configurable") {
    fol::FormulaPtr f = parse_ok("Cube(a) & Next(a, b)"); // Next not in the default lexicon
    std::vector<features::Token> toks = features::tokenize("a cube");
    features::Alignment a = features::align_predicates(*f, toks, Lexicon::defaults());
    REQUIRE(a.unmatched_predicates == std::vector<std::string>{"Next"});
    CHECK(features::word_order_mismatch(a, *f, features::WordOrderMode::Perikos) == 0);
    CHECK(features::word_order_mismatch(a, *f, features::WordOrderMode::Perikos, 2) == 2);
    CHECK(features::word_order_mismatch(a, *f, features::WordOrderMode::CommutativeInvariant, 2) == 2);
}

TEST_CASE("commutative-invariant never exceeds perikos and is permutation-invariant") {
    // antecedent-consequent reversal still counts in both modes
    Lexicon lex = lexicon_from("[predicates]\nRain: rain\nWet: wet\n");
    fol::FormulaPtr f = parse_ok("Wet(g) -> Rain(s)");
    std::vector<features::Token> toks = features::tokenize("if rain then wet grass");
    features::Alignment a = features::align_predicates(*f, toks, lex);
    CHECK(features::word_order_mismatch(a, *f, features::WordOrderMode::Perikos) == 2);
    CHECK(features::word_order_mismatch(a, *f, features::WordOrderMode::CommutativeInvariant) == 2);
}

// ── cue counts ───────────────────────────────────────────────────────────

TEST_CASE("cue counts on the pet-domain sentence") {
    std::vector<features::Token> toks = features::tokenize(
        "Max fed Folly at 2pm, but if he gave her to Claire then, Folly was not hungry five minutes later.");
    CHECK(features::count_cues(toks, features::CueClass::Anaphora, Lexicon::defaults()) == 2);
    CHECK(features::count_cues(toks, features::CueClass::Negation, Lexicon::defaults()) == 1);
    CHECK(features::count_cues(toks, features::CueClass::Special, Lexicon::defaults()) == 1); // but
    CHECK(features::count_cues(features::tokenize("Folly is happy"),
                               features::CueClass::Special, Lexicon::defaults()) == 0);
}

TEST_CASE("multi-word special phrases match contiguously") {
    std::vector<features::Token> toks = features::tokenize("there are at least three cubes");
    CHECK(features::count_cues(toks, features::CueClass::Special, Lexicon::defaults()) == 1);
    std::vector<features::Token> split = features::tokenize("at the least");
    CHECK(features::count_cues(split, features::CueClass::Special, Lexicon::defaults()) == 0);
}

TEST_CASE("cue counting is case and punctuation insensitive") {
    CHECK(features::count_cues(features::tokenize("ONLY, Only; only!"),
                               features::CueClass::Special, Lexicon::defaults()) == 3);
}

// ── quantifier mismatch ──────────────────────────────────────────────────

TEST_CASE("quantifier mismatch fires when a cue's quantifier is absent") {
    std::vector<features::Token> toks = features::tokenize("Every cube is small");
    CHECK(features::quantifier_mismatch(toks, *parse_ok("exists x (Cube(x) & Small(x))"),
                                        Lexicon::defaults()));
    CHECK_FALSE(features::quantifier_mismatch(toks, *parse_ok("forall x (Cube(x) -> Small(x))"),
                                              Lexicon::defaults()));
    CHECK_FALSE(features::quantifier_mismatch(features::tokenize("Max is home"),
                                              *parse_ok("Home(max)"), Lexicon::defaults()));
}

TEST_CASE("negated-exists cue accepts either quantifier rendering") {
    std::vector<features::Token> toks = features::tokenize("No cube is small");
    CHECK_FALSE(features::quantifier_mismatch(toks, *parse_ok("~exists x (Cube(x) & Small(x))"),
                                              Lexicon::defaults()));
    CHECK_FALSE(features::quantifier_mismatch(toks, *parse_ok("forall x (Cube(x) -> ~Small(x))"),
                                              Lexicon::defaults()));
    CHECK(features::quantifier_mismatch(toks, *parse_ok("~(Cube(a) & Small(a))"),
                                        Lexicon::defaults()));
}

// ── connective mismatch ──────────────────────────────────────────────────

TEST_CASE("connective mismatch via lowest common connective of flanking atoms") {
    Lexicon lex = lexicon_from("[predicates]\napple: apple\norange: orange\nfruit: fruit\n");
    std::vector<features::Token> toks = features::tokenize("Apples and oranges are fruits");

    fol::FormulaPtr disj = parse_ok("forall x ((apple(x) | orange(x)) -> fruit(x))");
    features::Alignment a1 = features::align_predicates(*disj, toks, lex);
    CHECK(features::connective_mismatch(toks, *disj, a1, lex) == 1);

    fol::FormulaPtr conj =
        parse_ok("forall x (apple(x) -> fruit(x)) & forall x (orange(x) -> fruit(x))");
    features::Alignment a2 = features::align_predicates(*conj, toks, lex);
    CHECK(features::connective_mismatch(toks, *conj, a2, lex) == 0);
}

TEST_CASE("connective mismatch trivial agreement") {
    Lexicon lex = lexicon_from("[predicates]\nHome: home\nHappy: happy\n");
    std::vector<features::Token> toks = features::tokenize("Max is home and happy");
    fol::FormulaPtr f = parse_ok("Home(max) & Happy(max)");
    features::Alignment a = features::align_predicates(*f, toks, lex);
    CHECK(features::connective_mismatch(toks, *f, a, lex) == 0);
}

TEST_CASE("connective cue without flanking matches falls back to presence") {
    // no predicate words match, so "or" is checked against the census only
    Lexicon lex = lexicon_from("[predicates]\nP: zzz\n");
    std::vector<features::Token> toks = features::tokenize("tea or coffee");

    fol::FormulaPtr with_or = parse_ok("Tea(a) | Coffee(b)");
    features::Alignment a1 = features::align_predicates(*with_or, toks, lex);
    CHECK(features::connective_mismatch(toks, *with_or, a1, lex) == 0);

    fol::FormulaPtr with_and = parse_ok("Tea(a) & Coffee(b)");
    features::Alignment a2 = features::align_predicates(*with_and, toks, lex);
    CHECK(features::connective_mismatch(toks, *with_and, a2, lex) == 1);
}

// ── feature vectors ──────────────────────────────────────────────────────

TEST_CASE("logic feature extraction") {
    features::LogicFeatures lf =
        features::extract_logic_features(*parse_ok("forall x (Cube(x) -> exists y Next(x,y))"));
    CHECK(lf == features::LogicFeatures{1, 2, true, true, 1});

    CHECK(features::extract_logic_features(*parse_ok("Cube(a)")) ==
          features::LogicFeatures{0, 0, false, false, 0});

    features::LogicFeatures folly = features::extract_logic_features(
        *parse_ok("Fed(M,F,2:00) & (Gave(M,F,C,2:00) -> ~Hungry(F,2:05))"));
    CHECK(folly == features::LogicFeatures{1, 0, false, false, 3});

    CHECK_THROWS_AS(features::extract_logic_features(*parse_ok("Cube(a) <-> Small(a)")),
                    ContainsBiconditionalError);
}

TEST_CASE("nl feature extraction bundles the six features") {
    fol::FormulaPtr f = parse_ok(
        "exists x (Cube(x) & Large(x) & exists y (Cube(y) & Small(y) & FrontOf(x,y)))");
    std::vector<features::Token> toks =
        features::tokenize("A large cube is in front of a small cube");
    features::NlFeatures nl = features::extract_nl_features(toks, *f, Lexicon::defaults());
    CHECK(nl.word_order_mismatch == 6);
    CHECK(nl.anaphora_count == 0);
    CHECK(nl.negation_count == 0);
    CHECK(nl.special_phrase_count == 0);
    CHECK_FALSE(nl.quantifier_mismatch);

    features::NlFeatures ci = features::extract_nl_features(
        toks, *f, Lexicon::defaults(), features::WordOrderMode::CommutativeInvariant);
    CHECK(ci.word_order_mismatch == 0);
}

TEST_CASE("average predicate arity") {
    CHECK(features::avg_predicate_arity(
              *parse_ok("Fed(M,F,2:00) & (Gave(M,F,C,2:00) -> ~Hungry(F,2:05))")) == 3.0);
    CHECK(features::avg_predicate_arity(*parse_ok("Cube(a)")) == 1.0);
    CHECK(features::avg_predicate_arity(*parse_ok("FrontOf(a,b) & Cube(a)")) == 1.5);
}

TEST_CASE("arity invariant under conjunct permutation and variable renaming") {
    CHECK(features::avg_predicate_arity(*parse_ok("Cube(a) & FrontOf(a,b)")) ==
          features::avg_predicate_arity(*parse_ok("FrontOf(u,v) & Cube(u)")));
}

TEST_CASE("monadic check excludes equality") {
    CHECK(features::is_monadic(*parse_ok("forall x (Cube(x) -> Small(x))")));
    CHECK_FALSE(features::is_monadic(*parse_ok("exists x exists y FrontOf(x,y)")));
    CHECK(features::is_monadic(*parse_ok("Cube(a) & a = b")));
}

// ── properties ───────────────────────────────────────────────────────────

TEST_CASE("commutative-invariant <= perikos on random inputs") {
    testutil::Rng rng(0xBEEFull);
    const char* sentences[] = {
        "a large cube is in front of a small cube",
        "every small tet is left of a dodec",
        "cube cube small large between",
        "nothing here matches at all",
    };
    for (int i = 0; i < 300; ++i) {
        fol::FormulaPtr f = testutil::random_formula_no_iff(rng, 5);
        std::vector<features::Token> toks =
            features::tokenize(sentences[rng.below(4)]);
        features::Alignment a = features::align_predicates(*f, toks, Lexicon::defaults());
        int p = features::word_order_mismatch(a, *f, features::WordOrderMode::Perikos);
        int c = features::word_order_mismatch(a, *f, features::WordOrderMode::CommutativeInvariant);
        INFO(fol::render_formula(*f, fol::RenderStyle::Ascii));
        CHECK(c <= p);
    }
}
