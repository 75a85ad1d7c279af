// Shows how the two word-order modes treat a sentence whose formula lists
// its predicates in a different order than the prose. The strict mode sums
// rank displacements as written; the commutative-invariant mode first
// permutes operands within ∧/∨ blocks to minimize that sum.

#include <iostream>
#include <string>

#include "foldiff/foldiff.hpp"

static void show(const std::string& sentence, const std::string& text) {
    using namespace foldiff;
    fol::FormulaPtr f = fol::parse_formula(text).formula;
    std::vector<features::Token> tokens = features::tokenize(sentence);
    features::Alignment a = features::align_predicates(*f, tokens, Lexicon::defaults());

    std::cout << sentence << "\n  " << fol::render_formula(*f) << "\n  alignment:";
    for (const features::AlignedPair& p : a.pairs)
        std::cout << " " << p.symbol << "(rank " << p.predicate_rank << " -> word rank "
                  << p.word_rank << ")";
    std::cout << "\n  strict mismatch:    "
              << features::word_order_mismatch(a, *f, features::WordOrderMode::Perikos)
              << "\n  invariant mismatch: "
              << features::word_order_mismatch(a, *f,
                                               features::WordOrderMode::CommutativeInvariant)
              << "\n\n";
}

int main() {
    // the formula names the large cube first, the sentence names it first
    // too, but the nested conjunct order differs clause by clause
    show("A large cube is in front of a small cube",
         "exists x (Cube(x) & Large(x) & exists y (Cube(y) & Small(y) & FrontOf(x,y)))");

    // reordering across an implication is structural, not commutative:
    // both modes agree here
    show("If it is small then it is large", "Large(b) -> Small(b)");
    return 0;
}
