// Scores a handful of sentence/formula pairs with the default rule tables
// and prints both pipeline stages. The last two pairs show the two ways a
// formula can be rejected: a biconditional, and a feature combination the
// builtin table does not cover.

#include <iostream>
#include <string>
#include <vector>

#include "foldiff/foldiff.hpp"

int main() {
    using namespace foldiff;

    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"Max is home", "Home(max)"},
        {"Max fed Folly at 2pm, but if he gave her to Claire then, Folly was not hungry "
         "five minutes later.",
         "Fed(max, folly, 2:00) & (Gave(max, folly, claire, 2:00) -> ~Hungry(folly, 2:05))"},
        {"Every cube has something next to it", "forall x (Cube(x) -> exists y Next(x,y))"},
        {"There are exactly 3 cubes",
         "exists x exists y exists z (Cube(x) & Cube(y) & Cube(z) & x != y & x != z & y != z"
         " & forall w (Cube(w) -> (w = x | w = y | w = z)))"},
        {"Max is home just in case Folly is happy", "Home(max) <-> Happy(folly)"},
        {"A large cube is in front of a small cube",
         "exists x (Cube(x) & Large(x) & exists y (Cube(y) & Small(y) & FrontOf(x,y)))"},
    };

    for (const auto& [sentence, text] : pairs) {
        fol::ParseResult parsed = fol::parse_formula(text);
        if (!parsed.ok()) {
            std::cout << "parse error: " << parsed.error->message() << "\n";
            continue;
        }
        std::cout << sentence << "\n  " << fol::render_formula(*parsed.formula) << "\n";
        try {
            rules::FormulaScore s =
                rules::score_formula(sentence, *parsed.formula, Lexicon::defaults());
            std::cout << "  logic stage: " << rules::to_string(s.base_level)
                      << ", after sentence cues: " << rules::to_string(s.level) << "\n\n";
        } catch (const ContainsBiconditionalError&) {
            std::cout << "  not scorable: the difficulty rules predate biconditionals\n\n";
        } catch (const NoRuleMatchedError& e) {
            std::cout << "  not scorable by the builtin table: " << e.what() << "\n"
                      << "  (data/tables/reconstruction.rules adds rows covering this)\n\n";
        }
    }
    return 0;
}
