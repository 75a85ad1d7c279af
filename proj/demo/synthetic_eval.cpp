// Generates a small synthetic corpus with a monotone student model,
// evaluates it, and prints the correlation report. Harder strata get
// fewer first-attempt solves and more retries, so the difficulty score
// should correlate negatively with FAC and positively with AA.

#include <iostream>

#include "foldiff/foldiff.hpp"

int main() {
    using namespace foldiff;

    corpus::SynthParams params;
    params.n_exercises = 30;
    params.students_per_exercise = 25;
    std::vector<corpus::Exercise> corp = corpus::generate_synthetic_corpus(params, 42);

    corpus::EvalConfig cfg;
    corpus::EvalReport rep = corpus::evaluate_corpus(corp, Lexicon::defaults(), cfg);
    report::print_report(std::cout, rep);
    return 0;
}
