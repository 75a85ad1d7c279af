#pragma once

// Shared test utilities: a deterministic RNG, a random-formula generator
// that respects the term-classification invariants (so round-trips are
// exact), and fixture-path resolution.

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "foldiff/fol.hpp"

namespace testutil {

// splitmix64, deterministic across platforms
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

inline std::string data_dir() {
    const char* env = std::getenv("FOLDIFF_DATA_DIR");
    return env && *env ? env : ".";
}

// ── random formulas ──────────────────────────────────────────────────────

// quantifier variables come from this pool (single letters t..z parse as
// variables even when free); constants never collide with it
inline const std::vector<std::string>& var_pool() {
    static const std::vector<std::string> v = {"x", "y", "z", "u", "v", "w"};
    return v;
}

inline const std::vector<std::string>& const_pool() {
    static const std::vector<std::string> c = {"a", "b", "c", "d", "max", "folly", "2", "2:00"};
    return c;
}

struct PredSpec {
    const char* name;
    int arity;
};

inline const std::vector<PredSpec>& pred_pool() {
    static const std::vector<PredSpec> p = {
        {"Cube", 1}, {"Small", 1}, {"Large", 1}, {"Tet", 1},  {"Home", 1},
        {"Next", 2}, {"FrontOf", 2}, {"Larger", 2}, {"Between", 3},
    };
    return p;
}

inline foldiff::fol::Term random_term(Rng& rng, const std::vector<std::string>& scope) {
    using foldiff::fol::Term;
    using foldiff::fol::TermKind;
    if (!scope.empty() && rng.below(100) < 60)
        return {TermKind::Variable, scope[rng.below(static_cast<int>(scope.size()))]};
    if (rng.below(100) < 25) // free variable, single letter t..z
        return {TermKind::Variable, var_pool()[rng.below(static_cast<int>(var_pool().size()))]};
    return {TermKind::Constant, const_pool()[rng.below(static_cast<int>(const_pool().size()))]};
}

inline foldiff::fol::FormulaPtr random_atom(Rng& rng, const std::vector<std::string>& scope) {
    using namespace foldiff::fol;
    if (rng.below(100) < 15) { // equality or its != sugar
        Atom eq{"=", {random_term(rng, scope), random_term(rng, scope)}};
        FormulaPtr f = Formula::atomic(eq);
        return rng.below(2) ? Formula::negation(f) : f;
    }
    const PredSpec& spec = pred_pool()[rng.below(static_cast<int>(pred_pool().size()))];
    Atom a{spec.name, {}};
    for (int i = 0; i < spec.arity; ++i)
        a.args.push_back(random_term(rng, scope));
    return Formula::atomic(a);
}

inline foldiff::fol::FormulaPtr random_formula_rec(Rng& rng, int depth,
                                                   std::vector<std::string>& scope) {
    using namespace foldiff::fol;
    if (depth <= 0 || rng.below(100) < 25)
        return random_atom(rng, scope);
    switch (rng.below(7)) {
    case 0:
        return Formula::negation(random_formula_rec(rng, depth - 1, scope));
    case 1:
        return Formula::conjunction(random_formula_rec(rng, depth - 1, scope),
                                    random_formula_rec(rng, depth - 1, scope));
    case 2:
        return Formula::disjunction(random_formula_rec(rng, depth - 1, scope),
                                    random_formula_rec(rng, depth - 1, scope));
    case 3:
        return Formula::implication(random_formula_rec(rng, depth - 1, scope),
                                    random_formula_rec(rng, depth - 1, scope));
    case 4:
        return Formula::biconditional(random_formula_rec(rng, depth - 1, scope),
                                      random_formula_rec(rng, depth - 1, scope));
    default: {
        std::string v = var_pool()[rng.below(static_cast<int>(var_pool().size()))];
        scope.push_back(v);
        FormulaPtr body = random_formula_rec(rng, depth - 1, scope);
        scope.pop_back();
        return rng.below(2) ? Formula::forall(v, body) : Formula::exists(v, body);
    }
    }
}

inline foldiff::fol::FormulaPtr random_formula(Rng& rng, int max_depth) {
    std::vector<std::string> scope;
    return random_formula_rec(rng, max_depth, scope);
}

// biconditional-free variant, for feature/rule property tests
inline foldiff::fol::FormulaPtr random_formula_no_iff(Rng& rng, int max_depth) {
    for (int tries = 0; tries < 1000; ++tries) {
        foldiff::fol::FormulaPtr f = random_formula(rng, max_depth);
        if (!foldiff::fol::contains_biconditional(*f))
            return f;
    }
    throw std::runtime_error("could not generate a biconditional-free formula");
}

} // namespace testutil
