#pragma once

// Error types shared across the foldiff modules. Parse errors are reported as
// values (see fol::ParseResult); everything here is a genuine domain error and
// is thrown.

#include <cstddef>
#include <stdexcept>
#include <string>

namespace foldiff {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Formula contains a biconditional; the difficulty tables do not cover it.
class ContainsBiconditionalError : public Error {
public:
    explicit ContainsBiconditionalError(const std::string& msg = "formula contains a biconditional")
        : Error(msg) {}
};

// No row of the logic rule table matches the formula's features.
class NoRuleMatchedError : public Error {
public:
    explicit NoRuleMatchedError(const std::string& msg) : Error(msg) {}
};

// score_exercise was given no reference formulas.
class EmptyReferenceSetError : public Error {
public:
    explicit EmptyReferenceSetError(const std::string& msg = "empty reference formula set")
        : Error(msg) {}
};

// A statistic was asked of a sample it is undefined for (n too small,
// zero variance, ...).
class DegenerateSampleError : public Error {
public:
    explicit DegenerateSampleError(const std::string& msg) : Error(msg) {}
};

// kmeans_1d received fewer distinct values than clusters.
class TooFewDistinctValuesError : public Error {
public:
    explicit TooFewDistinctValuesError(const std::string& msg) : Error(msg) {}
};

// The base design matrix of ols_nested_f is rank deficient.
class RankDeficientError : public Error {
public:
    explicit RankDeficientError(const std::string& msg) : Error(msg) {}
};

// Malformed corpus, lexicon or rule-table file. line is 1-based, 0 = unknown.
class SchemaError : public Error {
public:
    SchemaError(std::size_t line_, const std::string& msg)
        : Error(line_ == 0 ? msg : "line " + std::to_string(line_) + ": " + msg), line(line_) {}
    std::size_t line;
};

// Exercise has no submissions.
class EmptyExerciseError : public Error {
public:
    explicit EmptyExerciseError(const std::string& msg) : Error(msg) {}
};

// Exercise has no student with a correct attempt, so attempts-to-correct is
// undefined.
class NoCorrectSolutionsError : public Error {
public:
    explicit NoCorrectSolutionsError(const std::string& msg) : Error(msg) {}
};

} // namespace foldiff
