#pragma once

// Umbrella header: the whole library in one include.

#include "foldiff/corpus.hpp"
#include "foldiff/errors.hpp"
#include "foldiff/features.hpp"
#include "foldiff/fol.hpp"
#include "foldiff/lexicon.hpp"
#include "foldiff/report.hpp"
#include "foldiff/rules.hpp"
#include "foldiff/stats.hpp"

namespace foldiff {

// The primary entry points, lifted out of their sub-namespaces. The
// sub-namespaces stay available for the rest of the API.

using fol::Atom;
using fol::contains_biconditional;
using fol::Formula;
using fol::FormulaPtr;
using fol::parse_formula;
using fol::ParseError;
using fol::ParseResult;
using fol::render_formula;
using fol::RenderStyle;
using fol::Term;

using features::WordOrderMode;

using rules::Aggregation;
using rules::DifficultyLevel;
using rules::FormulaScore;
using rules::numeric;
using rules::RuleTables;
using rules::score_exercise;
using rules::score_formula;
using rules::ScoreConfig;
using rules::to_string;
using rules::WeightedFormula;

using corpus::compute_aa;
using corpus::compute_fac;
using corpus::Domain;
using corpus::EvalConfig;
using corpus::EvalReport;
using corpus::evaluate_corpus;
using corpus::Exercise;
using corpus::generate_synthetic_corpus;
using corpus::load_corpus;
using corpus::Submission;
using corpus::SynthParams;
using corpus::Verdict;
using corpus::write_corpus;

using report::print_report;

} // namespace foldiff
