#pragma once

// Command-line front end. `run` is the whole program: parse arguments,
// dispatch to score / features / eval, and map failures onto stable exit
// codes (0 ok, 2 input or parse error, 3 unsupported formula, 4 internal).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "foldiff/corpus.hpp"
#include "foldiff/errors.hpp"
#include "foldiff/features.hpp"
#include "foldiff/fol.hpp"
#include "foldiff/lexicon.hpp"
#include "foldiff/report.hpp"
#include "foldiff/rules.hpp"

namespace foldiff::cli {

namespace detail_cli {

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_unsupported = 3;
constexpr int exit_internal = 4;

struct CommonOpts {
    std::string lexicon_path;
    std::string rule_table_path;
    std::string word_order_mode = "perikos";
    std::string aggregation = "mean";
    int unmatched_penalty = 0;
};

inline void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--lexicon", opts.lexicon_path,
                    "lexicon file (default: env FOLDIFF_LEXICON, else built-in)");
    cmd->add_option("--rule-table", opts.rule_table_path, "rule table override file");
    cmd->add_option("--word-order-mode", opts.word_order_mode,
                    "perikos | commutative-invariant")
        ->check(CLI::IsMember({"perikos", "commutative-invariant", "commutative_invariant"}));
    cmd->add_option("--unmatched-penalty", opts.unmatched_penalty,
                    "word-order penalty per unmatched predicate occurrence");
}

inline Lexicon resolve_lexicon(const CommonOpts& opts) {
    if (!opts.lexicon_path.empty())
        return Lexicon::from_file(opts.lexicon_path);
    if (const char* env = std::getenv("FOLDIFF_LEXICON"); env && *env)
        return Lexicon::from_file(env);
    return Lexicon::defaults();
}

inline rules::ScoreConfig resolve_score_config(const CommonOpts& opts) {
    rules::ScoreConfig cfg;
    cfg.word_order_mode = opts.word_order_mode == "perikos"
                              ? features::WordOrderMode::Perikos
                              : features::WordOrderMode::CommutativeInvariant;
    cfg.unmatched_penalty = opts.unmatched_penalty;
    if (!opts.rule_table_path.empty())
        cfg.tables = rules::RuleTables::from_file(opts.rule_table_path);
    return cfg;
}

inline rules::Aggregation resolve_aggregation(const std::string& name) {
    if (name == "min")
        return rules::Aggregation::Min;
    if (name == "modal")
        return rules::Aggregation::Modal;
    return rules::Aggregation::Mean;
}

inline void render_parse_error(std::ostream& err, const std::string& text,
                               const fol::ParseError& pe) {
    err << "error: " << pe.message() << "\n";
    err << "  " << text << "\n";
    err << "  " << std::string(pe.position, ' ') << "^\n";
}

inline const char* yesno(bool b) { return b ? "yes" : "no"; }

inline std::string level_tag(rules::DifficultyLevel l) {
    return rules::to_string(l) + " (" + std::to_string(rules::numeric(l)) + ")";
}

// ── score ────────────────────────────────────────────────────────────────

inline int cmd_score(const std::string& sentence, const std::vector<std::string>& formula_texts,
                     const CommonOpts& opts, std::ostream& out, std::ostream& err) {
    Lexicon lex = resolve_lexicon(opts);
    rules::ScoreConfig cfg = resolve_score_config(opts);

    std::vector<rules::WeightedFormula> refs;
    for (const std::string& text : formula_texts) {
        fol::ParseResult pr = fol::parse_formula(text);
        if (!pr.ok()) {
            render_parse_error(err, text, *pr.error);
            return exit_input;
        }
        refs.push_back({pr.formula, 1});
    }

    out << "sentence: " << sentence << "\n";
    for (std::size_t i = 0; i < refs.size(); ++i) {
        rules::FormulaScore fs = rules::score_formula(sentence, *refs[i].formula, lex, cfg);
        out << "formula " << i + 1 << ": " << fol::render_formula(*refs[i].formula) << "\n";
        out << "  level: " << level_tag(fs.level) << "\n";
        out << "  base level: " << level_tag(fs.base_level) << "\n";
        out << "  logic: implications=" << fs.logic.num_implications
            << " quantifiers=" << fs.logic.num_quantifiers
            << " forall=" << yesno(fs.logic.has_forall) << " exists=" << yesno(fs.logic.has_exists)
            << " distinct_connectives=" << fs.logic.num_distinct_connectives << "\n";
        out << "  nl: word_order_mismatch=" << fs.nl.word_order_mismatch
            << " anaphora=" << fs.nl.anaphora_count << " negation=" << fs.nl.negation_count
            << " special_phrases=" << fs.nl.special_phrase_count
            << " quantifier_mismatch=" << yesno(fs.nl.quantifier_mismatch)
            << " connective_mismatch=" << fs.nl.connective_mismatch_count << "\n";
    }
    double agg = rules::score_exercise(sentence, refs, lex, cfg,
                                       resolve_aggregation(opts.aggregation));
    out << "exercise score (" << opts.aggregation << "): " << report::fmt(agg) << "\n";
    return exit_ok;
}

// ── features ─────────────────────────────────────────────────────────────

inline int cmd_features(const std::string& sentence, const std::string& formula_text,
                        const CommonOpts& opts, std::ostream& out, std::ostream& err) {
    Lexicon lex = resolve_lexicon(opts);
    fol::ParseResult pr = fol::parse_formula(formula_text);
    if (!pr.ok()) {
        render_parse_error(err, formula_text, *pr.error);
        return exit_input;
    }
    const fol::Formula& f = *pr.formula;
    features::LogicFeatures lf = features::extract_logic_features(f);
    std::vector<features::Token> tokens = features::tokenize(sentence);
    features::WordOrderMode mode = opts.word_order_mode == "perikos"
                                       ? features::WordOrderMode::Perikos
                                       : features::WordOrderMode::CommutativeInvariant;
    features::NlFeatures nl =
        features::extract_nl_features(tokens, f, lex, mode, opts.unmatched_penalty);
    features::Alignment al = features::align_predicates(f, tokens, lex);

    out << "implications=" << lf.num_implications << "\n";
    out << "quantifiers=" << lf.num_quantifiers << "\n";
    out << "has_forall=" << yesno(lf.has_forall) << "\n";
    out << "has_exists=" << yesno(lf.has_exists) << "\n";
    out << "distinct_connectives=" << lf.num_distinct_connectives << "\n";
    out << "word_order_mismatch=" << nl.word_order_mismatch << "\n";
    out << "anaphora=" << nl.anaphora_count << "\n";
    out << "negation=" << nl.negation_count << "\n";
    out << "special_phrases=" << nl.special_phrase_count << "\n";
    out << "quantifier_mismatch=" << yesno(nl.quantifier_mismatch) << "\n";
    out << "connective_mismatch=" << nl.connective_mismatch_count << "\n";
    out << "avg_predicate_arity=" << report::fmt(features::avg_predicate_arity(f)) << "\n";
    out << "monadic=" << yesno(features::is_monadic(f)) << "\n";
    out << "alignment:";
    for (const features::AlignedPair& p : al.pairs)
        out << " " << p.symbol << "(" << p.predicate_rank << "," << p.word_rank << ")";
    out << "\n";
    if (!al.unmatched_predicates.empty()) {
        out << "unmatched_predicates:";
        for (const std::string& s : al.unmatched_predicates)
            out << " " << s;
        out << "\n";
    }
    return exit_ok;
}

// ── eval ─────────────────────────────────────────────────────────────────

struct EvalOpts {
    std::string corpus_path;
    std::string out_dir = ".";
    std::string group_by;
    int synth_n = 0;
    std::uint64_t seed = 7;
    int students = 40;
    double monotonicity = 1.0;
    double outlier_rate = 0.02;
    double never_rate = 0.03;
    bool cap_never_correct = false;
    bool sample_sd = false;
};

inline int cmd_eval(const EvalOpts& eopts, const CommonOpts& opts, std::ostream& out,
                    std::ostream& err) {
    if (eopts.corpus_path.empty() && eopts.synth_n == 0) {
        err << "error: eval needs a corpus path or --synth N\n";
        return exit_input;
    }
    if (!eopts.corpus_path.empty() && eopts.synth_n > 0) {
        err << "error: give either a corpus path or --synth N, not both\n";
        return exit_input;
    }
    if (!eopts.group_by.empty() && eopts.group_by != "task_type") {
        err << "error: unsupported --group-by '" << eopts.group_by << "' (only: task_type)\n";
        return exit_input;
    }

    std::filesystem::path dir(eopts.out_dir);
    std::filesystem::create_directories(dir);

    std::vector<corpus::Exercise> exercises;
    if (eopts.synth_n > 0) {
        corpus::SynthParams params;
        params.n_exercises = eopts.synth_n;
        params.students_per_exercise = eopts.students;
        params.monotonicity = eopts.monotonicity;
        params.outlier_rate = eopts.outlier_rate;
        params.never_correct_rate = eopts.never_rate;
        exercises = corpus::generate_synthetic_corpus(params, eopts.seed);
        std::ofstream cf(dir / "synthetic_corpus.jsonl");
        corpus::write_corpus(cf, exercises);
        out << "wrote " << (dir / "synthetic_corpus.jsonl").string() << "\n";
    } else {
        exercises = corpus::load_corpus(eopts.corpus_path);
    }

    corpus::EvalConfig cfg;
    cfg.score = resolve_score_config(opts);
    cfg.aggregation = resolve_aggregation(opts.aggregation);
    cfg.cap_never_correct = eopts.cap_never_correct;
    cfg.sample_sd = eopts.sample_sd;

    corpus::EvalReport report = corpus::evaluate_corpus(exercises, resolve_lexicon(opts), cfg);

    // without --group-by only the pooled group is reported
    if (eopts.group_by.empty()) {
        std::vector<corpus::GroupCorrelations> pooled;
        for (corpus::GroupCorrelations& g : report.groups)
            if (g.name == "all")
                pooled.push_back(std::move(g));
        report.groups = std::move(pooled);
    }

    std::ofstream ex_csv(dir / "exercises.csv");
    report::write_exercise_csv(ex_csv, report);
    std::ofstream sum_csv(dir / "summary.csv");
    report::write_summary_csv(sum_csv, report);

    std::vector<std::pair<double, double>> fac_pts, aa_pts;
    for (const corpus::ExerciseStats& st : report.exercises) {
        fac_pts.emplace_back(st.avg_difficulty, st.fac);
        aa_pts.emplace_back(st.avg_difficulty, st.aa);
    }
    std::ofstream fac_svg(dir / "difficulty_vs_fac.svg");
    report::write_scatter_svg(fac_svg, fac_pts, "difficulty score", "first attempt correct",
                              "Difficulty vs FAC");
    std::ofstream aa_svg(dir / "difficulty_vs_aa.svg");
    report::write_scatter_svg(aa_svg, aa_pts, "difficulty score", "average attempts",
                              "Difficulty vs AA");

    report::print_report(out, report);
    out << "wrote " << (dir / "exercises.csv").string() << "\n";
    out << "wrote " << (dir / "summary.csv").string() << "\n";
    out << "wrote " << (dir / "difficulty_vs_fac.svg").string() << "\n";
    out << "wrote " << (dir / "difficulty_vs_aa.svg").string() << "\n";
    return exit_ok;
}

} // namespace detail_cli

// ── entry point ──────────────────────────────────────────────────────────

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"foldiff: difficulty estimation for FOL formalization exercises"};
    app.require_subcommand(1);

    detail_cli::CommonOpts score_opts, feat_opts, eval_common;
    std::string score_sentence, feat_sentence, feat_formula;
    std::vector<std::string> score_formulas;
    detail_cli::EvalOpts eval_opts;

    CLI::App* score = app.add_subcommand("score", "score one exercise from reference formulas");
    score->add_option("--sentence", score_sentence, "natural-language sentence")->required();
    score->add_option("formulas", score_formulas, "reference formulas")->required();
    score->add_option("--aggregation", score_opts.aggregation, "mean | min | modal")
        ->check(CLI::IsMember({"mean", "min", "modal"}));
    detail_cli::add_common(score, score_opts);

    CLI::App* features = app.add_subcommand("features", "dump the raw feature vectors");
    features->add_option("--sentence", feat_sentence, "natural-language sentence")->required();
    features->add_option("formula", feat_formula, "formula")->required();
    detail_cli::add_common(features, feat_opts);

    CLI::App* eval = app.add_subcommand("eval", "evaluate a corpus and write reports");
    eval->add_option("corpus", eval_opts.corpus_path, "corpus file (JSON Lines)");
    eval->add_option("--out", eval_opts.out_dir, "output directory (default .)");
    eval->add_option("--group-by", eval_opts.group_by, "also report per-group rows (task_type)");
    eval->add_option("--synth", eval_opts.synth_n, "generate a synthetic corpus of N exercises");
    eval->add_option("--seed", eval_opts.seed, "synthetic corpus seed");
    eval->add_option("--students", eval_opts.students, "synthetic students per exercise");
    eval->add_option("--monotonicity", eval_opts.monotonicity,
                     "synthetic student model difficulty sensitivity (0..1)");
    eval->add_option("--outlier-rate", eval_opts.outlier_rate, "synthetic outlier student rate");
    eval->add_option("--never-rate", eval_opts.never_rate, "synthetic never-correct student rate");
    eval->add_flag("--cap-never-correct", eval_opts.cap_never_correct,
                   "count never-correct students in AA at their attempt count");
    eval->add_flag("--sample-sd", eval_opts.sample_sd, "use sample SD for the 3-SD trim");
    eval->add_option("--aggregation", eval_common.aggregation, "mean | min | modal")
        ->check(CLI::IsMember({"mean", "min", "modal"}));
    detail_cli::add_common(eval, eval_common);

    try {
        std::vector<std::string> argv_store;
        argv_store.push_back("foldiff");
        argv_store.insert(argv_store.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const std::string& s : argv_store)
            argv.push_back(s.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (score->parsed())
            return detail_cli::cmd_score(score_sentence, score_formulas, score_opts, out, err);
        if (features->parsed())
            return detail_cli::cmd_features(feat_sentence, feat_formula, feat_opts, out, err);
        return detail_cli::cmd_eval(eval_opts, eval_common, out, err);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return detail_cli::exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return detail_cli::exit_input;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << "\n";
        return detail_cli::exit_input;
    } catch (const ContainsBiconditionalError& e) {
        err << "error: " << e.what() << "\n";
        return detail_cli::exit_unsupported;
    } catch (const NoRuleMatchedError& e) {
        err << "error: " << e.what() << "\n";
        return detail_cli::exit_unsupported;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return detail_cli::exit_internal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return detail_cli::exit_internal;
    }
}

} // namespace foldiff::cli
