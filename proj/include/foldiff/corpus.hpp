#pragma once

// Corpus data model and the evaluation pipeline: JSONL ingestion, the FAC
// and AA performance metrics, correlation/ablation analysis, and a
// deterministic synthetic-corpus generator for desk-scale testing.
//
// Corpus file: UTF-8 JSON Lines, one record per (exercise, student):
//
//   {"exercise_id": "ex.cube", "sentence": "...", "domain": "tarski",
//    "task_type": "looking_at_world", "student": "s042",
//    "attempts": [{"formula": "...", "verdict": "incorrect"},
//                 {"formula": "...", "verdict": "correct"}]}
//
// Verdicts: correct | incorrect | ill_formed | missing. Records of one
// exercise must agree on sentence, domain and task_type.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "foldiff/detail/text.hpp"
#include "foldiff/errors.hpp"
#include "foldiff/fol.hpp"
#include "foldiff/lexicon.hpp"
#include "foldiff/rules.hpp"
#include "foldiff/stats.hpp"

namespace foldiff::corpus {

// ── data model ───────────────────────────────────────────────────────────

enum class Verdict { Correct, Incorrect, IllFormed, Missing };

inline std::optional<Verdict> verdict_from_string(std::string_view s) {
    if (s == "correct") return Verdict::Correct;
    if (s == "incorrect") return Verdict::Incorrect;
    if (s == "ill_formed") return Verdict::IllFormed;
    if (s == "missing") return Verdict::Missing;
    return std::nullopt;
}

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Correct: return "correct";
    case Verdict::Incorrect: return "incorrect";
    case Verdict::IllFormed: return "ill_formed";
    default: return "missing";
    }
}

enum class Domain { Tarski, Pets, Number };

inline std::optional<Domain> domain_from_string(std::string_view s) {
    if (s == "tarski") return Domain::Tarski;
    if (s == "pets") return Domain::Pets;
    if (s == "number") return Domain::Number;
    return std::nullopt;
}

inline std::string to_string(Domain d) {
    switch (d) {
    case Domain::Tarski: return "tarski";
    case Domain::Pets: return "pets";
    default: return "number";
    }
}

struct Attempt {
    std::string formula;
    Verdict verdict = Verdict::Incorrect;
};

struct Submission {
    std::string student_id;
    std::vector<Attempt> attempts;
};

struct Exercise {
    std::string id;
    std::string sentence;
    Domain domain = Domain::Tarski;
    std::string task_type;
    std::vector<Submission> submissions;
};

// ── ingestion ────────────────────────────────────────────────────────────

inline std::vector<Exercise> load_corpus_stream(std::istream& in) {
    std::vector<Exercise> out;
    std::map<std::string, std::size_t> index;
    std::set<std::pair<std::string, std::string>> seen_students;
    std::string line;
    std::size_t lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty())
            continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw SchemaError(lineno, std::string("bad JSON: ") + e.what());
        }
        if (!j.is_object())
            throw SchemaError(lineno, "record is not an object");

        auto str_field = [&](const char* name) -> std::string {
            if (!j.contains(name) || !j[name].is_string())
                throw SchemaError(lineno, std::string("missing string field '") + name + "'");
            return j[name].get<std::string>();
        };
        std::string id = str_field("exercise_id");
        std::string sentence = str_field("sentence");
        std::string domain_s = str_field("domain");
        std::string task_type = str_field("task_type");
        std::string student = str_field("student");
        std::optional<Domain> domain = domain_from_string(domain_s);
        if (!domain)
            throw SchemaError(lineno, "unknown domain '" + domain_s + "'");
        if (!j.contains("attempts") || !j["attempts"].is_array() || j["attempts"].empty())
            throw SchemaError(lineno, "field 'attempts' must be a non-empty array");

        Submission sub;
        sub.student_id = student;
        for (const nlohmann::json& a : j["attempts"]) {
            if (!a.is_object() || !a.contains("formula") || !a["formula"].is_string() ||
                !a.contains("verdict") || !a["verdict"].is_string())
                throw SchemaError(lineno, "each attempt needs string fields 'formula' and 'verdict'");
            std::optional<Verdict> v = verdict_from_string(a["verdict"].get<std::string>());
            if (!v)
                throw SchemaError(lineno, "unknown verdict '" + a["verdict"].get<std::string>() + "'");
            sub.attempts.push_back({a["formula"].get<std::string>(), *v});
        }

        if (!seen_students.insert({id, student}).second)
            throw SchemaError(lineno, "duplicate record for exercise '" + id + "', student '" +
                                          student + "'");

        auto it = index.find(id);
        if (it == index.end()) {
            index[id] = out.size();
            out.push_back({id, sentence, *domain, task_type, {std::move(sub)}});
        } else {
            Exercise& e = out[it->second];
            if (e.sentence != sentence || e.domain != *domain || e.task_type != task_type)
                throw SchemaError(lineno, "exercise '" + id +
                                              "' disagrees with an earlier record of the same id");
            e.submissions.push_back(std::move(sub));
        }
    }
    return out;
}

inline std::vector<Exercise> load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw SchemaError(0, "cannot open corpus file " + path.string());
    return load_corpus_stream(in);
}

inline void write_corpus(std::ostream& out, const std::vector<Exercise>& corpus) {
    for (const Exercise& e : corpus) {
        for (const Submission& s : e.submissions) {
            nlohmann::json j;
            j["exercise_id"] = e.id;
            j["sentence"] = e.sentence;
            j["domain"] = to_string(e.domain);
            j["task_type"] = e.task_type;
            j["student"] = s.student_id;
            nlohmann::json attempts = nlohmann::json::array();
            for (const Attempt& a : s.attempts)
                attempts.push_back({{"formula", a.formula}, {"verdict", to_string(a.verdict)}});
            j["attempts"] = attempts;
            out << j.dump() << "\n";
        }
    }
}

// ── performance metrics ──────────────────────────────────────────────────

inline double compute_fac(const Exercise& e) {
    if (e.submissions.empty())
        throw EmptyExerciseError("exercise '" + e.id + "' has no submissions");
    int first_correct = 0;
    for (const Submission& s : e.submissions)
        if (!s.attempts.empty() && s.attempts.front().verdict == Verdict::Correct)
            ++first_correct;
    return static_cast<double>(first_correct) / static_cast<double>(e.submissions.size());
}

// 1-based index of each student's first correct attempt, 3-SD trimmed mean;
// students who never succeed are excluded unless capped at their attempt count
inline double compute_aa(const Exercise& e, bool cap_never_correct = false,
                         bool sample_sd = false) {
    if (e.submissions.empty())
        throw EmptyExerciseError("exercise '" + e.id + "' has no submissions");
    std::vector<double> counts;
    for (const Submission& s : e.submissions) {
        int first = 0;
        for (std::size_t i = 0; i < s.attempts.size(); ++i)
            if (s.attempts[i].verdict == Verdict::Correct) {
                first = static_cast<int>(i) + 1;
                break;
            }
        if (first > 0)
            counts.push_back(first);
        else if (cap_never_correct)
            counts.push_back(static_cast<double>(s.attempts.size()));
    }
    if (counts.empty())
        throw NoCorrectSolutionsError("exercise '" + e.id + "' has no correct attempts");
    std::vector<double> trimmed = stats::trim_3sd(counts, sample_sd);
    double sum = 0;
    for (double c : trimmed)
        sum += c;
    return sum / static_cast<double>(trimmed.size());
}

// ── evaluation pipeline ──────────────────────────────────────────────────

struct EvalConfig {
    rules::ScoreConfig score;
    rules::Aggregation aggregation = rules::Aggregation::Mean;
    bool cap_never_correct = false;
    bool sample_sd = false;
};

struct ExerciseStats {
    std::string id;
    std::string task_type;
    double fac = 0;
    double aa = 0;
    int n_students = 0;
    double avg_difficulty = 0;
    double avg_logic_difficulty = 0;
    double avg_arity = 0;
    double avg_quantifiers = 0;
    int quantifier_level = -1; // k-means cluster id over avg_quantifiers
};

struct GroupCorrelations {
    std::string name;
    int n = 0;
    std::optional<stats::CorrelationResult> difficulty_fac, difficulty_aa;
    std::optional<stats::CorrelationResult> logic_fac, logic_aa;
    std::optional<stats::CorrelationResult> quant_fac, quant_aa;
    std::optional<stats::CorrelationResult> fac_aa;
    std::optional<stats::WilliamsResult> quant_vs_full_fac, quant_vs_full_aa;
    std::optional<stats::WilliamsResult> logic_vs_full_fac, logic_vs_full_aa;
};

struct EvalReport {
    std::vector<ExerciseStats> exercises;
    std::vector<std::string> filtered_biconditional; // exercise ids dropped by the ↔ filter
    std::vector<std::string> warnings;
    std::vector<GroupCorrelations> groups; // "all" first, then per task_type
    std::optional<stats::FTestResult> arity_f_fac, arity_f_aa;
};

namespace detail_c {

struct ScoredRef {
    fol::FormulaPtr formula;
    int weight = 0;
    int level = 0;
    int base_level = 0;
    double arity = 0;
    int quantifiers = 0;
};

inline double aggregate(const std::vector<ScoredRef>& refs, rules::Aggregation agg,
                        bool logic_only) {
    double weighted = 0;
    long long total = 0;
    int min_level = 4;
    int modal_level = 4;
    int modal_weight = -1;
    for (const ScoredRef& r : refs) {
        int level = logic_only ? r.base_level : r.level;
        weighted += static_cast<double>(level) * r.weight;
        total += r.weight;
        min_level = std::min(min_level, level);
        if (r.weight > modal_weight || (r.weight == modal_weight && level < modal_level)) {
            modal_weight = r.weight;
            modal_level = level;
        }
    }
    switch (agg) {
    case rules::Aggregation::Mean: return weighted / static_cast<double>(total);
    case rules::Aggregation::Min: return min_level;
    default: return modal_level;
    }
}

inline std::optional<stats::CorrelationResult> try_pearson(const std::vector<double>& xs,
                                                           const std::vector<double>& ys) {
    try {
        return stats::pearson(xs, ys);
    } catch (const DegenerateSampleError&) {
        return std::nullopt;
    }
}

inline std::optional<stats::WilliamsResult>
try_williams(const std::optional<stats::CorrelationResult>& r12,
             const std::optional<stats::CorrelationResult>& r13,
             const std::optional<stats::CorrelationResult>& r23, int n) {
    if (!r12 || !r13 || !r23)
        return std::nullopt;
    try {
        return stats::williams_dependent_r_test(r12->r, r13->r, r23->r, n);
    } catch (const DegenerateSampleError&) {
        return std::nullopt;
    }
}

} // namespace detail_c

inline EvalReport evaluate_corpus(const std::vector<Exercise>& corpus, const Lexicon& lex,
                                  const EvalConfig& cfg = {}) {
    if (corpus.empty())
        throw Error("evaluate_corpus: empty corpus");
    EvalReport report;

    for (const Exercise& e : corpus) {
        // distinct correct formula texts, weighted by frequency
        std::map<std::string, int> correct_texts;
        for (const Submission& s : e.submissions)
            for (const Attempt& a : s.attempts)
                if (a.verdict == Verdict::Correct)
                    ++correct_texts[a.formula];
        if (correct_texts.empty()) {
            report.warnings.push_back("exercise '" + e.id + "': no correct submissions; skipped");
            continue;
        }

        std::vector<detail_c::ScoredRef> refs;
        for (const auto& [text, weight] : correct_texts) {
            fol::ParseResult pr = fol::parse_formula(text);
            if (!pr.ok()) {
                report.warnings.push_back("exercise '" + e.id + "': dropped unparseable correct submission (" +
                                          pr.error->message() + ")");
                continue;
            }
            refs.push_back({pr.formula, weight, 0, 0, 0.0, 0});
        }
        if (refs.empty()) {
            report.warnings.push_back("exercise '" + e.id +
                                      "': no correct submission parses; skipped");
            continue;
        }

        // the ↔ filter keys on the modal correct formula (ties: first in
        // lexicographic text order, matching the map's iteration order)
        const detail_c::ScoredRef* modal = &refs.front();
        for (const detail_c::ScoredRef& r : refs)
            if (r.weight > modal->weight)
                modal = &r;
        if (fol::contains_biconditional(*modal->formula)) {
            report.filtered_biconditional.push_back(e.id);
            continue;
        }

        std::vector<detail_c::ScoredRef> scored;
        for (detail_c::ScoredRef& r : refs) {
            try {
                rules::FormulaScore fs = rules::score_formula(e.sentence, *r.formula, lex, cfg.score);
                r.level = rules::numeric(fs.level);
                r.base_level = rules::numeric(fs.base_level);
                r.arity = features::avg_predicate_arity(*r.formula);
                r.quantifiers = fs.logic.num_quantifiers;
                scored.push_back(r);
            } catch (const Error& err) {
                report.warnings.push_back("exercise '" + e.id +
                                          "': dropped unscorable correct submission (" +
                                          err.what() + ")");
            }
        }
        if (scored.empty()) {
            report.warnings.push_back("exercise '" + e.id +
                                      "': no correct submission is scorable; skipped");
            continue;
        }

        ExerciseStats st;
        st.id = e.id;
        st.task_type = e.task_type;
        st.n_students = static_cast<int>(e.submissions.size());
        st.fac = compute_fac(e);
        st.aa = compute_aa(e, cfg.cap_never_correct, cfg.sample_sd);
        st.avg_difficulty = detail_c::aggregate(scored, cfg.aggregation, false);
        st.avg_logic_difficulty = detail_c::aggregate(scored, cfg.aggregation, true);
        double arity_sum = 0, quant_sum = 0;
        long long weight_sum = 0;
        for (const detail_c::ScoredRef& r : scored) {
            arity_sum += r.arity * r.weight;
            quant_sum += static_cast<double>(r.quantifiers) * r.weight;
            weight_sum += r.weight;
        }
        st.avg_arity = arity_sum / static_cast<double>(weight_sum);
        st.avg_quantifiers = quant_sum / static_cast<double>(weight_sum);
        report.exercises.push_back(st);
    }

    // quantifier-only ablation: cluster avg_quantifiers into 5 levels
    std::vector<double> quants;
    for (const ExerciseStats& st : report.exercises)
        quants.push_back(st.avg_quantifiers);
    std::set<double> distinct(quants.begin(), quants.end());
    if (report.exercises.size() >= 2 && distinct.size() >= 2) {
        int k = std::min<int>(5, static_cast<int>(distinct.size()));
        stats::KMeansResult km = stats::kmeans_1d(quants, k);
        for (std::size_t i = 0; i < report.exercises.size(); ++i)
            report.exercises[i].quantifier_level = km.labels[i];
    } else {
        report.warnings.push_back("quantifier ablation skipped: not enough distinct values");
    }

    // correlation groups: all exercises, then task types in first-seen order
    std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
    groups.emplace_back("all", std::vector<std::size_t>{});
    for (std::size_t i = 0; i < report.exercises.size(); ++i)
        groups[0].second.push_back(i);
    for (std::size_t i = 0; i < report.exercises.size(); ++i) {
        const std::string& tt = report.exercises[i].task_type;
        auto it = std::find_if(groups.begin() + 1, groups.end(),
                               [&](const auto& g) { return g.first == tt; });
        if (it == groups.end())
            groups.emplace_back(tt, std::vector<std::size_t>{i});
        else
            it->second.push_back(i);
    }

    for (const auto& [name, idx] : groups) {
        if (idx.size() < 3) {
            if (name != "all")
                report.warnings.push_back("group '" + name + "' has fewer than 3 exercises; omitted");
            continue;
        }
        std::vector<double> fac, aa, diff, logic, quant;
        bool have_quant = true;
        for (std::size_t i : idx) {
            const ExerciseStats& st = report.exercises[i];
            fac.push_back(st.fac);
            aa.push_back(st.aa);
            diff.push_back(st.avg_difficulty);
            logic.push_back(st.avg_logic_difficulty);
            if (st.quantifier_level < 0)
                have_quant = false;
            quant.push_back(st.quantifier_level);
        }
        GroupCorrelations g;
        g.name = name;
        g.n = static_cast<int>(idx.size());
        g.difficulty_fac = detail_c::try_pearson(diff, fac);
        g.difficulty_aa = detail_c::try_pearson(diff, aa);
        g.logic_fac = detail_c::try_pearson(logic, fac);
        g.logic_aa = detail_c::try_pearson(logic, aa);
        g.fac_aa = detail_c::try_pearson(fac, aa);
        if (have_quant) {
            g.quant_fac = detail_c::try_pearson(quant, fac);
            g.quant_aa = detail_c::try_pearson(quant, aa);
            std::optional<stats::CorrelationResult> diff_quant = detail_c::try_pearson(diff, quant);
            g.quant_vs_full_fac = detail_c::try_williams(g.difficulty_fac, g.quant_fac, diff_quant, g.n);
            g.quant_vs_full_aa = detail_c::try_williams(g.difficulty_aa, g.quant_aa, diff_quant, g.n);
        }
        std::optional<stats::CorrelationResult> diff_logic = detail_c::try_pearson(diff, logic);
        g.logic_vs_full_fac = detail_c::try_williams(g.difficulty_fac, g.logic_fac, diff_logic, g.n);
        g.logic_vs_full_aa = detail_c::try_williams(g.difficulty_aa, g.logic_aa, diff_logic, g.n);
        report.groups.push_back(std::move(g));
    }

    // does predicate arity add signal on top of the difficulty score?
    if (report.exercises.size() >= 4) {
        std::vector<double> fac, aa, diff, arity;
        for (const ExerciseStats& st : report.exercises) {
            fac.push_back(st.fac);
            aa.push_back(st.aa);
            diff.push_back(st.avg_difficulty);
            arity.push_back(st.avg_arity);
        }
        try {
            report.arity_f_fac = stats::ols_nested_f(fac, {diff}, {arity});
        } catch (const Error& err) {
            report.warnings.push_back(std::string("arity F-test (FAC) skipped: ") + err.what());
        }
        try {
            report.arity_f_aa = stats::ols_nested_f(aa, {diff}, {arity});
        } catch (const Error& err) {
            report.warnings.push_back(std::string("arity F-test (AA) skipped: ") + err.what());
        }
    } else {
        report.warnings.push_back("arity F-tests skipped: fewer than 4 exercises");
    }

    return report;
}

// ── synthetic corpus ─────────────────────────────────────────────────────

struct SynthParams {
    int n_exercises = 200;
    int students_per_exercise = 40;
    double monotonicity = 1.0;     // 0 = difficulty-blind student model
    double outlier_rate = 0.02;    // huge attempts-to-correct outliers
    double never_correct_rate = 0.03;
};

namespace detail_c {

// splitmix64: tiny, fully deterministic across platforms
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

struct Stratum {
    const char* sentence;
    const char* primary;  // reference formula, ASCII syntax
    const char* variant;  // alternative correct formalization
};

inline const std::vector<Stratum>& strata() {
    static const std::vector<Stratum> s = {
        {"b is small", "Small(b)", "Small(b)"},
        {"something is a cube", "exists x Cube(x)", "exists y Cube(y)"},
        {"some block is not a cube and some block is small or large",
         "exists x exists y (~Cube(x) & (Small(y) | Large(y)))",
         "exists x exists y exists z (~Cube(x) & (Small(y) | Large(z)))"},
        {"every cube is between two blocks",
         "forall x (Cube(x) -> exists y exists z Between(x,y,z))",
         "forall x forall u (Cube(x) -> exists y exists z Between(u,y,z))"},
        {"every cube is small if some block is between two blocks",
         "forall x (Cube(x) -> exists y (Small(y) -> exists z exists w Between(y,z,w)))",
         "forall x (Cube(x) -> exists y (Small(y) -> exists z exists w exists v (Between(y,z,w) & Cube(v))))"},
    };
    return s;
}

} // namespace detail_c

inline std::vector<Exercise> generate_synthetic_corpus(const SynthParams& params,
                                                       std::uint64_t seed) {
    detail_c::Rng rng(seed);
    std::vector<Exercise> out;
    const auto& strata = detail_c::strata();

    for (int ei = 0; ei < params.n_exercises; ++ei) {
        int d = ei % static_cast<int>(strata.size()); // difficulty stratum 0..4
        const detail_c::Stratum& st = strata[d];
        Exercise e;
        e.id = "s" + std::to_string(d) + "." + std::to_string(ei / 5 + 1);
        e.sentence = st.sentence;
        e.domain = Domain::Tarski;
        e.task_type = ei % 2 == 0 ? "looking_at_world" : "world_check";

        double m = params.monotonicity;
        double p_first = std::min(0.98, std::max(0.05, 0.9 - 0.15 * m * d));
        double p_retry = std::min(0.98, std::max(0.20, 0.75 - 0.10 * m * d));

        for (int si = 0; si < params.students_per_exercise; ++si) {
            Submission sub;
            sub.student_id = "st" + std::to_string(si + 1);
            const char* correct_text = rng.uniform() < 0.75 ? st.primary : st.variant;

            bool never = rng.uniform() < params.never_correct_rate;
            int attempts_to_correct = 0;
            if (!never) {
                if (rng.uniform() < p_first) {
                    attempts_to_correct = 1;
                } else {
                    attempts_to_correct = 2;
                    while (rng.uniform() >= p_retry && attempts_to_correct < 12)
                        ++attempts_to_correct;
                }
                if (rng.uniform() < params.outlier_rate)
                    attempts_to_correct += 20 + rng.below(10);
            }

            int wrong = never ? 1 + rng.below(3) : attempts_to_correct - 1;
            for (int a = 0; a < wrong; ++a) {
                if (rng.uniform() < 0.15)
                    sub.attempts.push_back({"Cube(", Verdict::IllFormed});
                else
                    sub.attempts.push_back({"Large(b)", Verdict::Incorrect});
            }
            if (!never)
                sub.attempts.push_back({correct_text, Verdict::Correct});
            e.submissions.push_back(std::move(sub));
        }
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace foldiff::corpus
