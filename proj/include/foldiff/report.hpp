#pragma once

// Report rendering: CSV tables, SVG scatter plots, and a plain-text summary
// of an evaluation run. All numbers use "%.6g" in the C locale so output is
// reproducible byte for byte.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "foldiff/corpus.hpp"

namespace foldiff::report {

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ── CSV ──────────────────────────────────────────────────────────────────

inline void write_exercise_csv(std::ostream& out, const corpus::EvalReport& report) {
    out << "exercise_id,task_type,n_students,fac,aa,avg_difficulty,avg_logic_difficulty,"
           "avg_arity,avg_quantifiers,quantifier_level\n";
    for (const corpus::ExerciseStats& st : report.exercises) {
        out << st.id << ',' << st.task_type << ',' << st.n_students << ',' << fmt(st.fac) << ','
            << fmt(st.aa) << ',' << fmt(st.avg_difficulty) << ',' << fmt(st.avg_logic_difficulty)
            << ',' << fmt(st.avg_arity) << ',' << fmt(st.avg_quantifiers) << ','
            << st.quantifier_level << '\n';
    }
}

namespace detail_r {

inline void corr_row(std::ostream& out, const std::string& group, int n, const char* score,
                     const char* metric, const std::optional<stats::CorrelationResult>& c) {
    if (!c)
        return;
    out << group << ',' << n << ',' << score << ',' << metric << ',' << fmt(c->r) << ','
        << fmt(c->p_two_tailed) << '\n';
}

} // namespace detail_r

// one row per available correlation: group,n,score,metric,r,p
inline void write_summary_csv(std::ostream& out, const corpus::EvalReport& report) {
    out << "group,n,score,metric,r,p\n";
    for (const corpus::GroupCorrelations& g : report.groups) {
        detail_r::corr_row(out, g.name, g.n, "difficulty", "fac", g.difficulty_fac);
        detail_r::corr_row(out, g.name, g.n, "difficulty", "aa", g.difficulty_aa);
        detail_r::corr_row(out, g.name, g.n, "logic_only", "fac", g.logic_fac);
        detail_r::corr_row(out, g.name, g.n, "logic_only", "aa", g.logic_aa);
        detail_r::corr_row(out, g.name, g.n, "quantifier_only", "fac", g.quant_fac);
        detail_r::corr_row(out, g.name, g.n, "quantifier_only", "aa", g.quant_aa);
        detail_r::corr_row(out, g.name, g.n, "fac", "aa", g.fac_aa);
    }
}

// ── SVG scatter ──────────────────────────────────────────────────────────

namespace detail_r {

struct AxisScale {
    double lo, hi;
    double map(double v, double pix_lo, double pix_hi) const {
        return pix_lo + (v - lo) / (hi - lo) * (pix_hi - pix_lo);
    }
};

inline AxisScale fit_axis(const std::vector<double>& vs) {
    double lo = vs.front(), hi = vs.front();
    for (double v : vs) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi - lo < 1e-12) {
        lo -= 1.0;
        hi += 1.0;
    } else {
        double pad = (hi - lo) * 0.06;
        lo -= pad;
        hi += pad;
    }
    return {lo, hi};
}

} // namespace detail_r

// one <circle> per point, labelled axes, and a least-squares trend line
inline void write_scatter_svg(std::ostream& out, const std::vector<std::pair<double, double>>& pts,
                              const std::string& x_label, const std::string& y_label,
                              const std::string& title) {
    const double width = 640, height = 480;
    const double left = 70, right = width - 30, top = 50, bottom = height - 60;

    std::vector<double> xs, ys;
    for (const auto& [x, y] : pts) {
        xs.push_back(x);
        ys.push_back(y);
    }
    detail_r::AxisScale sx = xs.empty() ? detail_r::AxisScale{0, 1} : detail_r::fit_axis(xs);
    detail_r::AxisScale sy = ys.empty() ? detail_r::AxisScale{0, 1} : detail_r::fit_axis(ys);

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
        << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n"
        << "<rect width=\"" << fmt(width) << "\" height=\"" << fmt(height)
        << "\" fill=\"white\"/>\n"
        << "<text x=\"" << fmt(width / 2) << "\" y=\"28\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << title << "</text>\n";

    // axes
    out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(bottom) << "\" x2=\"" << fmt(right)
        << "\" y2=\"" << fmt(bottom) << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(left)
        << "\" y2=\"" << fmt(bottom) << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double fx = sx.lo + (sx.hi - sx.lo) * i / 4.0;
        double px = sx.map(fx, left, right);
        out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(bottom) << "\" x2=\"" << fmt(px)
            << "\" y2=\"" << fmt(bottom + 5) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(bottom + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(fx) << "</text>\n";
        double fy = sy.lo + (sy.hi - sy.lo) * i / 4.0;
        double py = sy.map(fy, bottom, top);
        out << "<line x1=\"" << fmt(left - 5) << "\" y1=\"" << fmt(py) << "\" x2=\"" << fmt(left)
            << "\" y2=\"" << fmt(py) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(py + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(fy)
            << "</text>\n";
    }
    out << "<text x=\"" << fmt((left + right) / 2) << "\" y=\"" << fmt(height - 14)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n"
        << "<text x=\"20\" y=\"" << fmt((top + bottom) / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 20 "
        << fmt((top + bottom) / 2) << ")\">" << y_label << "</text>\n";

    // trend line from the closed-form least-squares fit
    if (pts.size() >= 2) {
        double n = static_cast<double>(pts.size());
        double mx = 0, my = 0;
        for (const auto& [x, y] : pts) {
            mx += x;
            my += y;
        }
        mx /= n;
        my /= n;
        double sxy = 0, sxx = 0;
        for (const auto& [x, y] : pts) {
            sxy += (x - mx) * (y - my);
            sxx += (x - mx) * (x - mx);
        }
        if (sxx > 1e-12) {
            double slope = sxy / sxx;
            double y1 = my + slope * (sx.lo - mx);
            double y2 = my + slope * (sx.hi - mx);
            out << "<line x1=\"" << fmt(sx.map(sx.lo, left, right)) << "\" y1=\""
                << fmt(std::clamp(sy.map(y1, bottom, top), top, bottom)) << "\" x2=\""
                << fmt(sx.map(sx.hi, left, right)) << "\" y2=\""
                << fmt(std::clamp(sy.map(y2, bottom, top), top, bottom))
                << "\" stroke=\"crimson\" stroke-dasharray=\"6 3\"/>\n";
        }
    }

    for (const auto& [x, y] : pts)
        out << "<circle cx=\"" << fmt(sx.map(x, left, right)) << "\" cy=\""
            << fmt(sy.map(y, bottom, top)) << "\" r=\"4\" fill=\"steelblue\" "
               "fill-opacity=\"0.75\"/>\n";

    out << "</svg>\n";
}

// ── text summary ─────────────────────────────────────────────────────────

namespace detail_r {

inline void corr_line(std::ostream& out, const char* label,
                      const std::optional<stats::CorrelationResult>& c) {
    if (c)
        out << "  " << label << ": r=" << fmt(c->r) << " p=" << fmt(c->p_two_tailed) << "\n";
}

inline void williams_line(std::ostream& out, const char* label,
                          const std::optional<stats::WilliamsResult>& w) {
    if (w)
        out << "  " << label << ": t=" << fmt(w->t) << " df=" << w->df << " p=" << fmt(w->p)
            << "\n";
}

} // namespace detail_r

inline void print_report(std::ostream& out, const corpus::EvalReport& report) {
    out << "exercises scored: " << report.exercises.size() << "\n";
    if (!report.filtered_biconditional.empty()) {
        out << "filtered (biconditional reference): " << report.filtered_biconditional.size()
            << " [";
        for (std::size_t i = 0; i < report.filtered_biconditional.size(); ++i)
            out << (i ? ", " : "") << report.filtered_biconditional[i];
        out << "]\n";
    }
    for (const corpus::GroupCorrelations& g : report.groups) {
        out << "group " << g.name << " (n=" << g.n << ")\n";
        detail_r::corr_line(out, "difficulty~fac", g.difficulty_fac);
        detail_r::corr_line(out, "difficulty~aa", g.difficulty_aa);
        detail_r::corr_line(out, "logic_only~fac", g.logic_fac);
        detail_r::corr_line(out, "logic_only~aa", g.logic_aa);
        detail_r::corr_line(out, "quantifier_only~fac", g.quant_fac);
        detail_r::corr_line(out, "quantifier_only~aa", g.quant_aa);
        detail_r::corr_line(out, "fac~aa", g.fac_aa);
        detail_r::williams_line(out, "williams quantifier_only vs difficulty (fac)",
                                g.quant_vs_full_fac);
        detail_r::williams_line(out, "williams quantifier_only vs difficulty (aa)",
                                g.quant_vs_full_aa);
        detail_r::williams_line(out, "williams logic_only vs difficulty (fac)",
                                g.logic_vs_full_fac);
        detail_r::williams_line(out, "williams logic_only vs difficulty (aa)", g.logic_vs_full_aa);
    }
    if (report.arity_f_fac)
        out << "arity F-test (fac): F=" << fmt(report.arity_f_fac->f_statistic) << " df=("
            << report.arity_f_fac->df_numerator << "," << report.arity_f_fac->df_denominator
            << ") p=" << fmt(report.arity_f_fac->p) << "\n";
    if (report.arity_f_aa)
        out << "arity F-test (aa): F=" << fmt(report.arity_f_aa->f_statistic) << " df=("
            << report.arity_f_aa->df_numerator << "," << report.arity_f_aa->df_denominator
            << ") p=" << fmt(report.arity_f_aa->p) << "\n";
    for (const std::string& w : report.warnings)
        out << "warning: " << w << "\n";
}

} // namespace foldiff::report
