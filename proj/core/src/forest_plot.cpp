#include "sumnorm/forest_plot.hpp"

#include <algorithm>
#include <cmath>

#include "svg_writer.hpp"
#include "sumnorm/errors.hpp"
#include "sumnorm/format.hpp"

namespace sumnorm {

namespace {

constexpr double kWidth = 960.0;
constexpr double kRowHeight = 26.0;
constexpr double kTop = 70.0;
constexpr double kPlotLeft = 330.0;
constexpr double kPlotRight = 690.0;
constexpr double kMaxHalfSquare = 9.0;

std::string interval(double est, double lo, double hi) {
    return format_fixed(est, 2) + " [" + format_fixed(lo, 2) + ", " + format_fixed(hi, 2) + "]";
}

// Axis step from {0.1, 0.2, 0.5} x 10^k giving at most ~8 ticks.
double tick_step(double span) {
    const double raw = span / 8.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) return m * mag;
    }
    return 10.0 * mag;
}

}  // namespace

std::string forest_svg(const PipelineReport& report) {
    if (!report.pooled || report.included_count() == 0) {
        throw PreconditionError("forest_svg: outcome '" + report.outcome +
                                "' has no pooled studies; inspect the exclusions in the report");
    }
    const PooledResult& pooled = *report.pooled;

    std::vector<const StudyOutcome*> rows;
    for (const auto& s : report.studies) {
        if (s.included) rows.push_back(&s);
    }
    const auto excluded = report.exclusions();

    double lo = std::min({pooled.ci_low, 0.0});
    double hi = std::max({pooled.ci_high, 0.0});
    double max_weight = 0.0;
    for (const auto* s : rows) {
        lo = std::min(lo, s->effect->ci_low);
        hi = std::max(hi, s->effect->ci_high);
        max_weight = std::max(max_weight, s->weight);
    }
    const double step = tick_step(hi - lo);
    lo = std::floor(lo / step) * step;
    hi = std::ceil(hi / step) * step;
    const auto x_of = [&](double v) { return kPlotLeft + (v - lo) / (hi - lo) * (kPlotRight - kPlotLeft); };

    const double pooled_y = kTop + (static_cast<double>(rows.size()) + 0.8) * kRowHeight;
    const double axis_y = pooled_y + 24.0;
    const double height = axis_y + 80.0 + (excluded.empty() ? 0.0 : 18.0);

    detail::SvgWriter svg(kWidth, height);
    svg.text(20, 26, report.outcome + ": standardized mean difference (case - control)", "start",
             15, "bold");
    svg.text(20, kTop - 12, "Study", "start", 12, "bold");
    svg.text(215, kTop - 12, "N case", "end", 12, "bold");
    svg.text(290, kTop - 12, "N control", "end", 12, "bold");
    svg.text(kPlotRight + 20, kTop - 12, "SMD [95% CI]", "start", 12, "bold");
    svg.text(kWidth - 20, kTop - 12, "Weight", "end", 12, "bold");

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const StudyOutcome& s = *rows[i];
        const EffectSize& e = *s.effect;
        const double y = kTop + (static_cast<double>(i) + 0.5) * kRowHeight;
        svg.text(20, y + 4, s.study_id);
        svg.text(215, y + 4, std::to_string(e.n_case), "end");
        svg.text(290, y + 4, std::to_string(e.n_control), "end");
        svg.line(x_of(e.ci_low), y, x_of(e.ci_high), y, "black", 1.2);
        const double half = max_weight > 0.0 ? kMaxHalfSquare * std::sqrt(s.weight / max_weight) : 0.0;
        const double half_sq = std::max(half, 2.0);
        svg.rect(x_of(e.smd) - half_sq, y - half_sq, 2 * half_sq, 2 * half_sq, "#4a6fa5");
        svg.text(kPlotRight + 20, y + 4, interval(e.smd, e.ci_low, e.ci_high));
        svg.text(kWidth - 20, y + 4, format_fixed(100.0 * s.weight, 1) + "%", "end");
    }

    const std::string model = pooled.model == PoolModel::Random ? "Random-effects model" : "Fixed-effect model";
    svg.text(20, pooled_y + 4, model, "start", 12, "bold");
    svg.polygon({{x_of(pooled.ci_low), pooled_y},
                 {x_of(pooled.smd), pooled_y - 8},
                 {x_of(pooled.ci_high), pooled_y},
                 {x_of(pooled.smd), pooled_y + 8}},
                "#b22222");
    svg.text(kPlotRight + 20, pooled_y + 4, interval(pooled.smd, pooled.ci_low, pooled.ci_high),
             "start", 12, "bold");
    svg.text(kWidth - 20, pooled_y + 4, "100.0%", "end", 12, "bold");

    // Axis, zero line, pooled reference.
    svg.line(kPlotLeft, axis_y, kPlotRight, axis_y, "black");
    for (double t = lo; t <= hi + step * 1e-9; t += step) {
        const double x = x_of(t);
        svg.line(x, axis_y, x, axis_y + 5, "black");
        svg.text(x, axis_y + 18, format_fixed(std::fabs(t) < step * 1e-9 ? 0.0 : t, step < 1 ? 1 : 0),
                 "middle", 11);
    }
    svg.line(x_of(0.0), kTop, x_of(0.0), axis_y, "#666666", 1.0);
    svg.line(x_of(pooled.smd), kTop, x_of(pooled.smd), axis_y, "#b22222", 1.0, "4,3");
    svg.text(x_of(lo), axis_y + 34, "favours control", "start", 11);
    svg.text(x_of(hi), axis_y + 34, "favours case", "end", 11);

    std::string het = "Heterogeneity: Q = " + format_fixed(pooled.q_stat, 2) +
                      ", df = " + std::to_string(pooled.q_df) + ", p " +
                      (pooled.q_p < 0.01 ? std::string("< 0.01") : "= " + format_fixed(pooled.q_p, 2)) +
                      "; I\xC2\xB2 = " + format_fixed(pooled.i_squared, 0) +
                      "%; \xCF\x84\xC2\xB2 = " + format_fixed(pooled.tau_squared, 4);
    svg.text(20, axis_y + 56, het, "start", 12);
    if (!excluded.empty()) {
        std::string ex = "Excluded after symmetry screening: ";
        for (std::size_t i = 0; i < excluded.size(); ++i) {
            if (i) ex += ", ";
            ex += excluded[i].study_id;
        }
        svg.text(20, axis_y + 74, ex, "start", 11);
    }
    return svg.str();
}

}  // namespace sumnorm
