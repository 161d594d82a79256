#include "sumnorm/sim/export.hpp"

#include <algorithm>
#include <charconv>

#include "../svg_writer.hpp"
#include "sumnorm/errors.hpp"
#include "sumnorm/format.hpp"

namespace sumnorm::sim {

namespace {

std::string shortest(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Colour-blind safe palette (Okabe-Ito).
constexpr const char* kPalette[] = {"#0072B2", "#D55E00", "#009E73", "#CC79A7", "#E69F00", "#56B4E9", "#000000"};

}  // namespace

std::string experiment_csv(std::span<const ExperimentResult> results) {
    std::string out = std::string(kExperimentCsvHeader) + "\n";
    for (const auto& r : results) {
        for (const auto& p : r.points) {
            out += std::to_string(p.n) + ',' + shortest(p.rate) + ',' + shortest(p.se) + ',' +
                   std::to_string(r.replicates) + ',' + std::string(to_string(r.scenario)) + ',' +
                   std::string(to_string(r.dist.family)) + ',' + params_string(r.dist) + ',' +
                   std::to_string(r.seed) + '\n';
        }
    }
    return out;
}

std::string experiment_svg(std::span<const ExperimentResult> results, const std::string& title,
                           std::optional<std::pair<double, double>> band) {
    if (results.empty()) throw PreconditionError("experiment_svg: no results to plot");

    constexpr double width = 760, height = 480;
    constexpr double left = 70, right = 560, top = 50, bottom = 420;

    int n_max = 0, n_min = 1 << 30;
    for (const auto& r : results) {
        for (const auto& p : r.points) {
            n_max = std::max(n_max, p.n);
            n_min = std::min(n_min, p.n);
        }
    }
    if (n_max == n_min) n_max = n_min + 1;
    const double x_lo = 0.0, x_hi = static_cast<double>(n_max);
    const auto x_of = [&](double n) { return left + (n - x_lo) / (x_hi - x_lo) * (right - left); };
    const auto y_of = [&](double rate) { return bottom - rate * (bottom - top); };

    detail::SvgWriter svg(width, height);
    svg.text(left, 28, title, "start", 15, "bold");
    if (band) {
        svg.rect(left, y_of(band->second), right - left, y_of(band->first) - y_of(band->second), "#e8e8e8");
    }
    svg.line(left, bottom, right, bottom, "black");
    svg.line(left, top, left, bottom, "black");
    for (int i = 0; i <= 10; ++i) {
        const double rate = i / 10.0;
        svg.line(left - 5, y_of(rate), left, y_of(rate), "black");
        svg.line(left, y_of(rate), right, y_of(rate), "#f0f0f0", 0.8);
        svg.text(left - 8, y_of(rate) + 4, format_fixed(rate, 1), "end", 11);
    }
    const int step = n_max <= 100 ? 10 : n_max <= 500 ? 50 : 100;
    for (int n = 0; n <= n_max; n += step) {
        svg.line(x_of(n), bottom, x_of(n), bottom + 5, "black");
        if (n % (step * 2) == 0) svg.text(x_of(n), bottom + 18, std::to_string(n), "middle", 11);
    }
    svg.text((left + right) / 2, bottom + 40, "sample size n", "middle", 12);
    svg.text(18, (top + bottom) / 2, "rejection rate", "middle", 12);

    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        const char* colour = kPalette[i % std::size(kPalette)];
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : r.points) pts.emplace_back(x_of(p.n), y_of(p.rate));
        svg.polyline(pts, colour);
        for (const auto& [x, y] : pts) svg.circle(x, y, 2.5, colour);
        const double ly = top + 10 + 20.0 * static_cast<double>(i);
        svg.line(right + 20, ly, right + 45, ly, colour, 2.0);
        svg.text(right + 52, ly + 4, std::string(to_string(r.scenario)) + " " + to_string(r.dist), "start", 11);
    }
    return svg.str();
}

}  // namespace sumnorm::sim
