#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sumnorm/sim/distributions.hpp"
#include "sumnorm/summary.hpp"
#include "sumnorm/symmetry_tests.hpp"

namespace sumnorm::sim {

/// Five-number summary of a sorted sample using X([np]) (1-based, integer
/// part, clamped to >= 1). Requires n >= 4.
[[nodiscard]] QuantileSummary summarize(std::span<const double> sorted);

/// Same order statistics from an unsorted buffer, which is reordered.
[[nodiscard]] QuantileSummary summarize_unsorted(std::span<double> values);

inline const std::vector<int> kDefaultGrid{10, 25, 50, 100, 200, 300, 400, 500, 750, 1000};

struct ExperimentConfig {
    std::vector<int> n_grid = kDefaultGrid;
    int replicates = 100000;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    double kappa_constant = kKappaDerived;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

struct CurvePoint {
    int n = 0;
    double rate = 0.0;
    /// sqrt(rate (1 - rate) / replicates)
    double se = 0.0;
};

struct ExperimentResult {
    Scenario scenario = Scenario::S1;
    DistSpec dist;
    int replicates = 0;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    std::vector<CurvePoint> points;
};

/// Smallest n a scenario can be simulated at (the summary needs four points).
[[nodiscard]] int scenario_min_n(Scenario s);

/// Rejection rate of the scenario's test under N(0,1) data.
[[nodiscard]] ExperimentResult type1_curve(Scenario scenario, const ExperimentConfig& config);

/// Rejection rate under `dist`. Throws DomainError for the Direct scenario,
/// replicates < 1000, an n below scenario_min_n or an invalid distribution.
[[nodiscard]] ExperimentResult power_curve(Scenario scenario, const DistSpec& dist,
                                           const ExperimentConfig& config);

struct VarianceCheck {
    /// Var(a + b - 2m) over N(0,1) replicates and its approximation
    /// pi^2 / (6 ln n) + pi / n.
    double contrast_variance = 0.0;
    double contrast_theory = 0.0;
    /// n Var(m) and its limit pi / 2.
    double scaled_median_variance = 0.0;
    double median_theory = 0.0;
};

/// Requires n >= 10 and replicates >= 2.
[[nodiscard]] VarianceCheck midrange_variance_check(int n, int replicates, std::uint64_t seed,
                                                    unsigned threads = 0);

struct CovRatios {
    double median_ratio = 0.0;    // Cov(a + b, m) / Var(m)
    double quartile_ratio = 0.0;  // Cov(a + b, q1) / Var(q1)
};

/// Requires n >= 50, replicates >= 2 and sigma > 0.
[[nodiscard]] CovRatios cov_ratio_check(int n, int replicates, std::uint64_t seed, double sigma = 1.0,
                                        unsigned threads = 0);

struct DistortionRecord {
    double d_true = 0.0;       // Cohen's d from the sample moments
    double d_estimated = 0.0;  // Cohen's d from five-number-summary estimates
    double gap = 0.0;          // d_true - d_estimated
};

[[nodiscard]] DistortionRecord skew_distortion_demo(const DistSpec& case_dist, const DistSpec& control_dist,
                                                    int n, std::uint64_t seed);

struct DistortionSummary {
    DemoPair pair;
    int repeats = 0;
    double mean_d_true = 0.0;
    double mean_d_estimated = 0.0;
    double mean_abs_gap = 0.0;
    /// Share of repeats with |d_true| > |d_estimated|.
    double attenuated_share = 0.0;
};

/// Runs the demo `repeats` times with derived seeds and averages.
[[nodiscard]] DistortionSummary run_distortion_pair(const DemoPair& pair, int repeats, std::uint64_t seed);

/// R^2 of the nondecreasing least-squares (PAVA) fit to `y`. A constant
/// series gives 1.
[[nodiscard]] double isotonic_r2(std::span<const double> y);

[[nodiscard]] std::vector<double> isotonic_fit(std::span<const double> y);

}  // namespace sumnorm::sim
