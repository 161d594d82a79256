#pragma once

#include <optional>

#include "sumnorm/summary.hpp"

namespace sumnorm {

/// Blom plotting position of the sample maximum, (n - 0.375) / (n + 0.25).
[[nodiscard]] double extreme_position(int n) noexcept;
/// Blom plotting position of the third quartile, (0.75n - 0.125) / (n + 0.25).
[[nodiscard]] double quartile_position(int n) noexcept;

/// (b - a) / (2 Phi^-1(extreme_position(n))). Requires b >= a, n >= 2.
[[nodiscard]] double estimate_sd_s1(double min, double max, int n);

/// (q3 - q1) / (2 Phi^-1(quartile_position(n))). Requires q3 >= q1, n >= 4.
[[nodiscard]] double estimate_sd_s2(double q1, double q3, int n);

/// (b - a + q3 - q1) / (2 Phi^-1(extreme_position(n)) + 2 Phi^-1(quartile_position(n))).
[[nodiscard]] double estimate_sd_s3(double min, double q1, double q3, double max, int n);

/// Weighted combination of median and mid-range / mid-quartile range:
///   S1: w (a+b)/2 + (1-w) m,               w = 4 / (4 + n^0.75)
///   S2: w (q1+q3)/2 + (1-w) m,             w = 0.7 + 0.39/n
///   S3: w1 (a+b)/2 + w2 (q1+q3)/2 + (1-w1-w2) m,
///       w1 = 2.2 / (2.2 + n^0.75), w2 = 0.7 - 0.72 / n^0.55
/// Throws DomainError if the summary lacks the fields the scenario needs.
[[nodiscard]] double estimate_mean(const QuantileSummary& summary, Scenario scenario);

/// Dispatches estimate_sd_* for the scenario.
[[nodiscard]] double estimate_sd(const QuantileSummary& summary, Scenario scenario);

enum class MomentSource { Reported, Estimated };

struct EstimatedMoments {
    double mean = 0.0;
    double sd = 0.0;
    MomentSource source = MomentSource::Reported;
    /// Set for MomentSource::Estimated.
    std::optional<Scenario> scenario;
};

/// Mean/SD passthrough for directly reported groups, formula-based estimates
/// for S1/S2/S3 summaries.
[[nodiscard]] EstimatedMoments estimate_moments(const GroupRecord& group);

}  // namespace sumnorm
