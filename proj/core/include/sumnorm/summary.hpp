#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sumnorm {

/// Reporting pattern of one group.
///   S1: {min, median, max; n}
///   S2: {q1, median, q3; n}
///   S3: {min, q1, median, q3, max; n}
///   Direct: mean and SD reported, nothing to test.
enum class Scenario { S1, S2, S3, Direct };

enum class Arm { Case, Control };

[[nodiscard]] std::string_view to_string(Scenario s) noexcept;
[[nodiscard]] std::string_view to_string(Arm a) noexcept;

/// Parses "s1"/"S1"/... and "direct".
[[nodiscard]] std::optional<Scenario> parse_scenario(std::string_view text) noexcept;
[[nodiscard]] std::optional<Arm> parse_arm(std::string_view text) noexcept;

struct QuantileSummary {
    int n = 0;
    std::optional<double> min;
    std::optional<double> q1;
    double median = 0.0;
    std::optional<double> q3;
    std::optional<double> max;

    [[nodiscard]] bool has_extremes() const noexcept { return min && max; }
    [[nodiscard]] bool has_quartiles() const noexcept { return q1 && q3; }

    /// Applies x -> scale * x + shift to every reported quantile. For scale < 0
    /// the roles of min/max and q1/q3 are swapped so the summary stays ordered.
    [[nodiscard]] QuantileSummary transformed(double scale, double shift) const;

    friend bool operator==(const QuantileSummary&, const QuantileSummary&) = default;
};

struct GroupRecord {
    std::string study_id;
    std::string group_label;
    Arm arm = Arm::Case;
    int n = 0;
    std::optional<double> reported_mean;
    std::optional<double> reported_sd;
    std::optional<QuantileSummary> summary;

    friend bool operator==(const GroupRecord&, const GroupRecord&) = default;
};

/// One (study, outcome) pair with its case and control arms.
struct Study {
    std::string study_id;
    std::string outcome;
    std::vector<GroupRecord> case_groups;
    std::vector<GroupRecord> control_groups;
    /// Validation findings collected at ingestion; one line per violation.
    std::vector<std::string> warnings;

    friend bool operator==(const Study&, const Study&) = default;
};

struct Violation {
    std::string field;
    std::string rule;

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Returns the scenario a group's reported data falls under. Mean and SD win
/// over any quantile summary. Throws UnsupportedSummaryError naming the
/// missing fields when a summary matches no scenario.
[[nodiscard]] Scenario classify_scenario(const GroupRecord& group);

/// Checks every GroupRecord / QuantileSummary invariant. Empty iff valid.
[[nodiscard]] std::vector<Violation> validate(const GroupRecord& group);

/// Pools subgroups as if their samples were concatenated:
///   n = sum n_i, mean = sum n_i m_i / n,
///   s^2 = [sum (n_i - 1) s_i^2 + sum n_i (m_i - mean)^2] / (n - 1).
/// Every input must carry reported_mean and reported_sd; at least two groups.
/// The result takes study_id and arm from the first group.
[[nodiscard]] GroupRecord combine_subgroups(std::span<const GroupRecord> groups);

}  // namespace sumnorm
