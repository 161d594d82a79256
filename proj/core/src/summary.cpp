#include "sumnorm/summary.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "sumnorm/errors.hpp"

namespace sumnorm {

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string format_value(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::string_view to_string(Scenario s) noexcept {
    switch (s) {
        case Scenario::S1: return "S1";
        case Scenario::S2: return "S2";
        case Scenario::S3: return "S3";
        case Scenario::Direct: return "DIRECT";
    }
    return "?";
}

std::string_view to_string(Arm a) noexcept { return a == Arm::Case ? "case" : "control"; }

std::optional<Scenario> parse_scenario(std::string_view text) noexcept {
    const std::string t = lower(text);
    if (t == "s1") return Scenario::S1;
    if (t == "s2") return Scenario::S2;
    if (t == "s3") return Scenario::S3;
    if (t == "direct") return Scenario::Direct;
    return std::nullopt;
}

std::optional<Arm> parse_arm(std::string_view text) noexcept {
    const std::string t = lower(text);
    if (t == "case") return Arm::Case;
    if (t == "control") return Arm::Control;
    return std::nullopt;
}

QuantileSummary QuantileSummary::transformed(double scale, double shift) const {
    const auto map = [&](const std::optional<double>& v) -> std::optional<double> {
        if (!v) return std::nullopt;
        return scale * *v + shift;
    };
    QuantileSummary out;
    out.n = n;
    out.median = scale * median + shift;
    if (scale >= 0.0) {
        out.min = map(min);
        out.q1 = map(q1);
        out.q3 = map(q3);
        out.max = map(max);
    } else {
        out.min = map(max);
        out.q1 = map(q3);
        out.q3 = map(q1);
        out.max = map(min);
    }
    return out;
}

Scenario classify_scenario(const GroupRecord& group) {
    if (group.reported_mean && group.reported_sd) {
        return Scenario::Direct;
    }
    if (!group.summary) {
        throw UnsupportedSummaryError("group '" + group.group_label + "' of study '" +
                                      group.study_id +
                                      "' reports neither mean/SD nor a quantile summary");
    }
    const QuantileSummary& s = *group.summary;
    if (s.has_extremes() && s.has_quartiles()) return Scenario::S3;
    if (s.has_extremes() && !s.q1 && !s.q3) return Scenario::S1;
    if (s.has_quartiles() && !s.min && !s.max) return Scenario::S2;

    std::vector<std::string> missing;
    if (s.min && !s.max) missing.emplace_back("max");
    if (s.max && !s.min) missing.emplace_back("min");
    if (s.q1 && !s.q3) missing.emplace_back("q3");
    if (s.q3 && !s.q1) missing.emplace_back("q1");
    if (missing.empty()) {
        missing = {"min+max", "q1+q3"};
    }
    std::string names;
    for (std::size_t i = 0; i < missing.size(); ++i) {
        if (i) names += ", ";
        names += missing[i];
    }
    throw UnsupportedSummaryError("group '" + group.group_label + "' of study '" +
                                  group.study_id + "' matches no scenario; missing: " + names);
}

std::vector<Violation> validate(const GroupRecord& group) {
    std::vector<Violation> out;
    const auto add = [&](std::string field, std::string rule) {
        out.push_back({std::move(field), std::move(rule)});
    };

    if (group.n < 1) {
        add("n", "n must be a positive integer");
    }
    const bool has_mean = group.reported_mean.has_value();
    const bool has_sd = group.reported_sd.has_value();
    if (has_mean != has_sd) {
        add(has_mean ? "sd" : "mean", "mean and sd must be reported together");
    }
    if (has_mean && !std::isfinite(*group.reported_mean)) {
        add("mean", "mean must be finite");
    }
    if (has_sd && !(std::isfinite(*group.reported_sd) && *group.reported_sd >= 0.0)) {
        add("sd", "sd must be finite and >= 0");
    }
    if (has_mean && has_sd && group.summary) {
        add("summary", "exactly one of (mean, sd) or a quantile summary may be reported");
    }
    if (!(has_mean && has_sd) && !group.summary && has_mean == has_sd) {
        add("summary", "either (mean, sd) or a quantile summary is required");
    }

    if (group.summary) {
        const QuantileSummary& s = *group.summary;
        if (s.n != group.n) {
            add("n", "summary n (" + std::to_string(s.n) + ") differs from group n (" +
                         std::to_string(group.n) + ")");
        }
        struct Named {
            const char* name;
            std::optional<double> value;
        };
        const Named chain[] = {{"min", s.min}, {"q1", s.q1}, {"median", s.median},
                               {"q3", s.q3},   {"max", s.max}};
        for (const auto& c : chain) {
            if (c.value && !std::isfinite(*c.value)) {
                add(c.name, std::string(c.name) + " must be finite");
            }
        }
        const Named* prev = nullptr;
        for (const auto& c : chain) {
            if (!c.value) continue;
            if (prev && *prev->value > *c.value) {
                add(c.name, std::string("ordering violation: ") + prev->name + " <= " + c.name +
                                " fails (" + format_value(*prev->value) + " > " +
                                format_value(*c.value) + ")");
            }
            prev = &c;
        }
        if ((s.q1 || s.q3) && s.n < 4) {
            add("n", "n >= 4 required with quartiles");
        } else if ((s.min || s.max) && s.n < 2) {
            add("n", "n >= 2 required with extremes");
        }
    }
    return out;
}

GroupRecord combine_subgroups(std::span<const GroupRecord> groups) {
    if (groups.size() < 2) {
        throw PreconditionError("combine_subgroups: at least two groups are required, got " +
                                std::to_string(groups.size()));
    }
    double total_n = 0.0;
    double weighted_sum = 0.0;
    for (const auto& g : groups) {
        if (!g.reported_mean || !g.reported_sd) {
            throw PreconditionError("combine_subgroups: group '" + g.group_label +
                                    "' has no mean/SD");
        }
        if (g.n < 1) {
            throw PreconditionError("combine_subgroups: group '" + g.group_label +
                                    "' has n < 1");
        }
        total_n += g.n;
        weighted_sum += g.n * *g.reported_mean;
    }
    const double mean = weighted_sum / total_n;
    double within = 0.0;
    double between = 0.0;
    for (const auto& g : groups) {
        within += (g.n - 1) * *g.reported_sd * *g.reported_sd;
        const double dev = *g.reported_mean - mean;
        between += g.n * dev * dev;
    }

    GroupRecord out;
    out.study_id = groups.front().study_id;
    out.arm = groups.front().arm;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        if (i) out.group_label += " + ";
        out.group_label += groups[i].group_label;
    }
    out.n = static_cast<int>(total_n);
    out.reported_mean = mean;
    out.reported_sd = std::sqrt((within + between) / (total_n - 1.0));
    return out;
}

}  // namespace sumnorm
