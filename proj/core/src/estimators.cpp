#include "sumnorm/estimators.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "sumnorm/errors.hpp"
#include "sumnorm/normal.hpp"

namespace sumnorm {

namespace {

void require_n(int n, int minimum, const char* who) {
    if (n < minimum) {
        throw DomainError(std::string(who) + ": n >= " + std::to_string(minimum) +
                          " required, got " + std::to_string(n));
    }
}

void require_ordered(double lo, double hi, const char* who) {
    if (!(hi >= lo)) {
        throw DomainError(std::string(who) + ": upper value must not be below lower value");
    }
}

double need(const std::optional<double>& v, const char* field, Scenario s) {
    if (!v) {
        throw DomainError("summary lacks '" + std::string(field) + "' required by scenario " +
                          std::string(to_string(s)));
    }
    return *v;
}

}  // namespace

double extreme_position(int n) noexcept { return (n - 0.375) / (n + 0.25); }

double quartile_position(int n) noexcept { return (0.75 * n - 0.125) / (n + 0.25); }

double estimate_sd_s1(double min, double max, int n) {
    require_n(n, 2, "estimate_sd_s1");
    require_ordered(min, max, "estimate_sd_s1");
    const double z = std_normal_quantile(extreme_position(n));
    assert(z > 0.0);
    return (max - min) / (2.0 * z);
}

double estimate_sd_s2(double q1, double q3, int n) {
    require_n(n, 4, "estimate_sd_s2");
    require_ordered(q1, q3, "estimate_sd_s2");
    const double z = std_normal_quantile(quartile_position(n));
    assert(z > 0.0);
    return (q3 - q1) / (2.0 * z);
}

double estimate_sd_s3(double min, double q1, double q3, double max, int n) {
    require_n(n, 4, "estimate_sd_s3");
    require_ordered(min, max, "estimate_sd_s3");
    require_ordered(q1, q3, "estimate_sd_s3");
    const double denom = 2.0 * std_normal_quantile(extreme_position(n)) +
                         2.0 * std_normal_quantile(quartile_position(n));
    assert(denom > 0.0);
    return (max - min + q3 - q1) / denom;
}

double estimate_mean(const QuantileSummary& s, Scenario scenario) {
    const double n = s.n;
    switch (scenario) {
        case Scenario::S1: {
            require_n(s.n, 2, "estimate_mean");
            const double a = need(s.min, "min", scenario);
            const double b = need(s.max, "max", scenario);
            const double w = 4.0 / (4.0 + std::pow(n, 0.75));
            return w * (a + b) / 2.0 + (1.0 - w) * s.median;
        }
        case Scenario::S2: {
            require_n(s.n, 4, "estimate_mean");
            const double q1 = need(s.q1, "q1", scenario);
            const double q3 = need(s.q3, "q3", scenario);
            const double w = 0.7 + 0.39 / n;
            return w * (q1 + q3) / 2.0 + (1.0 - w) * s.median;
        }
        case Scenario::S3: {
            require_n(s.n, 4, "estimate_mean");
            const double a = need(s.min, "min", scenario);
            const double q1 = need(s.q1, "q1", scenario);
            const double q3 = need(s.q3, "q3", scenario);
            const double b = need(s.max, "max", scenario);
            const double w_range = 2.2 / (2.2 + std::pow(n, 0.75));
            const double w_iqr = 0.7 - 0.72 / std::pow(n, 0.55);
            return w_range * (a + b) / 2.0 + w_iqr * (q1 + q3) / 2.0 +
                   (1.0 - w_range - w_iqr) * s.median;
        }
        case Scenario::Direct:
            break;
    }
    throw DomainError("estimate_mean: a DIRECT group has no quantile summary to estimate from");
}

double estimate_sd(const QuantileSummary& s, Scenario scenario) {
    switch (scenario) {
        case Scenario::S1:
            return estimate_sd_s1(need(s.min, "min", scenario), need(s.max, "max", scenario), s.n);
        case Scenario::S2:
            return estimate_sd_s2(need(s.q1, "q1", scenario), need(s.q3, "q3", scenario), s.n);
        case Scenario::S3:
            return estimate_sd_s3(need(s.min, "min", scenario), need(s.q1, "q1", scenario),
                                  need(s.q3, "q3", scenario), need(s.max, "max", scenario), s.n);
        case Scenario::Direct:
            break;
    }
    throw DomainError("estimate_sd: a DIRECT group has no quantile summary to estimate from");
}

EstimatedMoments estimate_moments(const GroupRecord& group) {
    const Scenario scenario = classify_scenario(group);
    if (scenario == Scenario::Direct) {
        return {*group.reported_mean, *group.reported_sd, MomentSource::Reported, std::nullopt};
    }
    const QuantileSummary& s = *group.summary;
    return {estimate_mean(s, scenario), estimate_sd(s, scenario), MomentSource::Estimated,
            scenario};
}

}  // namespace sumnorm
