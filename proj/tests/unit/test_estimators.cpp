#include "catch_amalgamated.hpp"

#include <cmath>

#include "oracles.hpp"
#include "sumnorm/errors.hpp"
#include "sumnorm/estimators.hpp"

using namespace sumnorm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double ext_q(int n) { return oracle::quantile((n - 0.375) / (n + 0.25)); }
double quart_q(int n) { return oracle::quantile((0.75 * n - 0.125) / (n + 0.25)); }

}  // namespace

TEST_CASE("sd from range", "[estimators]") {
    CHECK_THAT(estimate_sd_s1(0.4, 27.4, 23), WithinAbs(27.0 / (2 * ext_q(23)), 1e-9));
    CHECK_THAT(estimate_sd_s1(0.4, 27.4, 23), WithinAbs(6.9993967639937887, 1e-9));
    CHECK_THAT(estimate_sd_s1(0.3, 31.3, 51), WithinAbs(6.8860558232028523, 1e-9));
    CHECK(estimate_sd_s1(3.0, 3.0, 10) == 0.0);
    CHECK_THROWS_AS(estimate_sd_s1(0, 1, 1), DomainError);
    CHECK_THROWS_AS(estimate_sd_s1(2, 1, 10), DomainError);
}

TEST_CASE("sd from interquartile range", "[estimators]") {
    CHECK_THAT(estimate_sd_s2(30, 60, 26), WithinAbs(30.0 / (2 * quart_q(26)), 1e-9));
    CHECK_THAT(estimate_sd_s2(30, 60, 26), WithinAbs(23.529996380388924, 1e-9));
    CHECK_THAT(estimate_sd_s2(43, 51, 70), WithinAbs(6.0555005106457445, 1e-9));
    CHECK(estimate_sd_s2(5, 5, 10) == 0.0);
    CHECK_THROWS_AS(estimate_sd_s2(1, 2, 3), DomainError);
}

TEST_CASE("sd from the five-number summary", "[estimators]") {
    const double expect = (6.0 + 1.349) / (2 * ext_q(1000) + 2 * quart_q(1000));
    CHECK_THAT(estimate_sd_s3(-3, -0.6745, 0.6745, 3, 1000), WithinAbs(expect, 1e-9));
    CHECK_THAT(estimate_sd_s3(-3, -0.6745, 0.6745, 3, 1000), WithinAbs(0.94198701455829442, 1e-9));
    CHECK_THAT(estimate_sd_s3(0, 2, 6, 10, 50), WithinAbs(2.4151461926229997, 1e-9));
    CHECK(estimate_sd_s3(1, 2, 2, 1, 10) == 0.0);
    CHECK_THROWS_AS(estimate_sd_s3(0, 1, 2, 3, 3), DomainError);
}

TEST_CASE("mean estimators", "[estimators]") {
    const QuantileSummary s1{23, 0.4, {}, 5.3, {}, 27.4};
    const double w = 4.0 / (4.0 + std::pow(23.0, 0.75));
    CHECK_THAT(estimate_mean(s1, Scenario::S1), WithinAbs(w * 13.9 + (1 - w) * 5.3, 1e-12));
    CHECK_THAT(estimate_mean(s1, Scenario::S1), WithinAbs(7.671992221964472, 1e-12));

    const QuantileSummary s2{26, {}, 30, 38, 60, {}};
    CHECK_THAT(estimate_mean(s2, Scenario::S2), WithinAbs(43.005, 1e-12));

    const QuantileSummary sym{30, 1, 3, 5, 7, 9};
    CHECK_THAT(estimate_mean(sym, Scenario::S1), WithinAbs(5.0, 1e-12));
    CHECK_THAT(estimate_mean(sym, Scenario::S3), WithinAbs(5.0, 1e-12));

    const QuantileSummary s3{50, 0, 2, 4, 6, 10};
    const double w3 = 2.2 / (2.2 + std::pow(50.0, 0.75));
    const double w4 = 0.7 - 0.72 / std::pow(50.0, 0.55);
    CHECK_THAT(estimate_mean(s3, Scenario::S3), WithinAbs(w3 * 5 + w4 * 4 + (1 - w3 - w4) * 4, 1e-12));

    CHECK_THROWS_AS(estimate_mean(s2, Scenario::S1), DomainError);
    CHECK_THROWS_AS(estimate_mean(s2, Scenario::Direct), DomainError);
    CHECK_THROWS_AS(estimate_sd(s1, Scenario::S2), DomainError);
}

TEST_CASE("moments per group", "[estimators]") {
    GroupRecord direct;
    direct.n = 47;
    direct.reported_mean = 1.41;
    direct.reported_sd = 0.50;
    const auto d = estimate_moments(direct);
    CHECK(d.source == MomentSource::Reported);
    CHECK(d.mean == 1.41);
    CHECK_FALSE(d.scenario.has_value());

    GroupRecord cob;
    cob.n = 23;
    cob.summary = QuantileSummary{23, 0.4, {}, 5.3, {}, 27.4};
    const auto c = estimate_moments(cob);
    CHECK(c.source == MomentSource::Estimated);
    CHECK(c.scenario == Scenario::S1);
    CHECK_THAT(c.mean, WithinAbs(7.671992221964472, 1e-12));
    CHECK_THAT(c.sd, WithinAbs(6.9993967639937887, 1e-9));

    GroupRecord das;
    das.n = 26;
    das.summary = QuantileSummary{26, {}, 30, 38, 60, {}};
    const auto m = estimate_moments(das);
    CHECK(m.scenario == Scenario::S2);
    CHECK_THAT(m.mean, WithinAbs(43.005, 1e-12));
    CHECK_THAT(m.sd, WithinAbs(23.529996380388924, 1e-9));
}

TEST_CASE("positions approximate expected normal order statistics", "[estimators]") {
    // Blom-type positions used by the range estimator versus exact E[Z(n)].
    for (int n : {10, 25, 60}) {
        INFO("n = " << n);
        CHECK_THAT(oracle::quantile(extreme_position(n)), WithinRel(oracle::expected_order_statistic(n, n), 0.01));
    }
}

TEST_CASE("plug-in consistency under normality", "[estimators]") {
    // Population quartiles of N(mu, sigma^2) and exact expected extremes.
    const double mu = 3.0, sigma = 2.0;
    const double q = oracle::quantile(0.75);
    for (int n : {100, 400}) {
        const double e = oracle::expected_order_statistic(n, n);
        const QuantileSummary s{n, mu - sigma * e, mu - sigma * q, mu, mu + sigma * q, mu + sigma * e};
        INFO("n = " << n);
        CHECK_THAT(estimate_sd(s, Scenario::S1), WithinRel(sigma, 0.02));
        CHECK_THAT(estimate_sd(s, Scenario::S2), WithinRel(sigma, 0.02));
        CHECK_THAT(estimate_sd(s, Scenario::S3), WithinRel(sigma, 0.02));
        for (Scenario sc : {Scenario::S1, Scenario::S2, Scenario::S3}) {
            CHECK_THAT(estimate_mean(s, sc), WithinAbs(mu, 1e-12));
        }
    }
}
