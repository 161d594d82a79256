#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "sumnorm/effect_size.hpp"
#include "sumnorm/estimators.hpp"
#include "sumnorm/normal.hpp"
#include "sumnorm/symmetry_tests.hpp"

using namespace sumnorm;

namespace {

using Rng = std::mt19937_64;

// Random five-number summary with distinct, ordered values.
QuantileSummary random_summary(Rng& rng, Scenario s) {
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    std::uniform_int_distribution<int> n_dist(4, 5000);
    std::vector<double> v(5);
    for (auto& x : v) x = u(rng);
    std::sort(v.begin(), v.end());
    QuantileSummary q{n_dist(rng), v[0], v[1], v[2], v[3], v[4]};
    if (s == Scenario::S1) q.q1.reset(), q.q3.reset();
    if (s == Scenario::S2) q.min.reset(), q.max.reset();
    return q;
}

double rel_or_abs(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

constexpr Scenario kScenarios[] = {Scenario::S1, Scenario::S2, Scenario::S3};

}  // namespace

TEST_CASE("statistics are location-scale invariant", "[property]") {
    Rng rng(101);
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    std::uniform_real_distribution<double> shift(-1000.0, 1000.0);
    for (auto s : kScenarios) {
        for (int i = 0; i < 10000; ++i) {
            const auto q = random_summary(rng, s);
            const double t = test_summary(q, s).statistic;
            const double t2 = test_summary(q.transformed(scale(rng), shift(rng)), s).statistic;
            INFO("scenario " << to_string(s) << " n " << q.n);
            REQUIRE(rel_or_abs(t2, t) < 1e-12);
        }
    }
}

TEST_CASE("reflection flips the sign of every statistic", "[property]") {
    Rng rng(202);
    for (auto s : kScenarios) {
        for (int i = 0; i < 10000; ++i) {
            const auto q = random_summary(rng, s);
            const auto r = test_summary(q, s);
            const auto m = test_summary(q.transformed(-1.0, 0.0), s);
            REQUIRE(rel_or_abs(m.statistic, -r.statistic) < 1e-12);
            REQUIRE(std::fabs(m.p_value - r.p_value) < 1e-12);
            REQUIRE(m.reject == r.reject);
        }
    }
}

TEST_CASE("p-value and decision agree", "[property]") {
    Rng rng(303);
    std::uniform_real_distribution<double> alpha(0.001, 0.3);
    for (int i = 0; i < 10000; ++i) {
        const auto s = kScenarios[i % 3];
        const double a = alpha(rng);
        const auto r = test_summary(random_summary(rng, s), s, {a, kKappaDerived});
        REQUIRE(r.p_value >= 0.0);
        REQUIRE(r.p_value <= 1.0);
        // Away from the boundary the two formulations must coincide.
        if (std::fabs(r.p_value - a) > 1e-9) REQUIRE(r.reject == (r.p_value < a));
    }
}

TEST_CASE("normal quantile inverts the cdf", "[property]") {
    Rng rng(404);
    std::uniform_real_distribution<double> u(1e-8, 1 - 1e-8);
    for (int i = 0; i < 1000; ++i) {
        const double p = u(rng);
        const double z = std_normal_quantile(p);
        REQUIRE(std::fabs(std_normal_cdf(z) - p) < 1e-9);
        REQUIRE(std::fabs(std_normal_quantile(1 - p) + z) < 1e-9 * std::max(1.0, std::fabs(z)));
    }
    double prev = -INFINITY;
    for (int i = 1; i < 10000; ++i) {
        const double z = std_normal_quantile(i / 10000.0);
        REQUIRE(z > prev);
        prev = z;
    }
}

TEST_CASE("estimators are location-scale equivariant", "[property]") {
    Rng rng(505);
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    std::uniform_real_distribution<double> shift(-1000.0, 1000.0);
    for (auto s : kScenarios) {
        for (int i = 0; i < 5000; ++i) {
            const auto q = random_summary(rng, s);
            const double c = scale(rng), b = shift(rng);
            const auto qt = q.transformed(c, b);
            REQUIRE(rel_or_abs(estimate_mean(qt, s), c * estimate_mean(q, s) + b) < 1e-9);
            REQUIRE(rel_or_abs(estimate_sd(qt, s), c * estimate_sd(q, s)) < 1e-9);
        }
    }
}

TEST_CASE("mean estimate stays inside the reported range", "[property]") {
    Rng rng(606);
    for (auto s : {Scenario::S1, Scenario::S3}) {
        for (int i = 0; i < 5000; ++i) {
            const auto q = random_summary(rng, s);
            const double m = estimate_mean(q, s);
            REQUIRE(m >= *q.min);
            REQUIRE(m <= *q.max);
        }
    }
}

TEST_CASE("pooled estimates are bounded by the studies", "[property]") {
    Rng rng(707);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    std::uniform_real_distribution<double> se(0.05, 1.0);
    std::uniform_int_distribution<int> k_dist(1, 15);
    for (int i = 0; i < 1000; ++i) {
        std::vector<EffectSize> set(static_cast<std::size_t>(k_dist(rng)));
        for (auto& e : set) {
            e.smd = d(rng);
            e.se = se(rng);
        }
        const auto f = pool(set, PoolModel::Fixed);
        const auto r = pool(set, PoolModel::Random);
        const auto [lo, hi] = std::minmax_element(set.begin(), set.end(),
                                                  [](const auto& a, const auto& b) { return a.smd < b.smd; });
        for (const auto& p : {f, r}) {
            REQUIRE(p.smd >= lo->smd - 1e-12);
            REQUIRE(p.smd <= hi->smd + 1e-12);
            REQUIRE(p.i_squared >= 0.0);
            REQUIRE(p.i_squared <= 100.0);
            REQUIRE(p.tau_squared >= 0.0);
        }
        REQUIRE(r.ci_high - r.ci_low >= f.ci_high - f.ci_low - 1e-12);

        auto shuffled = set;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto rs = pool(shuffled, PoolModel::Random);
        REQUIRE(std::fabs(rs.q_stat - r.q_stat) < 1e-9 * std::max(1.0, r.q_stat));
        REQUIRE(std::fabs(rs.smd - r.smd) < 1e-12);
    }
}

TEST_CASE("subgroup combination ignores order", "[property]") {
    Rng rng(808);
    std::uniform_real_distribution<double> mean(-10.0, 10.0);
    std::uniform_real_distribution<double> sd(0.1, 5.0);
    std::uniform_int_distribution<int> n(2, 200);
    for (int i = 0; i < 1000; ++i) {
        std::vector<GroupRecord> parts(3);
        for (auto& g : parts) {
            g.n = n(rng);
            g.reported_mean = mean(rng);
            g.reported_sd = sd(rng);
        }
        const auto a = combine_subgroups(parts);
        std::reverse(parts.begin(), parts.end());
        const auto b = combine_subgroups(parts);
        REQUIRE(a.n == b.n);
        REQUIRE(std::fabs(*a.reported_mean - *b.reported_mean) < 1e-12);
        REQUIRE(std::fabs(*a.reported_sd - *b.reported_sd) < 1e-10);
    }
}
