#include "catch_amalgamated.hpp"

#include <cmath>

#include "oracles.hpp"
#include "sumnorm/errors.hpp"
#include "sumnorm/normal.hpp"
#include "sumnorm/symmetry_tests.hpp"

using namespace sumnorm;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kPi = 3.14159265358979323846;

double tau_oracle(int n) {
    return 2 * oracle::quantile((n - 0.375) / (n + 0.25)) / std::sqrt(kPi * kPi / (6 * std::log(n)) + kPi / n);
}
double phi_oracle(int n) { return 1.09 * std::sqrt(n) * oracle::quantile((0.75 * n - 0.125) / (n + 0.25)); }
double kappa_oracle(int n, double c) {
    const double num = 2 * oracle::quantile((n - 0.375) / (n + 0.25)) + 2 * oracle::quantile((0.75 * n - 0.125) / (n + 0.25));
    return num / std::sqrt(kPi * kPi / (6 * std::log(n)) + c / n);
}

QuantileSummary s1(int n, double a, double m, double b) { return {n, a, {}, m, {}, b}; }
QuantileSummary s2(int n, double q1, double m, double q3) { return {n, {}, q1, m, q3, {}}; }

}  // namespace

TEST_CASE("tau coefficient", "[symmetry]") {
    CHECK_THAT(coeff_tau(23), WithinAbs(tau_oracle(23), 1e-8));
    CHECK_THAT(coeff_tau(23), WithinAbs(4.7438839339002875, 1e-9));
    CHECK_THAT(coeff_tau(2), WithinAbs(0.59363075096417972, 1e-9));
    CHECK_THAT(coeff_tau(1000), WithinAbs(13.140628838145526, 1e-8));
    CHECK_THROWS_AS(coeff_tau(1), DomainError);
}

TEST_CASE("phi coefficient", "[symmetry]") {
    CHECK_THAT(coeff_phi(26), WithinAbs(phi_oracle(26), 1e-8));
    CHECK_THAT(coeff_phi(26), WithinAbs(3.5430931522252975, 1e-9));
    CHECK_THAT(coeff_phi(22), WithinAbs(3.2256350883079348, 1e-9));
    CHECK_THAT(coeff_phi(4), WithinAbs(0.99811720960723923, 1e-9));
    CHECK_THROWS_AS(coeff_phi(3), DomainError);
}

TEST_CASE("kappa coefficient", "[symmetry]") {
    CHECK_THAT(coeff_kappa(100), WithinAbs(kappa_oracle(100, 10.14), 1e-8));
    CHECK_THAT(coeff_kappa(100), WithinAbs(9.3423715012622413, 1e-9));
    CHECK_THAT(coeff_kappa(100, kKappaTabulated), WithinAbs(9.3059167172136966, 1e-9));
    CHECK_THAT(coeff_kappa(60), WithinAbs(7.8646576522789529, 1e-9));
    CHECK_THROWS_AS(coeff_kappa(3), DomainError);
    CHECK_THROWS_AS(coeff_kappa(10, 0.0), DomainError);
    double prev = 0.0;
    for (int n = 4; n <= 100000; n = n * 3 / 2 + 1) {
        const double k = coeff_kappa(n);
        CHECK(k > prev);
        prev = k;
    }
}

TEST_CASE("T1 on range summaries", "[symmetry]") {
    const auto asthma = test_s1(s1(23, 0.4, 5.3, 27.4));
    CHECK_THAT(asthma.statistic, WithinAbs(3.0220297652994424, 1e-9));
    CHECK_THAT(asthma.p_value, WithinAbs(2 * (1 - oracle::cdf(3.0220297652994424)), 1e-9));
    CHECK(asthma.reject);
    const auto healthy = test_s1(s1(51, 0.3, 8.8, 31.3));
    CHECK_THAT(healthy.statistic, WithinAbs(2.9346293481751553, 1e-9));
    CHECK(healthy.reject);
    const auto sym = test_s1(s1(40, 1.0, 3.0, 5.0));
    CHECK(sym.statistic == 0.0);
    CHECK(sym.p_value == 1.0);
    CHECK_FALSE(sym.reject);
    CHECK_THROWS_AS(test_s1(s1(20, 2.0, 2.0, 2.0)), DegenerateError);
    // Right skew is positive.
    CHECK(test_s1(s1(30, 0, 1, 10)).statistic > 0);
    CHECK(test_s1(s1(30, 0, 9, 10)).statistic < 0);
}

TEST_CASE("T2 on quartile summaries", "[symmetry]") {
    const auto da_silva = test_s2(s2(26, 30, 38, 60));
    CHECK_THAT(da_silva.statistic, WithinAbs(1.6534434710384722, 1e-9));
    CHECK_THAT(da_silva.p_value, WithinAbs(2 * (1 - oracle::cdf(1.6534434710384722)), 1e-9));
    CHECK_FALSE(da_silva.reject);
    const auto ganesan = test_s2(s2(22, 3.72, 4.34, 4.45));
    CHECK_THAT(ganesan.statistic, WithinAbs(-2.2535258836123928, 1e-9));
    CHECK(ganesan.reject);
    const auto leivo = test_s2(s2(32, 0.4, 0.6, 0.8));
    CHECK(std::fabs(leivo.statistic) < 1e-12);
    CHECK_THAT(leivo.p_value, WithinAbs(1.0, 1e-12));
    CHECK_THROWS_AS(test_s2(s2(20, 2.0, 2.0, 2.0)), DegenerateError);
}

TEST_CASE("T3 on five-number summaries", "[symmetry]") {
    const QuantileSummary example{60, 0, 1, 2, 5, 20};
    const auto r = test_s3(example);
    CHECK_THAT(r.statistic, WithinAbs(kappa_oracle(60, 10.14) * 0.75, 1e-8));
    CHECK_THAT(r.statistic, WithinAbs(5.8984932392092146, 1e-9));
    CHECK(r.reject);
    const auto sym = test_s3(QuantileSummary{200, -3, -0.6745, 0, 0.6745, 3});
    CHECK(std::fabs(sym.statistic) < 1e-15);
    CHECK_FALSE(sym.reject);
    CHECK_THROWS_AS(test_s3(QuantileSummary{20, 1, 1, 1, 1, 1}), DegenerateError);
}

TEST_CASE("decision uses the literal 1.96 at alpha 0.05", "[symmetry]") {
    // Choose m so that |T2| lands between 1.959964 and 1.96.
    const int n = 50;
    const double phi = coeff_phi(n);
    const double target = 1.95998;
    const double m = (1.0 + 3.0 - target * 2.0 / phi) / 2.0;
    const auto r = test_s2(s2(n, 1.0, m, 3.0));
    REQUIRE(r.statistic > 1.959964);
    REQUIRE(r.statistic < 1.96);
    CHECK_FALSE(r.reject);
    CHECK(r.p_value < 0.05);
    CHECK(r.critical == 1.96);
    const auto strict = test_s2(s2(n, 1.0, m, 3.0), 0.0500001);
    CHECK(strict.reject);
}

TEST_CASE("dispatch on group records", "[symmetry]") {
    GroupRecord haidari;
    haidari.n = 47;
    haidari.reported_mean = 1.41;
    haidari.reported_sd = 0.5;
    CHECK_FALSE(run_test(haidari).has_value());

    GroupRecord guler;
    guler.n = 102;
    guler.summary = s2(102, 2.06, 3.53, 7.24);
    const auto g = run_test(guler);
    REQUIRE(g.has_value());
    CHECK(g->scenario == Scenario::S2);
    CHECK_THAT(g->statistic, WithinAbs(3.1652149159936444, 1e-9));
    CHECK(g->reject);

    GroupRecord five;
    five.n = 60;
    five.summary = QuantileSummary{60, 0, 1, 2, 5, 20};
    CHECK(run_test(five, {0.05, kKappaTabulated})->statistic < run_test(five)->statistic);
}
