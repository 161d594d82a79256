#include "catch_amalgamated.hpp"

#include <cmath>

#include "oracles.hpp"
#include "sumnorm/errors.hpp"
#include "sumnorm/normal.hpp"

using namespace sumnorm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("pdf closed form", "[normal]") {
    CHECK_THAT(std_normal_pdf(0.0), WithinAbs(0.3989422804014327, 1e-15));
    // 1 / sqrt(2 pi e), evaluated to 17 digits.
    CHECK_THAT(std_normal_pdf(1.0), WithinAbs(0.24197072451914335, 1e-15));
    CHECK(std_normal_pdf(-1.0) == std_normal_pdf(1.0));
    CHECK_THAT(std_normal_pdf(2.5), WithinAbs(oracle::pdf(2.5), 1e-16));
}

TEST_CASE("cdf against quadrature", "[normal]") {
    CHECK(std_normal_cdf(0.0) == 0.5);
    CHECK_THAT(std_normal_cdf(1.96), WithinAbs(0.97500210485177956, 1e-12));
    CHECK_THAT(std_normal_cdf(-1.96), WithinAbs(0.02499789514822044, 1e-12));
    for (double z : {-6.0, -3.3, -1.0, -0.25, 0.4, 1.5, 2.8, 4.2, 7.5}) {
        INFO("z = " << z);
        CHECK_THAT(std_normal_cdf(z), WithinAbs(oracle::cdf(z), 1e-12));
        CHECK_THAT(std_normal_cdf(z) + std_normal_cdf(-z), WithinAbs(1.0, 1e-15));
    }
    CHECK_THAT(std_normal_sf(3.0), WithinRel(1.0 - oracle::cdf(3.0), 1e-9));
}

TEST_CASE("quantile against bisection", "[normal]") {
    CHECK(std_normal_quantile(0.5) == 0.0);
    CHECK_THAT(std_normal_quantile(0.975), WithinAbs(1.9599639845400539, 1e-9));
    // Argument of tau(23).
    const double p23 = (23 - 0.375) / (23 + 0.25);
    CHECK_THAT(std_normal_quantile(p23), WithinAbs(oracle::quantile(p23), 1e-9));
    CHECK_THAT(std_normal_quantile(0.97312), WithinAbs(1.9287653439387541, 1e-9));
    for (double p : {1e-6, 0.001, 0.02425, 0.2, 0.6, 0.97575, 0.999, 1 - 1e-6}) {
        INFO("p = " << p);
        CHECK_THAT(std_normal_quantile(p), WithinAbs(oracle::quantile(p), 1e-9));
    }
}

TEST_CASE("quantile rejects probabilities outside (0,1)", "[normal]") {
    for (double p : {0.0, 1.0, -0.1, 1.5, std::nan("")}) {
        CHECK_THROWS_AS(std_normal_quantile(p), DomainError);
    }
    CHECK_THROWS_WITH(std_normal_quantile(1.0), Catch::Matchers::ContainsSubstring("1"));
}

TEST_CASE("two-sided p-values", "[normal]") {
    CHECK(two_sided_p(0.0) == 1.0);
    CHECK_THAT(two_sided_p(3.022), WithinAbs(0.0025111, 1e-6));
    CHECK_THAT(two_sided_p(1.653), WithinAbs(2 * (1 - oracle::cdf(1.653)), 1e-9));
    CHECK(two_sided_p(-2.0) == two_sided_p(2.0));
    CHECK(two_sided_p(40.0) >= 0.0);
    CHECK(two_sided_p(30.0) > 0.0);
}

TEST_CASE("critical values", "[normal]") {
    CHECK(critical_value(0.05) == kLiteralCritical);
    CHECK_THAT(critical_value(0.01), WithinAbs(2.5758293035489004, 1e-9));
    CHECK(critical_value(1.0) == 0.0);
    CHECK_THROWS_AS(critical_value(0.0), DomainError);
    CHECK_THROWS_AS(critical_value(1.2), DomainError);
}
