#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sumnorm::sim {

enum class Family { Normal, LogNormal, ChiSquare, Exponential, Beta, Weibull };

[[nodiscard]] std::string_view to_string(Family f) noexcept;

/// Parameter conventions per family:
///   normal(mu, sigma)  lognormal(mu, sigma)  chisquare(df)
///   exponential(rate)  beta(alpha, beta)     weibull(shape k, scale lambda)
struct DistSpec {
    Family family = Family::Normal;
    std::vector<double> params{0.0, 1.0};

    friend bool operator==(const DistSpec&, const DistSpec&) = default;
};

/// "lognormal:0,1" style text; defaults apply when the parameter list is
/// omitted ("exponential" means rate 1). Throws DomainError.
[[nodiscard]] DistSpec parse_dist(std::string_view text);

/// Inverse of parse_dist.
[[nodiscard]] std::string to_string(const DistSpec& d);

/// Parameters joined with ';' for CSV columns.
[[nodiscard]] std::string params_string(const DistSpec& d);

/// Throws DomainError when the parameter count or domain is wrong.
void validate(const DistSpec& d);

[[nodiscard]] DistSpec normal(double mu = 0.0, double sigma = 1.0);
[[nodiscard]] DistSpec lognormal(double mu, double sigma);
[[nodiscard]] DistSpec chisquare(double df);
[[nodiscard]] DistSpec exponential(double rate);
[[nodiscard]] DistSpec beta(double a, double b);
[[nodiscard]] DistSpec weibull(double shape, double scale);

/// SplitMix64 finalizer chain over (seed, a, b). Every Monte-Carlo cell gets
/// its own engine seeded from this, so results do not depend on scheduling.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept;

using Engine = std::mt19937_64;

/// Fills `out` with iid draws (unsorted). `d` must be valid.
void draw(const DistSpec& d, Engine& engine, std::span<double> out);

/// n draws sorted ascending, deterministic in (d, n, seed).
[[nodiscard]] std::vector<double> sample(const DistSpec& d, int n, std::uint64_t seed);

/// The five skewed alternatives of the power study.
[[nodiscard]] std::vector<DistSpec> power_alternatives();

struct DemoPair {
    std::string name;
    DistSpec case_dist;
    DistSpec control_dist;
    int n = 0;
};

/// Case/control pairs for the skew-distortion demonstration, plus a
/// "normal" control pair which is not part of the default set.
[[nodiscard]] std::vector<DemoPair> demo_pairs();
[[nodiscard]] DemoPair normal_demo_pair();

}  // namespace sumnorm::sim
