#pragma once

#include <span>
#include <string_view>
#include <optional>
#include <vector>

namespace sumnorm {

/// CI multiplier for every effect-size and pooled interval (95%).
inline constexpr double kCiMultiplier = 1.96;

struct GroupMoments {
    double mean = 0.0;
    double sd = 0.0;
    int n = 0;
};

struct EffectSize {
    double smd = 0.0;
    double se = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    int n_case = 0;
    int n_control = 0;
};

/// Standardized mean difference (case - control) / s_pooled with
///   s_pooled = sqrt(((n1-1) s1^2 + (n2-1) s2^2) / (n1 + n2 - 2)),
///   se = sqrt((n1+n2)/(n1 n2) + d^2 / (2 (n1+n2))).
/// With `hedges_correction` d is multiplied by J = 1 - 3 / (4(n1+n2) - 9)
/// before the SE is formed. Throws DegenerateError if s_pooled is 0.
[[nodiscard]] EffectSize cohen_d(const GroupMoments& case_group, const GroupMoments& control,
                                 bool hedges_correction = false);

enum class PoolModel { Fixed, Random };

[[nodiscard]] std::string_view to_string(PoolModel m) noexcept;
[[nodiscard]] std::optional<PoolModel> parse_pool_model(std::string_view text) noexcept;

struct PooledResult {
    PoolModel model = PoolModel::Random;
    double smd = 0.0;
    double se = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    /// Cochran's Q about the fixed-effect mean, its degrees of freedom and
    /// chi-square upper-tail p; df = 0 gives p = 1.
    double q_stat = 0.0;
    int q_df = 0;
    double q_p = 1.0;
    /// Percent, max(0, (Q - df) / Q) * 100.
    double i_squared = 0.0;
    /// DerSimonian-Laird between-study variance (reported for both models).
    double tau_squared = 0.0;
    /// Normalized weights of the chosen model, one per input effect.
    std::vector<double> weights;
};

/// Inverse-variance pooling. The random model uses the DerSimonian-Laird
/// estimate of tau^2. Throws PreconditionError for an empty list.
[[nodiscard]] PooledResult pool(std::span<const EffectSize> effects, PoolModel model);

/// Upper tail P(X > q) for X ~ chi-square(df).
[[nodiscard]] double chi_square_sf(double q, int df);

}  // namespace sumnorm
