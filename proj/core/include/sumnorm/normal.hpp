#pragma once

namespace sumnorm {

inline constexpr double kPi = 3.14159265358979323846;

/// Two-sided critical value used by every symmetry test at alpha = 0.05.
/// The literal 1.96 is kept rather than the exact 1.959964.
inline constexpr double kLiteralCritical = 1.96;

/// Standard normal density.
[[nodiscard]] double std_normal_pdf(double z) noexcept;

/// Standard normal CDF, accurate to ~1e-16 absolute over the whole line.
[[nodiscard]] double std_normal_cdf(double z) noexcept;

/// Upper tail 1 - cdf(z) without cancellation for large z.
[[nodiscard]] double std_normal_sf(double z) noexcept;

/// Inverse of the standard normal CDF.
///
/// Acklam's rational approximation (relative error 1.15e-9) followed by one
/// Newton step on the CDF, which brings |cdf(quantile(p)) - p| to rounding
/// level. Throws DomainError unless 0 < p < 1.
[[nodiscard]] double std_normal_quantile(double p);

/// 2 * (1 - cdf(|t|)), computed through the upper tail.
[[nodiscard]] double two_sided_p(double t) noexcept;

/// Two-sided critical value for a significance level in (0, 1].
/// Returns kLiteralCritical for alpha == 0.05 and quantile(1 - alpha/2) otherwise.
[[nodiscard]] double critical_value(double alpha);

}  // namespace sumnorm
