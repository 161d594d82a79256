#pragma once

#include <string>

namespace sumnorm {

/// Fixed-point rendering with `digits` decimals; "-0.000" collapses to "0.000".
[[nodiscard]] std::string format_fixed(double value, int digits);

/// Test statistic as printed in result tables: 3 decimals, or scientific
/// notation ("2.205e-15") for nonzero |t| < 1e-6.
[[nodiscard]] std::string format_statistic(double t);

/// p-value with 3 decimals, floored at "<0.001".
[[nodiscard]] std::string format_p_value(double p);

}  // namespace sumnorm
