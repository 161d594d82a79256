#pragma once

#include <string>

#include "sumnorm/pipeline.hpp"

namespace sumnorm {

/// Standalone SVG forest plot of one pipeline report: a row per included
/// study (square area proportional to weight, 95% CI whisker), the pooled
/// diamond and a heterogeneity line (Q, df, p, I^2, tau^2). Output is a pure
/// function of the report. Throws PreconditionError when nothing was pooled.
[[nodiscard]] std::string forest_svg(const PipelineReport& report);

}  // namespace sumnorm
