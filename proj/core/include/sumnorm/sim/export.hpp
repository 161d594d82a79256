#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>

#include "sumnorm/sim/experiments.hpp"

namespace sumnorm::sim {

inline constexpr const char* kExperimentCsvHeader = "n,rate,se,replicates,scenario,family,params,seed";

/// One row per curve point, header first.
[[nodiscard]] std::string experiment_csv(std::span<const ExperimentResult> results);

/// Line plot of rate against n with one polyline per result. `band` draws a
/// shaded horizontal acceptance band, e.g. {0.03, 0.07} for type I curves.
[[nodiscard]] std::string experiment_svg(std::span<const ExperimentResult> results, const std::string& title,
                                         std::optional<std::pair<double, double>> band = std::nullopt);

}  // namespace sumnorm::sim
