#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sumnorm/summary.hpp"

namespace sumnorm {

/// One row per group. Header (any column order):
///   study_id,outcome,arm,group_label,n,mean,sd,min,q1,median,q3,max
/// Empty cells and the literal "NS" mean "not reported". Lines starting with
/// '#' are comments. The JSON form is an array of objects with the same keys.
enum class DataFormat { Csv, Json };

inline constexpr std::string_view kCsvHeader =
    "study_id,outcome,arm,group_label,n,mean,sd,min,q1,median,q3,max";

/// Picks the format from the file extension (.json -> Json, otherwise Csv).
[[nodiscard]] DataFormat format_from_path(const std::filesystem::path& path);

/// Reads a dataset file. One Study per (study_id, outcome), in order of first
/// appearance. Group invariant violations are attached as Study::warnings.
/// Throws ParseError on malformed input, duplicate (study, group, outcome)
/// keys, or an empty file.
[[nodiscard]] std::vector<Study> parse_studies(const std::filesystem::path& path,
                                               std::optional<DataFormat> format = std::nullopt);

[[nodiscard]] std::vector<Study> parse_studies_csv(std::string_view text);
[[nodiscard]] std::vector<Study> parse_studies_json(std::string_view text);

/// Inverse of the parsers: case rows then control rows per study. Numbers use
/// the shortest representation that round-trips.
[[nodiscard]] std::string serialize_csv(std::span<const Study> studies);
[[nodiscard]] std::string serialize_json(std::span<const Study> studies);

}  // namespace sumnorm
