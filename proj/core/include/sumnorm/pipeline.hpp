#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sumnorm/effect_size.hpp"
#include "sumnorm/estimators.hpp"
#include "sumnorm/summary.hpp"
#include "sumnorm/symmetry_tests.hpp"

namespace sumnorm {

struct PipelineOptions {
    double alpha = 0.05;
    double kappa_constant = kKappaDerived;
    PoolModel model = PoolModel::Random;
    bool hedges_correction = false;
};

struct GroupOutcome {
    GroupRecord group;
    std::optional<Scenario> scenario;
    /// Set when the group carried a quantile summary and its test ran.
    std::optional<TestResult> test;
    /// Set when classification, testing or estimation threw.
    std::optional<std::string> error;
    /// Set for groups of included studies.
    std::optional<EstimatedMoments> moments;
};

struct StudyOutcome {
    std::string study_id;
    std::vector<GroupOutcome> groups;
    std::vector<std::string> warnings;
    bool included = false;
    std::string exclusion_reason;
    /// Arm moments after subgroup combination.
    std::optional<GroupMoments> case_moments;
    std::optional<GroupMoments> control_moments;
    std::optional<EffectSize> effect;
    /// Normalized pooling weight; 0 for excluded studies.
    double weight = 0.0;
};

struct Exclusion {
    std::string study_id;
    std::string reason;
};

struct PipelineReport {
    std::string outcome;
    PipelineOptions options;
    std::vector<StudyOutcome> studies;
    std::optional<PooledResult> pooled;
    /// Why `pooled` is empty, if it is.
    std::string pool_omitted_reason;

    [[nodiscard]] std::vector<Exclusion> exclusions() const;
    [[nodiscard]] std::vector<std::string> included_ids() const;
    [[nodiscard]] std::size_t included_count() const;
};

/// Screen -> estimate -> effect size -> pool for one outcome. A study is
/// excluded iff any group with a quantile summary rejects symmetry (or cannot
/// be tested / estimated). Case and control subgroups within a study are
/// combined before the effect size. Throws PreconditionError when the studies
/// do not all share one outcome.
[[nodiscard]] PipelineReport run_pipeline(std::span<const Study> studies,
                                          const PipelineOptions& options = {});

/// Splits studies by outcome (first-appearance order) and runs each.
[[nodiscard]] std::vector<PipelineReport> run_pipelines(std::span<const Study> studies,
                                                        const PipelineOptions& options = {});

/// JSON document mirroring PipelineReport field names.
[[nodiscard]] std::string report_to_json(std::span<const PipelineReport> reports);

}  // namespace sumnorm
