#include "sumnorm/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sumnorm/errors.hpp"
#include "sumnorm/format.hpp"

namespace sumnorm {

namespace {

GroupMoments to_moments(const GroupRecord& g, const EstimatedMoments& m) { return {m.mean, m.sd, g.n}; }

// Partial GroupRecord carrying estimated moments, so combine_subgroups can pool it.
GroupRecord with_moments(const GroupRecord& g, const EstimatedMoments& m) {
    GroupRecord out = g;
    out.summary.reset();
    out.reported_mean = m.mean;
    out.reported_sd = m.sd;
    return out;
}

GroupMoments arm_moments(const std::vector<const GroupOutcome*>& arm) {
    if (arm.size() == 1) {
        return to_moments(arm.front()->group, *arm.front()->moments);
    }
    std::vector<GroupRecord> parts;
    parts.reserve(arm.size());
    for (const auto* g : arm) parts.push_back(with_moments(g->group, *g->moments));
    const GroupRecord merged = combine_subgroups(parts);
    return {*merged.reported_mean, *merged.reported_sd, merged.n};
}

StudyOutcome screen_study(const Study& study, const PipelineOptions& opt) {
    StudyOutcome out;
    out.study_id = study.study_id;
    out.warnings = study.warnings;

    const TestOptions test_opt{opt.alpha, opt.kappa_constant};
    std::vector<std::string> rejected;
    std::vector<std::string> failed;

    const auto visit = [&](const GroupRecord& g) {
        GroupOutcome go;
        go.group = g;
        const auto violations = validate(g);
        if (!violations.empty()) {
            go.error = "invalid record: " + violations.front().field + ": " + violations.front().rule;
            failed.push_back(g.group_label);
        } else {
            try {
                go.scenario = classify_scenario(g);
                go.test = run_test(g, test_opt);
                if (go.test && go.test->reject) {
                    rejected.push_back(g.group_label + " (" + std::string(to_string(*go.scenario)) +
                                       " " + format_statistic(go.test->statistic) +
                                       ", p " + format_p_value(go.test->p_value) + ")");
                }
            } catch (const std::exception& e) {
                go.error = e.what();
                failed.push_back(g.group_label);
            }
        }
        out.groups.push_back(std::move(go));
    };
    for (const auto& g : study.case_groups) visit(g);
    for (const auto& g : study.control_groups) visit(g);

    const auto join = [](const std::vector<std::string>& items) {
        std::string s;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i) s += "; ";
            s += items[i];
        }
        return s;
    };

    if (study.case_groups.empty() || study.control_groups.empty()) {
        out.exclusion_reason = "study lacks a case or a control group";
        return out;
    }
    if (!failed.empty()) {
        out.exclusion_reason = "untestable group(s): " + join(failed);
        return out;
    }
    if (!rejected.empty()) {
        out.exclusion_reason = "symmetry rejected: " + join(rejected);
        return out;
    }

    try {
        std::vector<const GroupOutcome*> cases;
        std::vector<const GroupOutcome*> controls;
        for (auto& go : out.groups) {
            go.moments = estimate_moments(go.group);
            (go.group.arm == Arm::Case ? cases : controls).push_back(&go);
        }
        out.case_moments = arm_moments(cases);
        out.control_moments = arm_moments(controls);
        out.effect = cohen_d(*out.case_moments, *out.control_moments, opt.hedges_correction);
    } catch (const std::exception& e) {
        out.effect.reset();
        out.exclusion_reason = std::string("effect size unavailable: ") + e.what();
        return out;
    }
    out.included = true;
    return out;
}

}  // namespace

std::vector<Exclusion> PipelineReport::exclusions() const {
    std::vector<Exclusion> out;
    for (const auto& s : studies) {
        if (!s.included) out.push_back({s.study_id, s.exclusion_reason});
    }
    return out;
}

std::vector<std::string> PipelineReport::included_ids() const {
    std::vector<std::string> out;
    for (const auto& s : studies) {
        if (s.included) out.push_back(s.study_id);
    }
    return out;
}

std::size_t PipelineReport::included_count() const {
    return static_cast<std::size_t>(
        std::count_if(studies.begin(), studies.end(), [](const auto& s) { return s.included; }));
}

PipelineReport run_pipeline(std::span<const Study> studies, const PipelineOptions& options) {
    PipelineReport report;
    report.options = options;
    if (!studies.empty()) {
        report.outcome = studies.front().outcome;
    }
    for (const auto& s : studies) {
        if (s.outcome != report.outcome) {
            throw PreconditionError("run_pipeline: mixed outcomes '" + report.outcome + "' and '" +
                                    s.outcome + "'; use run_pipelines");
        }
    }

    std::vector<EffectSize> effects;
    std::vector<std::size_t> owners;
    for (const auto& s : studies) {
        report.studies.push_back(screen_study(s, options));
        if (report.studies.back().included) {
            effects.push_back(*report.studies.back().effect);
            owners.push_back(report.studies.size() - 1);
        }
    }
    if (effects.empty()) {
        report.pool_omitted_reason = studies.empty() ? "no studies" : "all studies excluded";
        return report;
    }
    report.pooled = pool(effects, options.model);
    for (std::size_t i = 0; i < owners.size(); ++i) {
        report.studies[owners[i]].weight = report.pooled->weights[i];
    }
    return report;
}

std::vector<PipelineReport> run_pipelines(std::span<const Study> studies,
                                          const PipelineOptions& options) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<Study>> by_outcome;
    for (const auto& s : studies) {
        auto [it, fresh] = by_outcome.try_emplace(s.outcome);
        if (fresh) order.push_back(s.outcome);
        it->second.push_back(s);
    }
    std::vector<PipelineReport> out;
    out.reserve(order.size());
    for (const auto& o : order) {
        out.push_back(run_pipeline(by_outcome[o], options));
    }
    return out;
}

}  // namespace sumnorm
