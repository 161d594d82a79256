#include <json.hpp>

#include "sumnorm/pipeline.hpp"

namespace sumnorm {

namespace {

using ojson = nlohmann::ordered_json;

ojson opt(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

ojson to_json(const TestResult& t) {
    return {{"scenario", to_string(t.scenario)}, {"statistic", t.statistic},
            {"p_value", t.p_value},              {"reject", t.reject},
            {"alpha", t.alpha},                  {"critical", t.critical},
            {"n", t.n}};
}

ojson to_json(const EstimatedMoments& m) {
    return {{"mean", m.mean},
            {"sd", m.sd},
            {"source", m.source == MomentSource::Reported ? "reported" : "estimated"},
            {"scenario", m.scenario ? ojson(to_string(*m.scenario)) : ojson(nullptr)}};
}

ojson to_json(const GroupMoments& m) { return {{"mean", m.mean}, {"sd", m.sd}, {"n", m.n}}; }

ojson to_json(const EffectSize& e) {
    return {{"smd", e.smd},         {"se", e.se},         {"ci_low", e.ci_low},
            {"ci_high", e.ci_high}, {"n_case", e.n_case}, {"n_control", e.n_control}};
}

ojson to_json(const PooledResult& p) {
    return {{"model", to_string(p.model)}, {"smd", p.smd},
            {"se", p.se},                  {"ci_low", p.ci_low},
            {"ci_high", p.ci_high},        {"q_stat", p.q_stat},
            {"q_df", p.q_df},              {"q_p", p.q_p},
            {"i_squared", p.i_squared},    {"tau_squared", p.tau_squared},
            {"weights", p.weights}};
}

ojson to_json(const GroupOutcome& g) {
    ojson summary = nullptr;
    if (g.group.summary) {
        const auto& s = *g.group.summary;
        summary = {{"n", s.n},        {"min", opt(s.min)}, {"q1", opt(s.q1)},
                   {"median", s.median}, {"q3", opt(s.q3)}, {"max", opt(s.max)}};
    }
    return {{"group_label", g.group.group_label},
            {"arm", to_string(g.group.arm)},
            {"n", g.group.n},
            {"reported_mean", opt(g.group.reported_mean)},
            {"reported_sd", opt(g.group.reported_sd)},
            {"summary", summary},
            {"scenario", g.scenario ? ojson(to_string(*g.scenario)) : ojson(nullptr)},
            {"test", g.test ? to_json(*g.test) : ojson(nullptr)},
            {"error", g.error ? ojson(*g.error) : ojson(nullptr)},
            {"moments", g.moments ? to_json(*g.moments) : ojson(nullptr)}};
}

ojson to_json(const StudyOutcome& s) {
    ojson groups = ojson::array();
    for (const auto& g : s.groups) groups.push_back(to_json(g));
    return {{"study_id", s.study_id},
            {"included", s.included},
            {"exclusion_reason", s.included ? ojson(nullptr) : ojson(s.exclusion_reason)},
            {"warnings", s.warnings},
            {"groups", groups},
            {"case_moments", s.case_moments ? to_json(*s.case_moments) : ojson(nullptr)},
            {"control_moments", s.control_moments ? to_json(*s.control_moments) : ojson(nullptr)},
            {"effect", s.effect ? to_json(*s.effect) : ojson(nullptr)},
            {"weight", s.weight}};
}

ojson to_json(const PipelineReport& r) {
    ojson studies = ojson::array();
    for (const auto& s : r.studies) studies.push_back(to_json(s));
    ojson exclusions = ojson::array();
    for (const auto& e : r.exclusions()) {
        exclusions.push_back({{"study_id", e.study_id}, {"reason", e.reason}});
    }
    return {{"outcome", r.outcome},
            {"options",
             {{"alpha", r.options.alpha},
              {"kappa_constant", r.options.kappa_constant},
              {"model", to_string(r.options.model)},
              {"hedges_correction", r.options.hedges_correction}}},
            {"studies", studies},
            {"exclusions", exclusions},
            {"pooled", r.pooled ? to_json(*r.pooled) : ojson(nullptr)},
            {"pool_omitted_reason",
             r.pooled ? ojson(nullptr) : ojson(r.pool_omitted_reason)}};
}

}  // namespace

std::string report_to_json(std::span<const PipelineReport> reports) {
    ojson doc = ojson::array();
    for (const auto& r : reports) doc.push_back(to_json(r));
    return ojson{{"reports", doc}}.dump(2) + '\n';
}

}  // namespace sumnorm
