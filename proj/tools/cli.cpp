#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "table.hpp"
#include "sumnorm/dataset_io.hpp"
#include "sumnorm/errors.hpp"
#include "sumnorm/estimators.hpp"
#include "sumnorm/forest_plot.hpp"
#include "sumnorm/format.hpp"
#include "sumnorm/pipeline.hpp"
#include "sumnorm/sim/distributions.hpp"
#include "sumnorm/sim/experiments.hpp"
#include "sumnorm/sim/export.hpp"
#include "sumnorm/symmetry_tests.hpp"

namespace sumnorm::cli {

namespace fs = std::filesystem;

namespace {

struct InputOptions {
    std::vector<std::string> paths;
    std::string format = "auto";
    std::vector<std::string> outcomes;
};

struct StatOptions {
    double alpha = 0.05;
    double kappa_c = kKappaDerived;
};

struct MetaOptions {
    std::string out_dir = ".";
    std::string model = "random";
    bool hedges = false;
};

struct SimOptions {
    bool type1 = false;
    bool power = false;
    std::string scenario = "s1";
    std::vector<std::string> dists;
    std::uint64_t seed = 0;
    int replicates = 100000;
    std::vector<int> grid = sim::kDefaultGrid;
    unsigned threads = 0;
    std::string out_dir = ".";
};

struct DemoOptions {
    std::uint64_t seed = 0;
    std::vector<std::string> pairs;
    int repeats = 100;
};

// Thrown for configuration problems the option parser cannot see.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_input_options(CLI::App& cmd, InputOptions& in) {
    cmd.add_option("inputs", in.paths, "Dataset files (CSV or JSON)")->required()->check(CLI::ExistingFile);
    cmd.add_option("--format", in.format, "Input format: auto, csv or json")
        ->check(CLI::IsMember({"auto", "csv", "json"}))
        ->capture_default_str();
    cmd.add_option("--outcome", in.outcomes, "Only process these outcomes (repeatable)");
}

std::optional<double> parse_number(const std::string& s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return v;
}

std::string check_alpha(const std::string& s) {
    const auto v = parse_number(s);
    if (!v) return "alpha must be a number, got '" + s + "'";
    return *v > 0.0 && *v < 1.0 ? std::string() : "alpha must lie in (0, 1), got " + s;
}

std::string check_kappa(const std::string& s) {
    const auto v = parse_number(s);
    if (!v) return "kappa-c must be a number, got '" + s + "'";
    return *v == kKappaDerived || *v == kKappaTabulated ? std::string() : "kappa-c must be 10.14 or 10.5, got " + s;
}

void add_stat_options(CLI::App& cmd, StatOptions& st) {
    cmd.add_option("--alpha", st.alpha, "Significance level in (0, 1)")
        ->envname("SUMNORM_ALPHA")
        ->capture_default_str()
        ->check(CLI::Validator([](std::string& s) { return check_alpha(s); }, "(0,1)"));
    cmd.add_option("--kappa-c", st.kappa_c, "Constant C in the S3 coefficient: 10.14 or 10.5")
        ->envname("SUMNORM_KAPPA_C")
        ->capture_default_str()
        ->check(CLI::Validator([](std::string& s) { return check_kappa(s); }, "{10.14,10.5}"));
}

// CLI11 silently drops environment values that fail validation, which would
// fall back to the default. Those are configuration errors here.
std::optional<std::string> env_error(const CLI::App& cmd) {
    const std::pair<const char*, std::string (*)(const std::string&)> checks[] = {{"--alpha", check_alpha},
                                                                                   {"--kappa-c", check_kappa}};
    for (const auto& [name, check] : checks) {
        const auto* opt = cmd.get_option_no_throw(name);
        if (opt == nullptr || opt->count() > 0) continue;
        const char* value = std::getenv(opt->get_envname().c_str());
        if (value == nullptr || *value == '\0') continue;
        if (auto msg = check(value); !msg.empty()) return opt->get_envname() + ": " + msg;
    }
    return std::nullopt;
}

std::vector<Study> load(const InputOptions& in) {
    std::optional<DataFormat> format;
    if (in.format == "csv") format = DataFormat::Csv;
    if (in.format == "json") format = DataFormat::Json;
    std::vector<Study> all;
    for (const auto& p : in.paths) {
        auto studies = parse_studies(p, format);
        for (auto& s : studies) {
            if (in.outcomes.empty() ||
                std::find(in.outcomes.begin(), in.outcomes.end(), s.outcome) != in.outcomes.end()) {
                all.push_back(std::move(s));
            }
        }
    }
    if (all.empty()) throw ConfigError("no studies matched the requested outcome(s)");
    return all;
}

void print_warnings(const std::vector<Study>& studies, std::ostream& err) {
    for (const auto& s : studies) {
        for (const auto& w : s.warnings) {
            err << "warning: " << s.study_id << " (" << s.outcome << "): " << w << '\n';
        }
    }
}

template <class Fn>
void for_each_group(const Study& s, Fn&& fn) {
    for (const auto& g : s.case_groups) fn(g);
    for (const auto& g : s.control_groups) fn(g);
}

std::string slug(const std::string& text) {
    std::string out;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            out += static_cast<char>(std::tolower(c));
        } else if (!out.empty() && out.back() != '_') {
            out += '_';
        }
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out.empty() ? "outcome" : out;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path.string());
    f << content;
    if (!f) throw ConfigError("failed writing " + path.string());
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory " + dir.string());
}

Scenario scenario_from(const std::string& text) {
    const auto s = parse_scenario(text);
    if (!s || *s == Scenario::Direct) throw ConfigError("scenario must be s1, s2 or s3, got '" + text + "'");
    return *s;
}

// ---- test ------------------------------------------------------------------

int cmd_test(const InputOptions& in, const StatOptions& st, std::ostream& out, std::ostream& err) {
    const auto studies = load(in);
    print_warnings(studies, err);
    const TestOptions opts{st.alpha, st.kappa_c};
    Table table({"study", "outcome", "group", "arm", "n", "scenario", "statistic", "p", "decision"});
    for (const auto& s : studies) {
        for_each_group(s, [&](const GroupRecord& g) {
            std::vector<std::string> row{s.study_id, s.outcome, g.group_label, std::string(to_string(g.arm)),
                                         std::to_string(g.n)};
            try {
                const Scenario sc = classify_scenario(g);
                row.emplace_back(to_string(sc));
                const auto r = run_test(g, opts);
                if (!r) {
                    row.insert(row.end(), {"NS", "NS", "NS"});
                } else {
                    row.push_back(format_statistic(r->statistic));
                    row.push_back(format_p_value(r->p_value));
                    row.emplace_back(r->reject ? "reject" : "accept");
                }
            } catch (const std::exception& e) {
                row.resize(5);
                row.insert(row.end(), {"-", "-", "-", std::string("error: ") + e.what()});
            }
            table.add(std::move(row));
        });
    }
    table.print(out);
    return kExitOk;
}

// ---- estimate --------------------------------------------------------------

int cmd_estimate(const InputOptions& in, const StatOptions& st, std::ostream& out, std::ostream& err) {
    const auto studies = load(in);
    print_warnings(studies, err);
    const TestOptions opts{st.alpha, st.kappa_c};
    Table table({"study", "outcome", "group", "arm", "n", "scenario", "mean", "sd", "source", "symmetry"});
    for (const auto& s : studies) {
        for_each_group(s, [&](const GroupRecord& g) {
            std::vector<std::string> row{s.study_id, s.outcome, g.group_label, std::string(to_string(g.arm)),
                                         std::to_string(g.n)};
            try {
                const Scenario sc = classify_scenario(g);
                row.emplace_back(to_string(sc));
                const auto m = estimate_moments(g);
                row.push_back(format_fixed(m.mean, 4));
                row.push_back(format_fixed(m.sd, 4));
                row.emplace_back(m.source == MomentSource::Reported ? "reported" : "estimated");
                std::string verdict = "NS";
                try {
                    if (const auto r = run_test(g, opts)) {
                        verdict = r->reject ? "rejected (p " + format_p_value(r->p_value) + ")" : "accepted";
                    }
                } catch (const std::exception& e) {
                    verdict = std::string("untestable: ") + e.what();
                }
                row.push_back(verdict);
            } catch (const std::exception& e) {
                row.resize(5);
                row.insert(row.end(), {"-", "-", "-", "-", std::string("error: ") + e.what()});
            }
            table.add(std::move(row));
        });
    }
    table.print(out);
    return kExitOk;
}

// ---- meta ------------------------------------------------------------------

int cmd_meta(const InputOptions& in, const StatOptions& st, const MetaOptions& mo, std::ostream& out,
             std::ostream& err) {
    const auto model = parse_pool_model(mo.model);
    if (!model) throw ConfigError("model must be fixed or random, got '" + mo.model + "'");
    const auto studies = load(in);
    print_warnings(studies, err);

    PipelineOptions opts;
    opts.alpha = st.alpha;
    opts.kappa_constant = st.kappa_c;
    opts.model = *model;
    opts.hedges_correction = mo.hedges;
    const auto reports = run_pipelines(studies, opts);

    const fs::path dir(mo.out_dir);
    ensure_dir(dir);
    write_file(dir / "report.json", report_to_json(reports));
    for (const auto& r : reports) {
        std::string line = r.outcome + ": ";
        if (r.pooled) {
            const auto& p = *r.pooled;
            line += "k=" + std::to_string(r.included_count()) + " SMD " + format_fixed(p.smd, 3) + " [" +
                    format_fixed(p.ci_low, 3) + ", " + format_fixed(p.ci_high, 3) + "] Q=" +
                    format_fixed(p.q_stat, 2) + " df=" + std::to_string(p.q_df) + " p" +
                    (p.q_p < 0.001 ? "" : "=") + format_p_value(p.q_p) + " I2=" + format_fixed(p.i_squared, 1) + "% tau2=" +
                    format_fixed(p.tau_squared, 4);
            const fs::path svg = dir / ("forest_" + slug(r.outcome) + ".svg");
            write_file(svg, forest_svg(r));
        } else {
            line += "not pooled (" + r.pool_omitted_reason + ")";
            err << "warning: outcome '" << r.outcome << "': " << r.pool_omitted_reason
                << "; no forest plot written\n";
        }
        const auto excluded = r.exclusions();
        line += "; excluded: ";
        if (excluded.empty()) line += "none";
        for (std::size_t i = 0; i < excluded.size(); ++i) {
            if (i) line += ", ";
            line += excluded[i].study_id;
        }
        out << line << '\n';
    }
    return kExitOk;
}

// ---- simulate --------------------------------------------------------------

std::string point_verdict(const sim::ExperimentResult& r, const sim::CurvePoint& p, bool type1) {
    if (type1) {
        if (p.n < 200) return "not gated (n < 200)";
        return p.rate >= 0.03 && p.rate <= 0.07 ? "ok [0.03, 0.07]" : "OUT OF BAND [0.03, 0.07]";
    }
    if (r.dist.family == sim::Family::Normal) return "null alternative";
    int checkpoint = 0;
    double floor = 0.0;
    switch (r.scenario) {
        case Scenario::S1: checkpoint = 100; floor = 0.95; break;
        case Scenario::S2: checkpoint = 400; floor = 0.90; break;
        case Scenario::S3: checkpoint = 100; floor = 0.95; break;
        case Scenario::Direct: break;
    }
    if (p.n != checkpoint) return "-";
    return (p.rate >= floor ? "ok >= " : "BELOW ") + format_fixed(floor, 2);
}

int cmd_simulate(const StatOptions& st, const SimOptions& so, std::ostream& out) {
    if (so.type1 == so.power) throw ConfigError("choose exactly one of --type1 and --power");
    const Scenario scenario = scenario_from(so.scenario);

    sim::ExperimentConfig cfg;
    cfg.n_grid = so.grid;
    cfg.replicates = so.replicates;
    cfg.alpha = st.alpha;
    cfg.seed = so.seed;
    cfg.kappa_constant = st.kappa_c;
    cfg.threads = so.threads;

    std::vector<sim::ExperimentResult> results;
    if (so.type1) {
        if (!so.dists.empty()) throw ConfigError("--dist applies to --power only");
        results.push_back(sim::type1_curve(scenario, cfg));
    } else {
        std::vector<sim::DistSpec> dists;
        if (so.dists.empty()) dists = sim::power_alternatives();
        for (const auto& d : so.dists) dists.push_back(sim::parse_dist(d));
        for (const auto& d : dists) results.push_back(sim::power_curve(scenario, d, cfg));
    }

    const std::string kind = so.type1 ? "type1" : "power";
    const std::string stem = kind + "_" + slug(std::string(to_string(scenario)));
    const fs::path dir(so.out_dir);
    ensure_dir(dir);
    write_file(dir / (stem + ".csv"), sim::experiment_csv(results));
    const std::string title =
        (so.type1 ? "Type I error, scenario " : "Power, scenario ") + std::string(to_string(scenario));
    write_file(dir / (stem + ".svg"),
               sim::experiment_svg(results, title,
                                   so.type1 ? std::optional<std::pair<double, double>>({0.03, 0.07})
                                            : std::nullopt));

    Table table({"scenario", "dist", "n", "rate", "se", "verdict"});
    for (const auto& r : results) {
        for (const auto& p : r.points) {
            table.add({std::string(to_string(r.scenario)), sim::to_string(r.dist), std::to_string(p.n),
                       format_fixed(p.rate, 4), format_fixed(p.se, 4), point_verdict(r, p, so.type1)});
        }
    }
    table.print(out);
    if (so.power) {
        for (const auto& r : results) {
            std::vector<double> rates;
            for (const auto& p : r.points) rates.push_back(p.rate);
            const double r2 = sim::isotonic_r2(rates);
            out << "isotonic R^2 " << sim::to_string(r.dist) << ": " << format_fixed(r2, 4)
                << (r.dist.family == sim::Family::Normal ? " (null alternative, not gated)"
                    : r2 >= 0.95                         ? " ok >= 0.95"
                                                         : " BELOW 0.95")
                << '\n';
        }
    }
    out << "wrote " << (dir / (stem + ".csv")).string() << " and " << (dir / (stem + ".svg")).string() << '\n';
    return kExitOk;
}

// ---- demo ------------------------------------------------------------------

int cmd_demo(const DemoOptions& d, std::ostream& out) {
    if (d.repeats < 1) throw ConfigError("--repeats must be >= 1");
    std::vector<sim::DemoPair> pairs;
    const auto defaults = sim::demo_pairs();
    if (d.pairs.empty()) pairs = defaults;
    for (const auto& name : d.pairs) {
        if (name == "all") {
            pairs.insert(pairs.end(), defaults.begin(), defaults.end());
            continue;
        }
        if (name == "normal") {
            pairs.push_back(sim::normal_demo_pair());
            continue;
        }
        const auto it = std::find_if(defaults.begin(), defaults.end(),
                                     [&](const sim::DemoPair& p) { return p.name == name; });
        if (it == defaults.end()) {
            throw ConfigError("unknown pair '" + name +
                              "' (expected lognormal, chisquare, exponential, beta, weibull, normal or all)");
        }
        pairs.push_back(*it);
    }

    Table table({"pair", "case", "control", "n", "d_true", "d_estimated", "mean |gap|", "|d_true| > |d_est|"});
    std::vector<sim::DistortionSummary> rows;
    for (const auto& p : pairs) {
        const auto s = sim::run_distortion_pair(p, d.repeats, d.seed);
        rows.push_back(s);
        table.add({p.name, sim::to_string(p.case_dist), sim::to_string(p.control_dist), std::to_string(p.n),
                   format_fixed(s.mean_d_true, 3), format_fixed(s.mean_d_estimated, 3),
                   format_fixed(s.mean_abs_gap, 3),
                   std::to_string(static_cast<int>(std::lround(s.attenuated_share * d.repeats))) + "/" +
                       std::to_string(d.repeats)});
    }
    table.print(out);
    const auto widest = std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return a.mean_abs_gap < b.mean_abs_gap;
    });
    out << "largest mean gap: " << widest->pair.name << " (" << format_fixed(widest->mean_abs_gap, 3) << ") over "
        << d.repeats << " repeats, seed " << d.seed << '\n';
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Normality screening of summary statistics, mean/SD estimation and meta-analysis", "sumnorm"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "sumnorm 0.1.0");

    InputOptions in;
    StatOptions st;
    MetaOptions mo;
    SimOptions so;
    DemoOptions dm;

    auto* test = app.add_subcommand("test", "Symmetry test for every group reported by quantiles");
    add_input_options(*test, in);
    add_stat_options(*test, st);

    auto* estimate = app.add_subcommand("estimate", "Sample mean and SD for every group");
    add_input_options(*estimate, in);
    add_stat_options(*estimate, st);

    auto* meta = app.add_subcommand("meta", "Screen, estimate, compute effect sizes and pool per outcome");
    add_input_options(*meta, in);
    add_stat_options(*meta, st);
    meta->add_option("-o,--out", mo.out_dir, "Directory for report.json and forest_<outcome>.svg")
        ->capture_default_str();
    meta->add_option("--model", mo.model, "Pooling model: fixed or random")
        ->check(CLI::IsMember({"fixed", "random"}))
        ->capture_default_str();
    meta->add_flag("--hedges", mo.hedges, "Apply the Hedges small-sample correction to each d");

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo type I error or power curve");
    add_stat_options(*simulate, st);
    simulate->add_flag("--type1", so.type1, "Simulate under N(0,1) data");
    simulate->add_flag("--power", so.power, "Simulate under the --dist alternatives");
    simulate->add_option("--scenario", so.scenario, "s1, s2 or s3")->capture_default_str();
    simulate->add_option("--dist", so.dists,
                         "Alternative such as lognormal:0,1 (repeatable; default: the five skewed alternatives)");
    simulate->add_option("--seed", so.seed, "64-bit seed")->envname("SUMNORM_SEED")->required();
    simulate->add_option("--replicates", so.replicates, "Replicates per sample size (>= 1000)")
        ->capture_default_str();
    simulate->add_option("--grid", so.grid, "Sample sizes, comma separated")->delimiter(',')->capture_default_str();
    simulate->add_option("--threads", so.threads, "Worker threads; 0 uses all cores")->capture_default_str();
    simulate->add_option("-o,--out", so.out_dir, "Directory for the CSV and SVG")->capture_default_str();

    auto* demo = app.add_subcommand("demo", "Effect-size distortion when skewed data are summarized");
    demo->add_option("--seed", dm.seed, "64-bit seed")->envname("SUMNORM_SEED")->required();
    demo->add_option("--pairs", dm.pairs,
                     "Pairs to run: lognormal, chisquare, exponential, beta, weibull, normal, all")
        ->delimiter(',');
    demo->add_option("--repeats", dm.repeats, "Seeded repeats per pair")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    for (const auto* sub : app.get_subcommands()) {
        if (const auto problem = env_error(*sub)) {
            err << "error: " << *problem << '\n';
            return kExitUsage;
        }
    }

    try {
        if (*test) return cmd_test(in, st, out, err);
        if (*estimate) return cmd_estimate(in, st, out, err);
        if (*meta) return cmd_meta(in, st, mo, out, err);
        if (*simulate) return cmd_simulate(st, so, out);
        if (*demo) return cmd_demo(dm, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"sumnorm"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace sumnorm::cli
