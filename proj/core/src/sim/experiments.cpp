#include "sumnorm/sim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "sumnorm/effect_size.hpp"
#include "sumnorm/errors.hpp"
#include "sumnorm/estimators.hpp"
#include "sumnorm/normal.hpp"

namespace sumnorm::sim {

namespace {

// 0-based index of X([np]).
std::size_t order_index(std::size_t n, std::size_t num, std::size_t den) {
    const std::size_t k = n * num / den;
    return (k < 1 ? 1 : k) - 1;
}

// Runs fn(begin, end) over [0, count) on up to `threads` workers. Each index
// is written by exactly one worker, so the caller's reduction order is fixed.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count / 256, 1)));
    if (threads <= 1) {
        fn(std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& th : pool) th.join();
}

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double covariance(std::span<const double> x, std::span<const double> y) {
    const double mx = mean_of(x);
    const double my = mean_of(y);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
    return s / static_cast<double>(x.size() - 1);
}

struct Coefficient {
    Scenario scenario;
    double value;
};

Coefficient coefficient_for(Scenario s, int n, double kappa_c) {
    switch (s) {
        case Scenario::S1: return {s, coeff_tau(n)};
        case Scenario::S2: return {s, coeff_phi(n)};
        case Scenario::S3: return {s, coeff_kappa(n, kappa_c)};
        case Scenario::Direct: break;
    }
    throw DomainError("simulation needs scenario s1, s2 or s3");
}

// Same contrasts as statistic_s1/s2/s3 with the coefficient hoisted out of
// the replicate loop. A zero denominator (impossible for continuous data)
// counts as no rejection.
double statistic(const Coefficient& c, const QuantileSummary& q) {
    const double a = *q.min, b = *q.max, m = q.median;
    switch (c.scenario) {
        case Scenario::S1: {
            const double den = b - a;
            return den > 0.0 ? c.value * (a + b - 2.0 * m) / den : 0.0;
        }
        case Scenario::S2: {
            const double den = *q.q3 - *q.q1;
            return den > 0.0 ? c.value * (*q.q1 + *q.q3 - 2.0 * m) / den : 0.0;
        }
        default: {
            const double den = b - a + *q.q3 - *q.q1;
            return den > 0.0 ? c.value * (a + b + *q.q1 + *q.q3 - 4.0 * m) / den : 0.0;
        }
    }
}

ExperimentResult rejection_curve(Scenario scenario, const DistSpec& dist, const ExperimentConfig& config) {
    validate(dist);
    if (scenario == Scenario::Direct) throw DomainError("simulation needs scenario s1, s2 or s3");
    if (config.replicates < 1000) {
        throw DomainError("replicates must be >= 1000, got " + std::to_string(config.replicates));
    }
    if (config.n_grid.empty()) throw DomainError("n grid is empty");
    for (int n : config.n_grid) {
        if (n < scenario_min_n(scenario)) {
            throw DomainError("n = " + std::to_string(n) + " is below the minimum " +
                              std::to_string(scenario_min_n(scenario)) + " for scenario " +
                              std::string(to_string(scenario)));
        }
    }
    const double critical = critical_value(config.alpha);

    ExperimentResult result;
    result.scenario = scenario;
    result.dist = dist;
    result.replicates = config.replicates;
    result.seed = config.seed;
    result.alpha = config.alpha;

    const auto reps = static_cast<std::size_t>(config.replicates);
    std::vector<unsigned char> rejected(reps);
    for (int n : config.n_grid) {
        const Coefficient coeff = coefficient_for(scenario, n, config.kappa_constant);
        parallel_for(reps, config.threads, [&](std::size_t begin, std::size_t end) {
            std::vector<double> buf(static_cast<std::size_t>(n));
            for (std::size_t r = begin; r < end; ++r) {
                Engine engine(derive_seed(config.seed, static_cast<std::uint64_t>(n), r));
                draw(dist, engine, buf);
                const QuantileSummary q = summarize_unsorted(buf);
                rejected[r] = std::fabs(statistic(coeff, q)) > critical ? 1 : 0;
            }
        });
        const auto hits = std::count(rejected.begin(), rejected.end(), 1);
        const double rate = static_cast<double>(hits) / static_cast<double>(reps);
        result.points.push_back({n, rate, std::sqrt(rate * (1.0 - rate) / static_cast<double>(reps))});
    }
    return result;
}

// Runs `replicates` N(0, sigma^2) samples of size n and hands each summary
// to `record(r, summary)`.
template <class Record>
void normal_replicates(int n, int replicates, std::uint64_t seed, double sigma, unsigned threads,
                       Record&& record) {
    const DistSpec dist = normal(0.0, sigma);
    parallel_for(static_cast<std::size_t>(replicates), threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> buf(static_cast<std::size_t>(n));
        for (std::size_t r = begin; r < end; ++r) {
            Engine engine(derive_seed(seed, static_cast<std::uint64_t>(n), r));
            draw(dist, engine, buf);
            record(r, summarize_unsorted(buf));
        }
    });
}

}  // namespace

QuantileSummary summarize(std::span<const double> sorted) {
    const std::size_t n = sorted.size();
    if (n < 4) throw DomainError("summarize: n >= 4 required, got " + std::to_string(n));
    QuantileSummary q;
    q.n = static_cast<int>(n);
    q.min = sorted.front();
    q.max = sorted.back();
    q.q1 = sorted[order_index(n, 1, 4)];
    q.median = sorted[order_index(n, 1, 2)];
    q.q3 = sorted[order_index(n, 3, 4)];
    return q;
}

QuantileSummary summarize_unsorted(std::span<double> v) {
    const std::size_t n = v.size();
    if (n < 4) throw DomainError("summarize: n >= 4 required, got " + std::to_string(n));
    const std::size_t i1 = order_index(n, 1, 4);
    const std::size_t i2 = order_index(n, 1, 2);
    const std::size_t i3 = order_index(n, 3, 4);
    auto first = v.begin();
    std::nth_element(first, first + static_cast<std::ptrdiff_t>(i2), v.end());
    if (i1 < i2) std::nth_element(first, first + static_cast<std::ptrdiff_t>(i1), first + static_cast<std::ptrdiff_t>(i2));
    if (i3 > i2) {
        std::nth_element(first + static_cast<std::ptrdiff_t>(i2) + 1, first + static_cast<std::ptrdiff_t>(i3), v.end());
    }
    QuantileSummary q;
    q.n = static_cast<int>(n);
    q.q1 = v[i1];
    q.median = v[i2];
    q.q3 = v[i3];
    q.min = i1 == 0 ? v[0] : *std::min_element(first, first + static_cast<std::ptrdiff_t>(i1) + 1);
    q.max = *std::max_element(first + static_cast<std::ptrdiff_t>(i3), v.end());
    return q;
}

int scenario_min_n(Scenario s) {
    switch (s) {
        case Scenario::S1:
        case Scenario::S2:
        case Scenario::S3: return 4;
        case Scenario::Direct: break;
    }
    throw DomainError("simulation needs scenario s1, s2 or s3");
}

ExperimentResult type1_curve(Scenario scenario, const ExperimentConfig& config) {
    return rejection_curve(scenario, normal(0.0, 1.0), config);
}

ExperimentResult power_curve(Scenario scenario, const DistSpec& dist, const ExperimentConfig& config) {
    return rejection_curve(scenario, dist, config);
}

VarianceCheck midrange_variance_check(int n, int replicates, std::uint64_t seed, unsigned threads) {
    if (n < 10) throw DomainError("midrange_variance_check: n >= 10 required");
    if (replicates < 2) throw DomainError("midrange_variance_check: replicates >= 2 required");
    const auto reps = static_cast<std::size_t>(replicates);
    std::vector<double> contrast(reps), median(reps);
    normal_replicates(n, replicates, seed, 1.0, threads, [&](std::size_t r, const QuantileSummary& q) {
        contrast[r] = *q.min + *q.max - 2.0 * q.median;
        median[r] = q.median;
    });
    const double dn = static_cast<double>(n);
    VarianceCheck out;
    out.contrast_variance = covariance(contrast, contrast);
    out.contrast_theory = kPi * kPi / (6.0 * std::log(dn)) + kPi / dn;
    out.scaled_median_variance = dn * covariance(median, median);
    out.median_theory = kPi / 2.0;
    return out;
}

CovRatios cov_ratio_check(int n, int replicates, std::uint64_t seed, double sigma, unsigned threads) {
    if (n < 50) throw DomainError("cov_ratio_check: n >= 50 required");
    if (replicates < 2) throw DomainError("cov_ratio_check: replicates >= 2 required");
    if (!(sigma > 0.0)) throw DomainError("cov_ratio_check: sigma must be > 0");
    const auto reps = static_cast<std::size_t>(replicates);
    std::vector<double> ends(reps), median(reps), q1(reps);
    normal_replicates(n, replicates, seed, sigma, threads, [&](std::size_t r, const QuantileSummary& q) {
        ends[r] = *q.min + *q.max;
        median[r] = q.median;
        q1[r] = *q.q1;
    });
    return {covariance(ends, median) / covariance(median, median), covariance(ends, q1) / covariance(q1, q1)};
}

DistortionRecord skew_distortion_demo(const DistSpec& case_dist, const DistSpec& control_dist, int n,
                                      std::uint64_t seed) {
    if (n < 4) throw DomainError("skew_distortion_demo: n >= 4 required");
    const auto moments_of = [n](const std::vector<double>& x) {
        const double m = mean_of(x);
        double ss = 0.0;
        for (double v : x) ss += (v - m) * (v - m);
        return GroupMoments{m, std::sqrt(ss / (n - 1)), n};
    };
    const auto estimated_of = [n](const std::vector<double>& x) {
        const QuantileSummary q = summarize(x);
        return GroupMoments{estimate_mean(q, Scenario::S3), estimate_sd(q, Scenario::S3), n};
    };
    const auto case_x = sample(case_dist, n, derive_seed(seed, 0, 1));
    const auto control_x = sample(control_dist, n, derive_seed(seed, 0, 2));

    DistortionRecord out;
    out.d_true = cohen_d(moments_of(case_x), moments_of(control_x)).smd;
    out.d_estimated = cohen_d(estimated_of(case_x), estimated_of(control_x)).smd;
    out.gap = out.d_true - out.d_estimated;
    return out;
}

DistortionSummary run_distortion_pair(const DemoPair& pair, int repeats, std::uint64_t seed) {
    if (repeats < 1) throw DomainError("repeats must be >= 1");
    DistortionSummary s;
    s.pair = pair;
    s.repeats = repeats;
    int attenuated = 0;
    for (int r = 0; r < repeats; ++r) {
        const auto rec = skew_distortion_demo(pair.case_dist, pair.control_dist, pair.n,
                                              derive_seed(seed, 0xD3E0, static_cast<std::uint64_t>(r)));
        s.mean_d_true += rec.d_true;
        s.mean_d_estimated += rec.d_estimated;
        s.mean_abs_gap += std::fabs(rec.gap);
        if (std::fabs(rec.d_true) > std::fabs(rec.d_estimated)) ++attenuated;
    }
    s.mean_d_true /= repeats;
    s.mean_d_estimated /= repeats;
    s.mean_abs_gap /= repeats;
    s.attenuated_share = static_cast<double>(attenuated) / repeats;
    return s;
}

std::vector<double> isotonic_fit(std::span<const double> y) {
    // Pool-adjacent-violators with unit weights.
    std::vector<double> level;
    std::vector<std::size_t> width;
    for (double v : y) {
        level.push_back(v);
        width.push_back(1);
        while (level.size() > 1 && level[level.size() - 2] > level.back()) {
            const std::size_t w = width[width.size() - 2] + width.back();
            const double merged =
                (level[level.size() - 2] * static_cast<double>(width[width.size() - 2]) +
                 level.back() * static_cast<double>(width.back())) / static_cast<double>(w);
            level.pop_back();
            width.pop_back();
            level.back() = merged;
            width.back() = w;
        }
    }
    std::vector<double> fit;
    for (std::size_t i = 0; i < level.size(); ++i) fit.insert(fit.end(), width[i], level[i]);
    return fit;
}

double isotonic_r2(std::span<const double> y) {
    if (y.empty()) throw DomainError("isotonic_r2: empty series");
    const auto fit = isotonic_fit(y);
    const double m = mean_of(y);
    double ss_tot = 0.0, ss_res = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        ss_tot += (y[i] - m) * (y[i] - m);
        ss_res += (y[i] - fit[i]) * (y[i] - fit[i]);
    }
    if (ss_tot == 0.0) return 1.0;
    return 1.0 - ss_res / ss_tot;
}

}  // namespace sumnorm::sim
