#include "sumnorm/effect_size.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "sumnorm/errors.hpp"

namespace sumnorm {

EffectSize cohen_d(const GroupMoments& c, const GroupMoments& k, bool hedges_correction) {
    if (c.n < 2 || k.n < 2) {
        throw PreconditionError("cohen_d: both groups need n >= 2");
    }
    if (!(c.sd >= 0.0) || !(k.sd >= 0.0)) {
        throw PreconditionError("cohen_d: standard deviations must be >= 0");
    }
    const double n1 = c.n;
    const double n2 = k.n;
    const double pooled_var = ((n1 - 1.0) * c.sd * c.sd + (n2 - 1.0) * k.sd * k.sd) / (n1 + n2 - 2.0);
    if (!(pooled_var > 0.0)) {
        throw DegenerateError("cohen_d: pooled standard deviation is zero");
    }
    double d = (c.mean - k.mean) / std::sqrt(pooled_var);
    if (hedges_correction) {
        d *= 1.0 - 3.0 / (4.0 * (n1 + n2) - 9.0);
    }
    EffectSize e;
    e.smd = d;
    e.se = std::sqrt((n1 + n2) / (n1 * n2) + d * d / (2.0 * (n1 + n2)));
    e.ci_low = d - kCiMultiplier * e.se;
    e.ci_high = d + kCiMultiplier * e.se;
    e.n_case = c.n;
    e.n_control = k.n;
    return e;
}

std::string_view to_string(PoolModel m) noexcept { return m == PoolModel::Fixed ? "fixed" : "random"; }

std::optional<PoolModel> parse_pool_model(std::string_view text) noexcept {
    if (text == "fixed") return PoolModel::Fixed;
    if (text == "random") return PoolModel::Random;
    return std::nullopt;
}

double chi_square_sf(double q, int df) {
    if (df <= 0) return 1.0;
    if (!(q > 0.0)) return 1.0;
    return boost::math::gamma_q(0.5 * df, 0.5 * q);
}

PooledResult pool(std::span<const EffectSize> effects, PoolModel model) {
    if (effects.empty()) {
        throw PreconditionError("pool: at least one effect size is required");
    }
    const std::size_t k = effects.size();
    std::vector<double> w(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (!(effects[i].se > 0.0)) {
            throw PreconditionError("pool: every effect needs se > 0");
        }
        w[i] = 1.0 / (effects[i].se * effects[i].se);
    }
    const double sw = std::accumulate(w.begin(), w.end(), 0.0);
    double fixed_mean = 0.0;
    for (std::size_t i = 0; i < k; ++i) fixed_mean += w[i] * effects[i].smd;
    fixed_mean /= sw;

    PooledResult r;
    r.model = model;
    r.q_df = static_cast<int>(k) - 1;
    for (std::size_t i = 0; i < k; ++i) {
        const double dev = effects[i].smd - fixed_mean;
        r.q_stat += w[i] * dev * dev;
    }
    r.q_p = chi_square_sf(r.q_stat, r.q_df);
    r.i_squared = r.q_df > 0 && r.q_stat > 0.0 ? std::max(0.0, (r.q_stat - r.q_df) / r.q_stat) * 100.0 : 0.0;
    if (r.q_df > 0) {
        double sw2 = 0.0;
        for (double wi : w) sw2 += wi * wi;
        r.tau_squared = std::max(0.0, (r.q_stat - r.q_df) / (sw - sw2 / sw));
    }

    std::vector<double> used = w;
    if (model == PoolModel::Random) {
        for (std::size_t i = 0; i < k; ++i) {
            used[i] = 1.0 / (effects[i].se * effects[i].se + r.tau_squared);
        }
    }
    const double su = std::accumulate(used.begin(), used.end(), 0.0);
    double mean = 0.0;
    for (std::size_t i = 0; i < k; ++i) mean += used[i] * effects[i].smd;
    mean /= su;

    r.smd = mean;
    r.se = 1.0 / std::sqrt(su);
    r.ci_low = mean - kCiMultiplier * r.se;
    r.ci_high = mean + kCiMultiplier * r.se;
    r.weights.resize(k);
    for (std::size_t i = 0; i < k; ++i) r.weights[i] = used[i] / su;
    return r;
}

}  // namespace sumnorm
