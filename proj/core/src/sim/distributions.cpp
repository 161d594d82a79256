#include "sumnorm/sim/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>

#include "sumnorm/errors.hpp"

namespace sumnorm::sim {

namespace {

struct FamilyInfo {
    Family family;
    std::string_view name;
    std::size_t arity;
    std::vector<double> defaults;
};

const std::vector<FamilyInfo>& families() {
    static const std::vector<FamilyInfo> table{
        {Family::Normal, "normal", 2, {0.0, 1.0}},
        {Family::LogNormal, "lognormal", 2, {0.0, 1.0}},
        {Family::ChiSquare, "chisquare", 1, {1.0}},
        {Family::Exponential, "exponential", 1, {1.0}},
        {Family::Beta, "beta", 2, {1.0, 5.0}},
        {Family::Weibull, "weibull", 2, {2.0, 1.0}},
    };
    return table;
}

const FamilyInfo& info(Family f) {
    for (const auto& i : families()) {
        if (i.family == f) return i;
    }
    throw DomainError("unknown distribution family");
}

std::string shortest(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::uint64_t splitmix(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::string_view to_string(Family f) noexcept {
    for (const auto& i : families()) {
        if (i.family == f) return i.name;
    }
    return "unknown";
}

DistSpec parse_dist(std::string_view text) {
    const auto colon = text.find(':');
    std::string name(trim(text.substr(0, colon)));
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (name == "chisq" || name == "chi-square" || name == "chi2") name = "chisquare";
    if (name == "exp") name = "exponential";

    const FamilyInfo* found = nullptr;
    for (const auto& i : families()) {
        if (i.name == name) found = &i;
    }
    if (!found) {
        throw DomainError("unknown distribution '" + name +
                          "' (expected normal, lognormal, chisquare, exponential, beta or weibull)");
    }
    DistSpec d{found->family, found->defaults};
    if (colon != std::string_view::npos) {
        d.params.clear();
        std::string_view rest = text.substr(colon + 1);
        while (true) {
            const auto comma = rest.find(',');
            const std::string_view tok = trim(rest.substr(0, comma));
            double v = 0.0;
            const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
                throw DomainError("distribution '" + std::string(text) + "': bad parameter '" +
                                  std::string(tok) + "'");
            }
            d.params.push_back(v);
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
    }
    validate(d);
    return d;
}

std::string params_string(const DistSpec& d) {
    std::string out;
    for (std::size_t i = 0; i < d.params.size(); ++i) {
        if (i) out += ';';
        out += shortest(d.params[i]);
    }
    return out;
}

std::string to_string(const DistSpec& d) {
    std::string out(to_string(d.family));
    out += ':';
    for (std::size_t i = 0; i < d.params.size(); ++i) {
        if (i) out += ',';
        out += shortest(d.params[i]);
    }
    return out;
}

void validate(const DistSpec& d) {
    const FamilyInfo& fi = info(d.family);
    if (d.params.size() != fi.arity) {
        throw DomainError(std::string(fi.name) + " takes " + std::to_string(fi.arity) +
                          " parameter(s), got " + std::to_string(d.params.size()));
    }
    for (double p : d.params) {
        if (!std::isfinite(p)) throw DomainError(std::string(fi.name) + ": parameters must be finite");
    }
    const auto positive = [&](std::size_t i, const char* what) {
        if (!(d.params[i] > 0.0)) {
            throw DomainError(std::string(fi.name) + ": " + what + " must be > 0, got " +
                              shortest(d.params[i]));
        }
    };
    switch (d.family) {
        case Family::Normal:
        case Family::LogNormal: positive(1, "sigma"); break;
        case Family::ChiSquare: positive(0, "df"); break;
        case Family::Exponential: positive(0, "rate"); break;
        case Family::Beta: positive(0, "alpha"); positive(1, "beta"); break;
        case Family::Weibull: positive(0, "shape"); positive(1, "scale"); break;
    }
}

DistSpec normal(double mu, double sigma) { return {Family::Normal, {mu, sigma}}; }
DistSpec lognormal(double mu, double sigma) { return {Family::LogNormal, {mu, sigma}}; }
DistSpec chisquare(double df) { return {Family::ChiSquare, {df}}; }
DistSpec exponential(double rate) { return {Family::Exponential, {rate}}; }
DistSpec beta(double a, double b) { return {Family::Beta, {a, b}}; }
DistSpec weibull(double shape, double scale) { return {Family::Weibull, {shape, scale}}; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
    return splitmix(splitmix(splitmix(seed) ^ a) ^ b);
}

void draw(const DistSpec& d, Engine& engine, std::span<double> out) {
    const auto& p = d.params;
    switch (d.family) {
        case Family::Normal: {
            std::normal_distribution<double> dist(p[0], p[1]);
            for (double& x : out) x = dist(engine);
            break;
        }
        case Family::LogNormal: {
            std::lognormal_distribution<double> dist(p[0], p[1]);
            for (double& x : out) x = dist(engine);
            break;
        }
        case Family::ChiSquare: {
            std::chi_squared_distribution<double> dist(p[0]);
            for (double& x : out) x = dist(engine);
            break;
        }
        case Family::Exponential: {
            std::exponential_distribution<double> dist(p[0]);
            for (double& x : out) x = dist(engine);
            break;
        }
        case Family::Beta: {
            // X / (X + Y) with X ~ Gamma(a), Y ~ Gamma(b).
            std::gamma_distribution<double> ga(p[0], 1.0);
            std::gamma_distribution<double> gb(p[1], 1.0);
            for (double& x : out) {
                const double u = ga(engine);
                const double v = gb(engine);
                x = u / (u + v);
            }
            break;
        }
        case Family::Weibull: {
            std::weibull_distribution<double> dist(p[0], p[1]);
            for (double& x : out) x = dist(engine);
            break;
        }
    }
}

std::vector<double> sample(const DistSpec& d, int n, std::uint64_t seed) {
    if (n < 1) throw DomainError("sample: n must be >= 1, got " + std::to_string(n));
    validate(d);
    Engine engine(seed);
    std::vector<double> out(static_cast<std::size_t>(n));
    draw(d, engine, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<DistSpec> power_alternatives() {
    return {lognormal(0.0, 1.0), chisquare(1.0), exponential(1.0), beta(1.0, 5.0), weibull(2.0, 1.0)};
}

std::vector<DemoPair> demo_pairs() {
    return {
        {"lognormal", lognormal(0.0, 1.0), lognormal(1.0, 1.0), 350},
        {"chisquare", chisquare(3.0), chisquare(4.0), 200},
        {"exponential", exponential(1.0), exponential(1.5), 150},
        {"beta", beta(2.0, 5.0), beta(2.0, 7.0), 300},
        {"weibull", weibull(1.5, 1.0), weibull(3.0, 1.0), 400},
    };
}

DemoPair normal_demo_pair() { return {"normal", normal(0.0, 1.0), normal(1.0, 1.0), 350}; }

}  // namespace sumnorm::sim
