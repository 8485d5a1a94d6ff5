#include "airstat/distfit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "airstat/errors.hpp"
#include "airstat/rng.hpp"
#include "airstat/simplex.hpp"
#include "airstat/special.hpp"

namespace airstat {

namespace {

constexpr double kSqrt2Pi = 2.506628274631000502415765284811;

void require_positive(std::span<const double> sample, const char* where) {
    for (double x : sample)
        if (!(x > 0.0)) throw std::invalid_argument(std::string(where) + ": sample values must be > 0");
}

}  // namespace

double empirical_raw_moment(std::span<const double> sample, int order) {
    if (sample.empty()) throw std::invalid_argument("empirical_raw_moment: empty sample");
    if (order < 1 || order > 4)
        throw std::invalid_argument("empirical_raw_moment: order must be 1..4");
    long double sum = 0.0L;
    for (double x : sample) {
        long double t = x;
        for (int k = 1; k < order; ++k) t *= x;
        sum += t;
    }
    return static_cast<double>(sum / static_cast<long double>(sample.size()));
}

Moments raw_moments(std::span<const double> sample) {
    if (sample.empty()) throw std::invalid_argument("raw_moments: empty sample");
    long double s1 = 0.0L, s2 = 0.0L, s3 = 0.0L, s4 = 0.0L;
    for (double x : sample) {
        const long double x1 = x;
        const long double x2 = x1 * x1;
        s1 += x1;
        s2 += x2;
        s3 += x2 * x1;
        s4 += x2 * x2;
    }
    const long double n = static_cast<long double>(sample.size());
    return Moments{static_cast<double>(s1 / n), static_cast<double>(s2 / n),
                   static_cast<double>(s3 / n), static_cast<double>(s4 / n)};
}

double mixture_density(double x, const MixtureParams& params) {
    const double expo = x >= 0.0 ? params.lambda * std::exp(-params.lambda * x) : 0.0;
    const double z = (x - params.mu) / params.sigma;
    const double norm = std::exp(-0.5 * z * z) / (kSqrt2Pi * params.sigma);
    return params.p * expo + (1.0 - params.p) * norm;
}

double mixture_cdf(double x, const MixtureParams& params) {
    const double expo = x >= 0.0 ? -std::expm1(-params.lambda * x) : 0.0;
    const double norm = normal_cdf((x - params.mu) / params.sigma);
    return params.p * expo + (1.0 - params.p) * norm;
}

double mixture_quantile(double q, const MixtureParams& params) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("mixture_quantile: q must be in (0,1)");
    double lo = std::min(0.0, params.mu - 16.0 * params.sigma) - 1.0;
    double hi = std::max(params.mu + 16.0 * params.sigma,
                         exponential_quantile(std::max(q, 0.999), params.lambda)) +
                1.0;
    while (mixture_cdf(hi, params) < q) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mixture_cdf(mid, params) < q)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Moments mixture_theoretical_moments(const MixtureParams& params) {
    const double p = params.p;
    const double q = 1.0 - params.p;
    const double l = params.lambda;
    const double mu = params.mu;
    const double s2 = params.sigma * params.sigma;
    const double mu2 = mu * mu;
    Moments m;
    m.m1 = p / l + q * mu;
    m.m2 = 2.0 * p / (l * l) + q * (s2 + mu2);
    m.m3 = 6.0 * p / (l * l * l) + q * (3.0 * mu * s2 + mu2 * mu);
    m.m4 = 24.0 * p / (l * l * l * l) + q * (3.0 * s2 * s2 + 6.0 * mu2 * s2 + mu2 * mu2);
    return m;
}

ExponentialFit fit_exponential(std::span<const double> sample) {
    if (sample.size() < 2)
        throw DataError("fit_exponential: needs at least 2 positive intervals, got " +
                        std::to_string(sample.size()));
    require_positive(sample, "fit_exponential");
    const double mean = empirical_raw_moment(sample, 1);
    return ExponentialFit{1.0 / mean, sample.size(), mean};
}

double exponential_quantile(double q, double lambda) {
    return -std::log1p(-q) / lambda;
}

double moment_residual(const MixtureParams& params, const Moments& target) {
    const Moments t = mixture_theoretical_moments(params);
    const double r1 = (t.m1 - target.m1) / target.m1;
    const double r2 = (t.m2 - target.m2) / target.m2;
    const double r3 = (t.m3 - target.m3) / target.m3;
    const double r4 = (t.m4 - target.m4) / target.m4;
    return r1 * r1 + r2 * r2 + r3 * r3 + r4 * r4;
}

std::vector<MixtureParams> default_start_grid(const Moments& m, double sample_stddev) {
    const double sd = sample_stddev > 0.0 ? sample_stddev : std::max(m.m1, 1e-6);
    std::vector<MixtureParams> grid;
    for (double p : {0.2, 0.5, 0.8})
        for (double lambda : {1.0 / m.m1, 4.0 / m.m1})
            for (double mu : {m.m1, 2.0 * m.m1})
                grid.push_back(MixtureParams{p, lambda, mu, sd});
    for (double frac : {0.25, 0.5, 2.0, 4.0})
        grid.push_back(MixtureParams{0.5, 1.0 / m.m1, m.m1, frac * sd});
    return grid;
}

namespace {

// Unconstrained coordinates: (logit p, log lambda, mu, log sigma).
std::vector<double> to_coords(const MixtureParams& params) {
    return {std::log(params.p / (1.0 - params.p)), std::log(params.lambda), params.mu,
            std::log(params.sigma)};
}

MixtureParams from_coords(const std::vector<double>& t) {
    MixtureParams params;
    params.p = 1.0 / (1.0 + std::exp(-t[0]));
    params.lambda = std::exp(t[1]);
    params.mu = t[2];
    params.sigma = std::exp(t[3]);
    return params;
}

}  // namespace

MixtureFit fit_mixture_from_moments(const Moments& m, double sample_stddev,
                                    const SolverConfig& config) {
    if (!(m.m1 > 0.0) || !(m.m2 > 0.0) || !(m.m3 > 0.0) || !(m.m4 > 0.0))
        throw DataError("fit_mixture_from_moments: moments must be positive");

    auto objective = [&m](const std::vector<double>& t) {
        return moment_residual(from_coords(t), m);
    };

    std::vector<MixtureParams> starts = default_start_grid(m, sample_stddev);
    if (config.extra_random_starts > 0) {
        Rng rng = Rng(config.seed).split(0x6d6f6dULL);
        for (int i = 0; i < config.extra_random_starts; ++i) {
            MixtureParams s;
            s.p = 0.05 + 0.9 * rng.uniform();
            s.lambda = std::exp(std::log(0.2 / m.m1) + rng.uniform() * std::log(40.0));
            s.mu = m.m1 * (0.25 + 3.75 * rng.uniform());
            s.sigma = sample_stddev * std::exp((rng.uniform() - 0.5) * 4.0);
            starts.push_back(s);
        }
    }

    MixtureFit fit;
    fit.empirical_moments = m;
    fit.residual_norm = std::numeric_limits<double>::infinity();
    bool any_finite = false;
    for (const MixtureParams& start : starts) {
        const std::vector<double> x0 = to_coords(start);
        const std::vector<double> steps = {0.5, 0.5, 0.1 * m.m1, 0.5};
        const SimplexResult r =
            nelder_mead_minimize(objective, x0, steps, config.max_iterations);
        ++fit.starts_tried;
        if (!std::isfinite(r.fmin) || r.fmin >= 1e300) continue;
        any_finite = true;
        if (r.fmin < fit.residual_norm) {
            fit.residual_norm = r.fmin;
            fit.params = from_coords(r.x);
        }
    }
    if (!any_finite)
        throw DataError("fit_mixture_mom: no start produced a finite residual (moments: m1=" +
                        std::to_string(m.m1) + ", m4=" + std::to_string(m.m4) + ")");

    fit.converged = fit.residual_norm <= config.tolerance;
    if (std::min(fit.params.p, 1.0 - fit.params.p) <= 0.05)
        fit.note = "degenerate: single-component adequate";
    return fit;
}

MixtureFit fit_mixture_mom(std::span<const double> sample, const SolverConfig& config) {
    if (sample.size() < config.min_sample)
        throw DataError("fit_mixture_mom: needs at least " + std::to_string(config.min_sample) +
                        " positive intervals, got " + std::to_string(sample.size()));
    require_positive(sample, "fit_mixture_mom");
    const Moments m = raw_moments(sample);
    const double var = m.m2 - m.m1 * m.m1;
    return fit_mixture_from_moments(m, var > 0.0 ? std::sqrt(var) : 0.0, config);
}

namespace {

GofResult gof_core(std::span<const double> sample, double support_lower, int n_fitted_params,
                   const std::function<double(double)>& quantile, const GofConfig& config) {
    const std::size_t n = sample.size();
    if (n < 30) throw DataError("chi-square GOF: needs at least 30 observations, got " +
                                std::to_string(n));

    int k = std::min<std::int64_t>(config.bins,
                                   static_cast<std::int64_t>(n / config.min_expected));
    if (k < 3) throw DataError("chi-square GOF: sample too small for GOF");
    const int dof = k - 1 - n_fitted_params;
    if (dof < 1)
        throw DataError("chi-square GOF: sample too small for GOF with " +
                        std::to_string(n_fitted_params) + " fitted parameters");

    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());

    const double expected = static_cast<double>(n) / k;
    GofResult result;
    result.dof = dof;
    double lower = support_lower;
    std::size_t consumed = 0;
    for (int i = 1; i <= k; ++i) {
        const double upper = i < k ? quantile(static_cast<double>(i) / k)
                                   : std::numeric_limits<double>::infinity();
        // observed in (lower, upper]
        const auto it = i < k ? std::upper_bound(sorted.begin(), sorted.end(), upper)
                              : sorted.end();
        const std::int64_t observed = static_cast<std::int64_t>(it - sorted.begin()) -
                                      static_cast<std::int64_t>(consumed);
        consumed += static_cast<std::size_t>(observed);
        result.bins.push_back({lower, upper, observed, expected});
        const double diff = static_cast<double>(observed) - expected;
        result.statistic += diff * diff / expected;
        lower = upper;
    }
    result.p_value = chi2_sf(result.statistic, result.dof);
    return result;
}

}  // namespace

GofResult chi_square_gof_exponential(std::span<const double> sample, const ExponentialFit& fit,
                                     const GofConfig& config) {
    return gof_core(
        sample, 0.0, 1, [&fit](double q) { return exponential_quantile(q, fit.lambda); },
        config);
}

GofResult chi_square_gof_mixture(std::span<const double> sample, const MixtureParams& params,
                                 const GofConfig& config) {
    return gof_core(
        sample, -std::numeric_limits<double>::infinity(), 4,
        [&params](double q) { return mixture_quantile(q, params); }, config);
}

nlohmann::json gof_json(const GofResult& gof) {
    return {{"statistic", gof.statistic}, {"dof", gof.dof}, {"p_value", gof.p_value}};
}

nlohmann::json exponential_fit_json(const ExponentialFit& fit, const GofResult* gof) {
    nlohmann::json j = {{"model", "exponential"},
                        {"params", {{"lambda", fit.lambda}}},
                        {"n", fit.n},
                        {"residual_norm", nullptr}};
    j["gof"] = gof ? gof_json(*gof) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json mixture_fit_json(const MixtureFit& fit, std::size_t n, const GofResult* gof) {
    nlohmann::json j = {{"model", "mixture"},
                        {"params",
                         {{"p", fit.params.p},
                          {"lambda", fit.params.lambda},
                          {"mu", fit.params.mu},
                          {"sigma", fit.params.sigma}}},
                        {"n", n},
                        {"residual_norm", fit.residual_norm},
                        {"converged", fit.converged},
                        {"starts_tried", fit.starts_tried}};
    if (!fit.note.empty()) j["note"] = fit.note;
    j["gof"] = gof ? gof_json(*gof) : nlohmann::json(nullptr);
    return j;
}

void gof_bins_to_csv(const GofResult& gof, std::ostream& out) {
    out << "bin_lower,bin_upper,observed,expected\n";
    auto edge = [](double v) {
        std::ostringstream s;
        if (std::isinf(v))
            s << (v > 0 ? "inf" : "-inf");
        else
            s << v;
        return s.str();
    };
    for (const GofBin& b : gof.bins)
        out << edge(b.lower) << ',' << edge(b.upper) << ',' << b.observed << ',' << b.expected
            << '\n';
}

}  // namespace airstat
