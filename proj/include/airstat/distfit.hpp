#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace airstat {

// Raw moments of orders 1..4.
struct Moments {
    double m1 = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
};

double empirical_raw_moment(std::span<const double> sample, int order);
Moments raw_moments(std::span<const double> sample);

// Two-component density p*Exp(lambda) + (1-p)*Normal(mu, sigma). The normal
// component is kept on all reals; for mu well above sigma its negative mass
// is negligible (see README notes on the model).
struct MixtureParams {
    double p = 0.5;       // weight of the exponential component
    double lambda = 1.0;  // exponential rate, per minute
    double mu = 0.0;      // normal mean, minutes
    double sigma = 1.0;   // normal standard deviation, minutes

    bool valid() const { return p > 0.0 && p < 1.0 && lambda > 0.0 && sigma > 0.0; }
};

double mixture_density(double x, const MixtureParams& params);
double mixture_cdf(double x, const MixtureParams& params);
double mixture_quantile(double q, const MixtureParams& params);

// Theoretical raw moments of the mixture:
//   m1 = p/lambda            + (1-p) * mu
//   m2 = 2p/lambda^2         + (1-p) * (sigma^2 + mu^2)
//   m3 = 6p/lambda^3         + (1-p) * (3 mu sigma^2 + mu^3)
//   m4 = 24p/lambda^4        + (1-p) * (3 sigma^4 + 6 mu^2 sigma^2 + mu^4)
Moments mixture_theoretical_moments(const MixtureParams& params);

struct ExponentialFit {
    double lambda = 0.0;
    std::size_t n = 0;
    double mean = 0.0;
};

// lambda = 1 / sample mean; needs at least 2 positive values.
ExponentialFit fit_exponential(std::span<const double> sample);
double exponential_quantile(double q, double lambda);

struct SolverConfig {
    double tolerance = 1e-8;   // relative moment residual for convergence
    int max_iterations = 2000; // simplex iterations per start
    std::size_t min_sample = 50;
    int extra_random_starts = 0;  // appended to the deterministic grid
    std::uint64_t seed = 0;       // used only for extra random starts
};

struct MixtureFit {
    MixtureParams params;
    double residual_norm = 0.0;
    Moments empirical_moments;
    bool converged = false;
    int starts_tried = 0;
    std::string note;  // e.g. "degenerate: single-component adequate"
};

// Relative moment residual sum_{v=1..4} ((mu_v(theta) - m_v)/m_v)^2.
double moment_residual(const MixtureParams& params, const Moments& target);

// Deterministic multi-start grid: p in {0.2, 0.5, 0.8} x lambda in
// {1/m1, 4/m1} x mu in {m1, 2 m1} at sigma = sd, plus four sigma fraction
// probes {0.25, 0.5, 2, 4} * sd at the central point. 16 starts total.
std::vector<MixtureParams> default_start_grid(const Moments& m, double sample_stddev);

// Method-of-moments fit by multi-start Nelder-Mead over the reparameterized
// domain (logit p, log lambda, mu, log sigma). Returns the best candidate
// even when not converged.
MixtureFit fit_mixture_mom(std::span<const double> sample, const SolverConfig& config = {});
MixtureFit fit_mixture_from_moments(const Moments& m, double sample_stddev,
                                    const SolverConfig& config = {});

struct GofBin {
    double lower = 0.0;
    double upper = 0.0;
    std::int64_t observed = 0;
    double expected = 0.0;
};

struct GofResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    std::vector<GofBin> bins;
};

struct GofConfig {
    int bins = 10;
    double min_expected = 5.0;
};

// Pearson chi-square against the fitted model with equal-probability bins;
// the bin count is reduced until every expected count reaches min_expected.
// dof = bins - 1 - (fitted parameter count: 1 exponential, 4 mixture).
GofResult chi_square_gof_exponential(std::span<const double> sample, const ExponentialFit& fit,
                                     const GofConfig& config = {});
GofResult chi_square_gof_mixture(std::span<const double> sample, const MixtureParams& params,
                                 const GofConfig& config = {});

nlohmann::json gof_json(const GofResult& gof);
nlohmann::json exponential_fit_json(const ExponentialFit& fit, const GofResult* gof);
nlohmann::json mixture_fit_json(const MixtureFit& fit, std::size_t n, const GofResult* gof);

// Histogram plot data: bin_lower,bin_upper,observed,expected.
void gof_bins_to_csv(const GofResult& gof, std::ostream& out);

}  // namespace airstat
