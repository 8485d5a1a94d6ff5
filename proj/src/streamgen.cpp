#include "airstat/streamgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "airstat/rng.hpp"

namespace airstat {

namespace {

FlightRecord make_record(double exact_minutes, const RouteKey& route, std::size_t index) {
    FlightRecord rec;
    rec.entry_time = static_cast<Minutes>(std::floor(exact_minutes));
    rec.registration_date = date_of(rec.entry_time);
    rec.entry_point = route.entry_point;
    rec.exit_point = route.exit_point;
    rec.origin = route.entry_point;
    rec.destination = route.exit_point;
    rec.aircraft_type = "SYN";
    char code[16];
    std::snprintf(code, sizeof code, "S%06zu", index);
    rec.flight_code = code;
    return rec;
}

void emit_records(GeneratedStream& stream, const RouteKey& route) {
    stream.records.reserve(stream.exact_minutes.size());
    for (std::size_t i = 0; i < stream.exact_minutes.size(); ++i)
        stream.records.push_back(make_record(stream.exact_minutes[i], route, i));
}

nlohmann::json route_json(const RouteKey& route) {
    return {{"entry", route.entry_point}, {"exit", route.exit_point}};
}

}  // namespace

bool IntensityProfile::valid() const {
    bool any_positive = false;
    for (double r : hourly_rates) {
        if (!(r >= 0.0) || !std::isfinite(r)) return false;
        any_positive |= r > 0.0;
    }
    if (monthly_multipliers) {
        for (double m : *monthly_multipliers)
            if (!(m >= 0.0) || !std::isfinite(m)) return false;
    }
    return any_positive;
}

double IntensityProfile::max_rate() const {
    double max_hourly = *std::max_element(hourly_rates.begin(), hourly_rates.end());
    if (monthly_multipliers)
        max_hourly *= *std::max_element(monthly_multipliers->begin(), monthly_multipliers->end());
    return max_hourly;
}

double IntensityProfile::rate_at(Minutes t) const {
    double rate = hourly_rates[static_cast<std::size_t>(hour_of(t))];
    if (monthly_multipliers)
        rate *= (*monthly_multipliers)[static_cast<std::size_t>(date_of(t).month - 1)];
    return rate;
}

GeneratedStream gen_homogeneous_poisson(double rate_per_hour, Minutes start,
                                        double duration_hours, const RouteKey& route,
                                        std::uint64_t seed) {
    if (!(rate_per_hour > 0.0)) throw std::invalid_argument("gen_homogeneous_poisson: rate > 0");
    if (!(duration_hours >= 0.0))
        throw std::invalid_argument("gen_homogeneous_poisson: duration >= 0");

    GeneratedStream stream;
    stream.seed = seed;
    Rng rng(seed);
    double t_hours = 0.0;
    while (true) {
        t_hours += rng.exponential(rate_per_hour);
        if (t_hours >= duration_hours) break;
        stream.exact_minutes.push_back(static_cast<double>(start) + t_hours * 60.0);
    }
    emit_records(stream, route);
    stream.truth = {{"generator", "homogeneous_poisson"},
                    {"rate_per_hour", rate_per_hour},
                    {"start", start},
                    {"duration_hours", duration_hours},
                    {"route", route_json(route)},
                    {"seed", seed},
                    {"n_events", stream.records.size()}};
    return stream;
}

GeneratedStream gen_nhpp(const IntensityProfile& profile, Minutes start, int days,
                         const RouteKey& route, std::uint64_t seed) {
    if (days < 0) throw std::invalid_argument("gen_nhpp: days >= 0");
    GeneratedStream stream;
    stream.seed = seed;
    const double rate_max = profile.max_rate();
    const double duration_hours = days * 24.0;

    if (rate_max > 0.0 && days > 0) {
        Rng rng(seed);
        double t_hours = 0.0;
        while (true) {
            t_hours += rng.exponential(rate_max);
            if (t_hours >= duration_hours) break;
            const double exact = static_cast<double>(start) + t_hours * 60.0;
            const double rate = profile.rate_at(static_cast<Minutes>(std::floor(exact)));
            if (rng.uniform() < rate / rate_max)
                stream.exact_minutes.push_back(exact);
        }
    }
    emit_records(stream, route);
    nlohmann::json truth = {{"generator", "nhpp"},
                            {"hourly_rates", profile.hourly_rates},
                            {"start", start},
                            {"days", days},
                            {"route", route_json(route)},
                            {"seed", seed},
                            {"n_events", stream.records.size()}};
    if (profile.monthly_multipliers)
        truth["monthly_multipliers"] = *profile.monthly_multipliers;
    stream.truth = truth;
    return stream;
}

GeneratedStream gen_mixture_renewal(const MixtureParams& params, std::size_t n, Minutes start,
                                    const RouteKey& route, std::uint64_t seed) {
    // Boundary weights are meaningful for generation (p=1: pure exponential
    // renewal, p=0: pure truncated normal), unlike for fitting.
    const bool ok = params.p >= 0.0 && params.p <= 1.0 &&
                    (params.p == 0.0 || params.lambda > 0.0) &&
                    (params.p == 1.0 || params.sigma > 0.0);
    if (!ok) throw std::invalid_argument("gen_mixture_renewal: invalid parameters");
    GeneratedStream stream;
    stream.seed = seed;
    Rng rng(seed);
    double t_minutes = static_cast<double>(start);
    stream.exact_minutes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double gap = rng.uniform() < params.p
                               ? rng.exponential(params.lambda)
                               : rng.positive_normal(params.mu, params.sigma);
        t_minutes += gap;
        stream.exact_minutes.push_back(t_minutes);
    }
    emit_records(stream, route);
    stream.truth = {{"generator", "mixture_renewal"},
                    {"params",
                     {{"p", params.p},
                      {"lambda", params.lambda},
                      {"mu", params.mu},
                      {"sigma", params.sigma}}},
                    {"n", n},
                    {"start", start},
                    {"route", route_json(route)},
                    {"seed", seed}};
    return stream;
}

}  // namespace airstat
