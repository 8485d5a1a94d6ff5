#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "airstat/calendar.hpp"
#include "airstat/distfit.hpp"
#include "airstat/flight_records.hpp"

namespace airstat {

// Time-of-day intensity in flights per hour, optionally scaled per month.
struct IntensityProfile {
    std::array<double, 24> hourly_rates{};
    std::optional<std::array<double, 12>> monthly_multipliers;

    bool valid() const;
    double max_rate() const;
    double rate_at(Minutes t) const;
};

// Synthetic arrival stream plus everything needed to verify an estimator
// against it: the generating parameters and the exact (sub-minute) event
// times. Records carry minute-truncated timestamps like real data.
struct GeneratedStream {
    std::vector<FlightRecord> records;
    std::vector<double> exact_minutes;  // minutes since epoch, not truncated
    nlohmann::json truth;
    std::uint64_t seed = 0;
};

GeneratedStream gen_homogeneous_poisson(double rate_per_hour, Minutes start,
                                        double duration_hours, const RouteKey& route,
                                        std::uint64_t seed);

// Thinning: candidates at the maximal rate, accepted with probability
// rate(t) / max rate.
GeneratedStream gen_nhpp(const IntensityProfile& profile, Minutes start, int days,
                         const RouteKey& route, std::uint64_t seed);

// Renewal process whose gaps are exponential with probability p, otherwise
// normal truncated to positive values by rejection.
GeneratedStream gen_mixture_renewal(const MixtureParams& params, std::size_t n, Minutes start,
                                    const RouteKey& route, std::uint64_t seed);

}  // namespace airstat
