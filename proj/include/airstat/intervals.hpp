#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "airstat/flight_records.hpp"
#include "airstat/traffic_profile.hpp"

namespace airstat {

// Inter-arrival durations for one route inside one stationary clock window,
// pooled across days. The open span between a window edge and the nearest
// arrival is not a complete interval; those spans are dropped from the
// sample but counted (and optionally retained) as censoring metadata.
struct IntervalSample {
    RouteKey route;
    StationaryPeriod period;
    std::vector<double> intervals;  // minutes, all > 0
    std::int64_t n_zero_dropped = 0;
    std::int64_t n_boundary_dropped = 0;
    std::vector<double> boundary_spans;  // right-open spans, minutes
};

// records must be sorted by entry_time; period must be hourly.
IntervalSample extract_intervals(const std::vector<FlightRecord>& records,
                                 const RouteKey& route, const StationaryPeriod& period,
                                 bool keep_boundary_spans = true);

void intervals_to_csv(const IntervalSample& sample, std::ostream& out);
nlohmann::json interval_metadata_json(const IntervalSample& sample);

}  // namespace airstat
