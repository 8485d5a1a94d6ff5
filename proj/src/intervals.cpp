#include "airstat/intervals.hpp"

#include <map>
#include <ostream>

#include "airstat/errors.hpp"

namespace airstat {

IntervalSample extract_intervals(const std::vector<FlightRecord>& records,
                                 const RouteKey& route, const StationaryPeriod& period,
                                 bool keep_boundary_spans) {
    if (period.kind != ProfileKind::hourly)
        throw ConfigError("extract_intervals: interval extraction needs an hourly period");

    const int start_hour = static_cast<int>(period.start_bin);
    const int end_hour = static_cast<int>(period.end_bin);  // inclusive bin
    const bool wraps = period.start_bin > period.end_bin;
    const std::int64_t window_minutes =
        (wraps ? 24 - start_hour + end_hour + 1 : end_hour - start_hour + 1) * 60;

    // Window instances keyed by the day the window opens. A wrapped window
    // spills past midnight into the next calendar day.
    std::map<std::int64_t, std::vector<Minutes>> instances;
    for (const FlightRecord& r : records) {
        if (route_key(r) != route) continue;
        const int h = hour_of(r.entry_time);
        const bool inside = wraps ? (h >= start_hour || h <= end_hour)
                                  : (h >= start_hour && h <= end_hour);
        if (!inside) continue;
        std::int64_t day = day_index_of(r.entry_time);
        if (wraps && h <= end_hour) --day;
        instances[day].push_back(r.entry_time);
    }

    IntervalSample sample;
    sample.route = route;
    sample.period = period;
    for (auto& [day, times] : instances) {
        const Minutes window_start = day * 1440 + start_hour * 60;
        const Minutes window_end = window_start + window_minutes;

        for (std::size_t i = 1; i < times.size(); ++i) {
            const std::int64_t gap = times[i] - times[i - 1];
            if (gap == 0) {
                ++sample.n_zero_dropped;
            } else {
                sample.intervals.push_back(static_cast<double>(gap));
            }
        }
        sample.n_boundary_dropped += 2;
        if (keep_boundary_spans) {
            sample.boundary_spans.push_back(static_cast<double>(times.front() - window_start));
            sample.boundary_spans.push_back(static_cast<double>(window_end - times.back()));
        }
    }
    return sample;
}

void intervals_to_csv(const IntervalSample& sample, std::ostream& out) {
    out << "interval_minutes\n";
    for (double v : sample.intervals) out << v << '\n';
}

nlohmann::json interval_metadata_json(const IntervalSample& sample) {
    return {{"route", {{"entry", sample.route.entry_point}, {"exit", sample.route.exit_point}}},
            {"period",
             {{"kind", to_string(sample.period.kind)},
              {"start", sample.period.start_bin},
              {"end", sample.period.end_bin}}},
            {"n_intervals", sample.intervals.size()},
            {"n_zero_dropped", sample.n_zero_dropped},
            {"n_boundary_dropped", sample.n_boundary_dropped},
            {"boundary_spans", sample.boundary_spans}};
}

}  // namespace airstat
