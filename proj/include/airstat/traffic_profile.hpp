#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "airstat/flight_records.hpp"

namespace airstat {

enum class ProfileKind { monthly, hourly, weekday };

const char* to_string(ProfileKind kind);

struct ProfileBin {
    std::string label;
    std::int64_t count = 0;
    double exposure_hours = 0.0;
};

struct BinProfile {
    ProfileKind kind = ProfileKind::hourly;
    std::vector<ProfileBin> bins;

    std::int64_t total_count() const;
};

// One bin per calendar month present in the data's month span (calendar
// order); exposure is the month's full length in hours, accumulated per
// occurrence when the span covers several years.
BinProfile monthly_profile(const std::vector<FlightRecord>& records);

// 24 bins. Counts are restricted to the given route when one is supplied;
// exposure per bin is the number of observed days (day-granular span over
// the whole record list), one hour each.
BinProfile hourly_profile(const std::vector<FlightRecord>& records,
                          const std::optional<RouteKey>& route = std::nullopt);

// 7 bins Mon..Sun. Diagnostic only; never segmented.
BinProfile weekday_profile(const std::vector<FlightRecord>& records);

struct CountCell {
    std::int64_t count = 0;
    double exposure = 0.0;
};

struct HomogeneityResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    bool homogeneous = true;
};

// Chi-square test of a constant rate across cells: E_i = N * exposure_i /
// total exposure, statistic sum (O-E)^2/E, dof = cells - 1. Cells whose
// expected count falls below min_expected make the test invalid; the error
// lists the offending cells so the caller can merge first.
HomogeneityResult homogeneity_test(const std::vector<CountCell>& cells, double alpha,
                                   double min_expected = 5.0);

// Merge adjacent cells until every expected count is >= min_expected.
std::vector<CountCell> merge_small_cells(const std::vector<CountCell>& cells,
                                         double min_expected);

struct StationaryPeriod {
    ProfileKind kind = ProfileKind::hourly;
    std::size_t start_bin = 0;
    std::size_t end_bin = 0;  // inclusive; start_bin > end_bin marks hourly wraparound
    double intensity = 0.0;   // events per hour over the covered bins
    std::int64_t n_events = 0;
    double p_value = 1.0;     // homogeneity p-value of the closed period
};

// Bins covered by a period, in chronological order within the cycle.
std::vector<std::size_t> period_bins(const StationaryPeriod& period, std::size_t n_bins);

// Greedy left-to-right merge: keep extending the current period while the
// homogeneity test over the candidate accepts; close it on rejection.
// Hourly profiles get a final wraparound attempt joining the last and first
// periods. Every bin lands in exactly one period.
//
// alpha is the family-wise level for the whole pass; each candidate test
// runs at alpha / (bins - 1) so a flat profile stays one period with
// probability about 1 - alpha.
std::vector<StationaryPeriod> segment_stationary(const BinProfile& profile, double alpha,
                                                 double min_expected = 5.0);

// Plot data backing the month/hour diagrams: label,count,exposure_hours,rate.
void profile_to_csv(const BinProfile& profile, std::ostream& out);

nlohmann::json periods_to_json(const std::vector<StationaryPeriod>& periods);

}  // namespace airstat
