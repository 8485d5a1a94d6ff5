#include "airstat/traffic_profile.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "airstat/errors.hpp"
#include "airstat/special.hpp"

namespace airstat {

const char* to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::monthly: return "monthly";
        case ProfileKind::hourly: return "hourly";
        case ProfileKind::weekday: return "weekday";
    }
    return "?";
}

std::int64_t BinProfile::total_count() const {
    std::int64_t total = 0;
    for (const ProfileBin& b : bins) total += b.count;
    return total;
}

BinProfile monthly_profile(const std::vector<FlightRecord>& records) {
    BinProfile profile{ProfileKind::monthly, {}};
    if (records.empty()) return profile;

    const auto [min_it, max_it] = std::minmax_element(
        records.begin(), records.end(), [](const FlightRecord& a, const FlightRecord& b) {
            return a.entry_time < b.entry_time;
        });
    const Date first = date_of(min_it->entry_time);
    const Date last = date_of(max_it->entry_time);

    // Accumulate exposure month by month over the month-granular span; bins
    // are the 12 calendar months, so multi-year data pools same-name months.
    double exposure[12] = {};
    bool present[12] = {};
    int year = first.year;
    int month = first.month;
    while (year < last.year || (year == last.year && month <= last.month)) {
        exposure[month - 1] += 24.0 * days_in_month(year, month);
        present[month - 1] = true;
        if (++month > 12) {
            month = 1;
            ++year;
        }
    }

    std::int64_t counts[12] = {};
    for (const FlightRecord& r : records) ++counts[date_of(r.entry_time).month - 1];

    for (int m = 0; m < 12; ++m) {
        if (!present[m]) continue;
        profile.bins.push_back({kMonthAbbrev[m], counts[m], exposure[m]});
    }
    return profile;
}

namespace {

// Day-granular observation window of the whole dataset, in day indices.
std::pair<std::int64_t, std::int64_t> day_span(const std::vector<FlightRecord>& records) {
    const auto [min_it, max_it] = std::minmax_element(
        records.begin(), records.end(), [](const FlightRecord& a, const FlightRecord& b) {
            return a.entry_time < b.entry_time;
        });
    return {day_index_of(min_it->entry_time), day_index_of(max_it->entry_time)};
}

}  // namespace

BinProfile hourly_profile(const std::vector<FlightRecord>& records,
                          const std::optional<RouteKey>& route) {
    BinProfile profile{ProfileKind::hourly, {}};
    profile.bins.resize(24);
    for (int h = 0; h < 24; ++h) {
        std::ostringstream label;
        label << (h < 10 ? "0" : "") << h;
        profile.bins[static_cast<std::size_t>(h)].label = label.str();
    }
    if (records.empty()) return profile;

    const auto [first_day, last_day] = day_span(records);
    const double days_observed = static_cast<double>(last_day - first_day + 1);
    for (ProfileBin& b : profile.bins) b.exposure_hours = days_observed;

    for (const FlightRecord& r : records) {
        if (route && route_key(r) != *route) continue;
        ++profile.bins[static_cast<std::size_t>(hour_of(r.entry_time))].count;
    }
    return profile;
}

BinProfile weekday_profile(const std::vector<FlightRecord>& records) {
    BinProfile profile{ProfileKind::weekday, {}};
    profile.bins.resize(7);
    for (int w = 0; w < 7; ++w) profile.bins[static_cast<std::size_t>(w)].label = kWeekdayAbbrev[w];
    if (records.empty()) return profile;

    const auto [first_day, last_day] = day_span(records);
    for (std::int64_t d = first_day; d <= last_day; ++d)
        profile.bins[static_cast<std::size_t>(weekday_from_days(d))].exposure_hours += 24.0;

    for (const FlightRecord& r : records)
        ++profile.bins[static_cast<std::size_t>(weekday_from_days(day_index_of(r.entry_time)))].count;
    return profile;
}

HomogeneityResult homogeneity_test(const std::vector<CountCell>& cells, double alpha,
                                   double min_expected) {
    if (cells.size() < 2) throw std::invalid_argument("homogeneity_test: need at least 2 cells");
    std::int64_t total = 0;
    double total_exposure = 0.0;
    for (const CountCell& c : cells) {
        if (c.exposure <= 0.0)
            throw std::invalid_argument("homogeneity_test: all exposures must be positive");
        if (c.count < 0) throw std::invalid_argument("homogeneity_test: negative count");
        total += c.count;
        total_exposure += c.exposure;
    }
    if (total < 1) throw std::invalid_argument("homogeneity_test: total count must be >= 1");

    std::vector<std::size_t> low;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const double expected = total * cells[i].exposure / total_exposure;
        if (expected < min_expected) low.push_back(i);
    }
    if (!low.empty()) {
        std::ostringstream msg;
        msg << "homogeneity_test: expected count below " << min_expected
            << " in cells (merge first):";
        for (std::size_t i : low) msg << ' ' << i;
        throw DataError(msg.str());
    }

    double statistic = 0.0;
    for (const CountCell& c : cells) {
        const double expected = total * c.exposure / total_exposure;
        const double diff = c.count - expected;
        statistic += diff * diff / expected;
    }
    const int dof = static_cast<int>(cells.size()) - 1;
    const double p = chi2_sf(statistic, dof);
    return HomogeneityResult{statistic, dof, p, p >= alpha};
}

std::vector<CountCell> merge_small_cells(const std::vector<CountCell>& cells,
                                         double min_expected) {
    std::int64_t total = 0;
    double total_exposure = 0.0;
    for (const CountCell& c : cells) {
        total += c.count;
        total_exposure += c.exposure;
    }
    if (total < 1 || total_exposure <= 0.0) return {};

    std::vector<CountCell> merged;
    CountCell acc{};
    for (const CountCell& c : cells) {
        acc.count += c.count;
        acc.exposure += c.exposure;
        if (total * acc.exposure / total_exposure >= min_expected) {
            merged.push_back(acc);
            acc = {};
        }
    }
    if (acc.exposure > 0.0) {
        if (merged.empty()) {
            merged.push_back(acc);
        } else {
            merged.back().count += acc.count;
            merged.back().exposure += acc.exposure;
        }
    }
    return merged;
}

std::vector<std::size_t> period_bins(const StationaryPeriod& period, std::size_t n_bins) {
    std::vector<std::size_t> bins;
    std::size_t i = period.start_bin;
    while (true) {
        bins.push_back(i);
        if (i == period.end_bin) break;
        i = (i + 1) % n_bins;
    }
    return bins;
}

namespace {

// Homogeneity of a candidate bin range after validity merging. Fewer than
// two mergeable cells (including the all-sparse case) cannot reject.
HomogeneityResult candidate_test(const std::vector<CountCell>& cells, double alpha,
                                 double min_expected) {
    const std::vector<CountCell> merged = merge_small_cells(cells, min_expected);
    if (merged.size() < 2) return HomogeneityResult{0.0, 0, 1.0, true};
    return homogeneity_test(merged, alpha, min_expected);
}

StationaryPeriod close_period(const BinProfile& profile, std::size_t start, std::size_t end,
                              double p_value) {
    StationaryPeriod period;
    period.kind = profile.kind;
    period.start_bin = start;
    period.end_bin = end;
    period.p_value = p_value;
    double exposure = 0.0;
    for (std::size_t i : period_bins(period, profile.bins.size())) {
        period.n_events += profile.bins[i].count;
        exposure += profile.bins[i].exposure_hours;
    }
    period.intensity = exposure > 0.0 ? static_cast<double>(period.n_events) / exposure : 0.0;
    return period;
}

}  // namespace

std::vector<StationaryPeriod> segment_stationary(const BinProfile& profile, double alpha,
                                                 double min_expected) {
    if (profile.bins.empty())
        throw std::invalid_argument("segment_stationary: empty profile");
    if (profile.kind == ProfileKind::weekday)
        throw ConfigError("segment_stationary: weekday profiles are diagnostic only");
    if (alpha <= 0.0 || alpha >= 1.0)
        throw std::invalid_argument("segment_stationary: alpha must be in (0,1)");

    const std::size_t n = profile.bins.size();
    const double alpha_test = alpha / static_cast<double>(std::max<std::size_t>(n - 1, 1));

    auto cells_of = [&profile](std::size_t from, std::size_t to) {
        std::vector<CountCell> cells;
        for (std::size_t i = from; i <= to; ++i)
            cells.push_back({profile.bins[i].count, profile.bins[i].exposure_hours});
        return cells;
    };

    std::vector<StationaryPeriod> periods;
    std::size_t start = 0;
    double current_p = 1.0;
    for (std::size_t next = 1; next < n; ++next) {
        const HomogeneityResult r = candidate_test(cells_of(start, next), alpha_test, min_expected);
        if (r.homogeneous) {
            current_p = r.p_value;
        } else {
            periods.push_back(close_period(profile, start, next - 1, current_p));
            start = next;
            current_p = 1.0;
        }
    }
    periods.push_back(close_period(profile, start, n - 1, current_p));

    if (profile.kind == ProfileKind::hourly && periods.size() > 1) {
        const StationaryPeriod& first = periods.front();
        const StationaryPeriod& last = periods.back();
        std::vector<CountCell> cells = cells_of(last.start_bin, last.end_bin);
        const std::vector<CountCell> head = cells_of(first.start_bin, first.end_bin);
        cells.insert(cells.end(), head.begin(), head.end());
        const HomogeneityResult r = candidate_test(cells, alpha_test, min_expected);
        if (r.homogeneous) {
            StationaryPeriod wrapped = close_period(profile, last.start_bin, first.end_bin, r.p_value);
            std::vector<StationaryPeriod> joined;
            joined.push_back(wrapped);
            joined.insert(joined.end(), periods.begin() + 1, periods.end() - 1);
            return joined;
        }
    }
    return periods;
}

void profile_to_csv(const BinProfile& profile, std::ostream& out) {
    out << "label,count,exposure_hours,rate_per_hour\n";
    for (const ProfileBin& b : profile.bins) {
        const double rate = b.exposure_hours > 0.0 ? b.count / b.exposure_hours : 0.0;
        out << b.label << ',' << b.count << ',' << b.exposure_hours << ',' << rate << '\n';
    }
}

nlohmann::json periods_to_json(const std::vector<StationaryPeriod>& periods) {
    nlohmann::json list = nlohmann::json::array();
    for (const StationaryPeriod& p : periods) {
        list.push_back({{"kind", to_string(p.kind)},
                        {"start", p.start_bin},
                        {"end", p.end_bin},
                        {"intensity", p.intensity},
                        {"n_events", p.n_events},
                        {"p_value", p.p_value}});
    }
    return list;
}

}  // namespace airstat
