#pragma once

#include <optional>
#include <string>
#include <utility>

#include "airstat/config.hpp"

namespace airstat {

// Exit code contract: 0 success, 1 usage/config error, 2 data error,
// 3 internal error. The command functions return 0 or throw; main maps
// exceptions to codes.

using PeriodFilter = std::optional<std::pair<std::size_t, std::size_t>>;

int cmd_ingest(const AnalysisConfig& cfg);
int cmd_profile(const AnalysisConfig& cfg, const std::string& kind,
                const std::optional<RouteKey>& route);
int cmd_segment(const AnalysisConfig& cfg, const std::string& kind,
                const std::optional<RouteKey>& route);
int cmd_intervals(const AnalysisConfig& cfg, const RouteKey& route, const PeriodFilter& period);
int cmd_analyze(const AnalysisConfig& cfg, const std::optional<RouteKey>& route,
                const PeriodFilter& period);
int cmd_simulate(const AnalysisConfig& cfg);

// "ENTRY-EXIT" -> RouteKey (split at the first dash).
RouteKey parse_route_arg(const std::string& text);

}  // namespace airstat
