#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "airstat/distfit.hpp"
#include "airstat/flight_records.hpp"

namespace airstat {

// Generator request for the simulate command.
struct SimulateSpec {
    std::string generator = "homogeneous_poisson";  // nhpp | mixture_renewal
    double rate_per_hour = 6.0;
    double duration_hours = 24.0;
    std::array<double, 24> hourly_rates{};
    std::optional<std::array<double, 12>> monthly_multipliers;
    int days = 30;
    std::size_t n = 1000;
    MixtureParams mixture{0.4, 0.5, 20.0, 3.0};
    std::string start_date = "2002-01-01";
    RouteKey route{"NINTA", "OPOKA"};
};

struct AnalysisConfig {
    std::vector<std::string> inputs;
    ParseSchema schema = ParseSchema::defaults();
    double alpha = 0.05;
    int gof_bins = 10;
    double min_expected = 5.0;
    SolverConfig solver;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    SimulateSpec simulate;

    void validate() const;  // throws ConfigError
};

AnalysisConfig load_config(const std::string& path);
AnalysisConfig config_from_json(const nlohmann::json& j);

}  // namespace airstat
