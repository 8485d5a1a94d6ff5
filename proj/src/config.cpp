#include "airstat/config.hpp"

#include <fstream>

#include "airstat/errors.hpp"

namespace airstat {

namespace {

RouteKey route_from_json(const nlohmann::json& j) {
    return RouteKey{j.at("entry").get<std::string>(), j.at("exit").get<std::string>()};
}

}  // namespace

void AnalysisConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("config: alpha must be in (0,1)");
    if (gof_bins < 3) throw ConfigError("config: gof_bins must be >= 3");
    if (min_expected <= 0.0) throw ConfigError("config: min_expected must be > 0");
    if (solver.tolerance <= 0.0) throw ConfigError("config: solver.tolerance must be > 0");
    if (solver.max_iterations < 1) throw ConfigError("config: solver.max_iterations must be >= 1");
    if (schema.delimiter != ',' && schema.delimiter != ';')
        throw ConfigError("config: delimiter must be ',' or ';'");
}

AnalysisConfig config_from_json(const nlohmann::json& j) {
    AnalysisConfig cfg;
    if (j.contains("inputs")) cfg.inputs = j.at("inputs").get<std::vector<std::string>>();
    if (j.contains("delimiter")) {
        const std::string d = j.at("delimiter").get<std::string>();
        if (d.size() != 1) throw ConfigError("config: delimiter must be one character");
        cfg.schema.delimiter = d[0];
    }
    if (j.contains("columns"))
        for (const auto& [field, column] : j.at("columns").items())
            cfg.schema.columns[field] = column.get<std::string>();
    if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
    if (j.contains("gof_bins")) cfg.gof_bins = j.at("gof_bins").get<int>();
    if (j.contains("min_expected")) cfg.min_expected = j.at("min_expected").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();

    if (j.contains("solver")) {
        const nlohmann::json& s = j.at("solver");
        if (s.contains("tolerance")) cfg.solver.tolerance = s.at("tolerance").get<double>();
        if (s.contains("max_iterations"))
            cfg.solver.max_iterations = s.at("max_iterations").get<int>();
        if (s.contains("min_sample")) cfg.solver.min_sample = s.at("min_sample").get<std::size_t>();
        if (s.contains("extra_random_starts"))
            cfg.solver.extra_random_starts = s.at("extra_random_starts").get<int>();
    }

    if (j.contains("simulate")) {
        const nlohmann::json& s = j.at("simulate");
        SimulateSpec& spec = cfg.simulate;
        if (s.contains("generator")) spec.generator = s.at("generator").get<std::string>();
        if (s.contains("rate_per_hour")) spec.rate_per_hour = s.at("rate_per_hour").get<double>();
        if (s.contains("duration_hours"))
            spec.duration_hours = s.at("duration_hours").get<double>();
        if (s.contains("hourly_rates")) {
            const auto rates = s.at("hourly_rates").get<std::vector<double>>();
            if (rates.size() != 24) throw ConfigError("config: hourly_rates needs 24 values");
            std::copy(rates.begin(), rates.end(), spec.hourly_rates.begin());
        }
        if (s.contains("monthly_multipliers")) {
            const auto mult = s.at("monthly_multipliers").get<std::vector<double>>();
            if (mult.size() != 12)
                throw ConfigError("config: monthly_multipliers needs 12 values");
            std::array<double, 12> arr{};
            std::copy(mult.begin(), mult.end(), arr.begin());
            spec.monthly_multipliers = arr;
        }
        if (s.contains("days")) spec.days = s.at("days").get<int>();
        if (s.contains("n")) spec.n = s.at("n").get<std::size_t>();
        if (s.contains("mixture")) {
            const nlohmann::json& m = s.at("mixture");
            spec.mixture.p = m.at("p").get<double>();
            spec.mixture.lambda = m.at("lambda").get<double>();
            spec.mixture.mu = m.at("mu").get<double>();
            spec.mixture.sigma = m.at("sigma").get<double>();
        }
        if (s.contains("start_date")) spec.start_date = s.at("start_date").get<std::string>();
        if (s.contains("route")) spec.route = route_from_json(s.at("route"));
    }

    cfg.validate();
    return cfg;
}

AnalysisConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file " + path + ": " + e.what());
    }
}

}  // namespace airstat
