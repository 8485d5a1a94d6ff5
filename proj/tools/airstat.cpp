#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "airstat/commands.hpp"
#include "airstat/errors.hpp"

namespace {

std::vector<double> parse_rate_list(const std::string& text, std::size_t expected,
                                    const char* what) {
    std::vector<double> values;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) values.push_back(std::stod(token));
    if (values.size() != expected)
        throw airstat::ConfigError(std::string(what) + " needs " + std::to_string(expected) +
                                   " comma-separated values");
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"air traffic arrival statistics toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed_flag;
    std::optional<double> alpha_flag;
    std::optional<std::string> out_dir_flag;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--seed", seed_flag, "top-level seed (overrides config)");
    app.add_option("--alpha", alpha_flag, "significance level (overrides config)");
    app.add_option("--out-dir", out_dir_flag, "output directory (overrides config)");

    std::vector<std::string> inputs_flag;
    app.add_option("--input", inputs_flag, "input CSV file(s) (overrides config)");

    auto* ingest = app.add_subcommand("ingest", "parse inputs, write canonical dump + report");
    auto* profile = app.add_subcommand("profile", "aggregate counts into time bins");
    auto* segment = app.add_subcommand("segment", "split a profile into stationary periods");
    auto* intervals = app.add_subcommand("intervals", "extract inter-arrival intervals");
    auto* analyze = app.add_subcommand("analyze", "full fit pipeline per route and period");
    auto* simulate = app.add_subcommand("simulate", "generate a synthetic stream + truth");

    std::string kind = "hourly";
    profile->add_option("--kind", kind, "monthly|hourly|weekday");
    segment->add_option("--kind", kind, "monthly|hourly");

    std::string route_arg;
    profile->add_option("--route", route_arg, "restrict to route ENTRY-EXIT");
    segment->add_option("--route", route_arg, "restrict to route ENTRY-EXIT");
    intervals->add_option("--route", route_arg, "route ENTRY-EXIT")->required();
    analyze->add_option("--route", route_arg, "restrict to route ENTRY-EXIT");

    std::string period_arg;
    intervals->add_option("--period", period_arg, "period START-END (hour bins)");
    analyze->add_option("--period", period_arg, "period START-END (hour bins)");

    std::string generator, hourly_rates_arg, monthly_mult_arg, start_date, sim_route_arg;
    std::optional<double> rate, duration_hours, mix_p, mix_lambda, mix_mu, mix_sigma;
    std::optional<int> days;
    std::optional<std::size_t> n_events;
    simulate->add_option("--generator", generator, "homogeneous_poisson|nhpp|mixture_renewal");
    simulate->add_option("--rate", rate, "rate per hour (homogeneous)");
    simulate->add_option("--duration-hours", duration_hours, "duration (homogeneous)");
    simulate->add_option("--hourly-rates", hourly_rates_arg, "24 comma-separated rates (nhpp)");
    simulate->add_option("--monthly-multipliers", monthly_mult_arg,
                         "12 comma-separated factors (nhpp)");
    simulate->add_option("--days", days, "number of days (nhpp)");
    simulate->add_option("--n", n_events, "number of gaps (mixture renewal)");
    simulate->add_option("--mix-p", mix_p, "mixture weight p");
    simulate->add_option("--mix-lambda", mix_lambda, "mixture exponential rate");
    simulate->add_option("--mix-mu", mix_mu, "mixture normal mean");
    simulate->add_option("--mix-sigma", mix_sigma, "mixture normal stddev");
    simulate->add_option("--start-date", start_date, "stream start date YYYY-MM-DD");
    simulate->add_option("--sim-route", sim_route_arg, "generated route ENTRY-EXIT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        airstat::AnalysisConfig cfg;
        if (!config_path.empty()) cfg = airstat::load_config(config_path);
        if (!inputs_flag.empty()) cfg.inputs = inputs_flag;
        if (seed_flag) cfg.seed = *seed_flag;
        if (alpha_flag) cfg.alpha = *alpha_flag;
        if (const char* env = std::getenv("AIRSTAT_OUT_DIR")) cfg.out_dir = env;
        if (out_dir_flag) cfg.out_dir = *out_dir_flag;  // flags win over the env var

        if (generator.empty() == false) cfg.simulate.generator = generator;
        if (rate) cfg.simulate.rate_per_hour = *rate;
        if (duration_hours) cfg.simulate.duration_hours = *duration_hours;
        if (!hourly_rates_arg.empty()) {
            const auto rates = parse_rate_list(hourly_rates_arg, 24, "--hourly-rates");
            std::copy(rates.begin(), rates.end(), cfg.simulate.hourly_rates.begin());
        }
        if (!monthly_mult_arg.empty()) {
            const auto mult = parse_rate_list(monthly_mult_arg, 12, "--monthly-multipliers");
            std::array<double, 12> arr{};
            std::copy(mult.begin(), mult.end(), arr.begin());
            cfg.simulate.monthly_multipliers = arr;
        }
        if (days) cfg.simulate.days = *days;
        if (n_events) cfg.simulate.n = *n_events;
        if (mix_p) cfg.simulate.mixture.p = *mix_p;
        if (mix_lambda) cfg.simulate.mixture.lambda = *mix_lambda;
        if (mix_mu) cfg.simulate.mixture.mu = *mix_mu;
        if (mix_sigma) cfg.simulate.mixture.sigma = *mix_sigma;
        if (!start_date.empty()) cfg.simulate.start_date = start_date;
        if (!sim_route_arg.empty()) cfg.simulate.route = airstat::parse_route_arg(sim_route_arg);
        cfg.validate();

        std::optional<airstat::RouteKey> route;
        if (!route_arg.empty()) route = airstat::parse_route_arg(route_arg);

        airstat::PeriodFilter period;
        if (!period_arg.empty()) {
            const auto dash = period_arg.find('-');
            if (dash == std::string::npos)
                throw airstat::ConfigError("--period must be START-END, got '" + period_arg + "'");
            period = {std::stoul(period_arg.substr(0, dash)),
                      std::stoul(period_arg.substr(dash + 1))};
        }

        if (ingest->parsed()) return airstat::cmd_ingest(cfg);
        if (profile->parsed()) return airstat::cmd_profile(cfg, kind, route);
        if (segment->parsed()) return airstat::cmd_segment(cfg, kind, route);
        if (intervals->parsed()) return airstat::cmd_intervals(cfg, *route, period);
        if (analyze->parsed()) return airstat::cmd_analyze(cfg, route, period);
        if (simulate->parsed()) return airstat::cmd_simulate(cfg);
        std::cerr << "no subcommand given\n";
        return 1;
    } catch (const airstat::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const airstat::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
