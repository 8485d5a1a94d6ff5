#include "airstat/commands.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "airstat/errors.hpp"
#include "airstat/intervals.hpp"
#include "airstat/rng.hpp"
#include "airstat/streamgen.hpp"
#include "airstat/traffic_profile.hpp"

namespace airstat {

namespace fs = std::filesystem;

namespace {

// Component tags for seed splitting; every stream of randomness derives
// from the one top-level seed.
constexpr std::uint64_t kSimulateTag = 1;
constexpr std::uint64_t kSolverTag = 2;

std::ofstream open_out(const fs::path& path) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write output file: " + path.string());
    return out;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

std::string sanitize(const std::string& token) {
    std::string s = token;
    for (char& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') c = '_';
    return s;
}

std::string route_slug(const RouteKey& route) {
    return sanitize(route.entry_point) + "__" + sanitize(route.exit_point);
}

std::string period_slug(const StationaryPeriod& p) {
    return "h" + std::to_string(p.start_bin) + "-" + std::to_string(p.end_bin);
}

ParseResult load_inputs(const AnalysisConfig& cfg) {
    if (cfg.inputs.empty()) throw ConfigError("no input files configured");
    ParseResult merged;
    for (const std::string& path : cfg.inputs) {
        ParseResult one = parse_records_file(path, cfg.schema);
        merged.report.accepted += one.report.accepted;
        merged.report.rejected += one.report.rejected;
        merged.report.rejections.insert(merged.report.rejections.end(),
                                        one.report.rejections.begin(),
                                        one.report.rejections.end());
        merged.report.warnings.insert(merged.report.warnings.end(),
                                      one.report.warnings.begin(), one.report.warnings.end());
        merged.records.insert(merged.records.end(), one.records.begin(), one.records.end());
    }
    std::stable_sort(merged.records.begin(), merged.records.end(),
                     [](const FlightRecord& a, const FlightRecord& b) {
                         return a.entry_time < b.entry_time;
                     });
    return merged;
}

void require_known_route(const std::vector<FlightRecord>& records, const RouteKey& route) {
    const auto groups = group_by_route(records);
    if (groups.contains(route)) return;
    std::ostringstream msg;
    msg << "unknown route " << to_string(route) << "; available:";
    std::size_t shown = 0;
    for (const auto& [key, group] : groups) {
        msg << ' ' << to_string(key);
        if (++shown == 20) {
            msg << " ...";
            break;
        }
    }
    throw DataError(msg.str());
}

ProfileKind kind_from_string(const std::string& kind) {
    if (kind == "monthly") return ProfileKind::monthly;
    if (kind == "hourly") return ProfileKind::hourly;
    if (kind == "weekday") return ProfileKind::weekday;
    throw ConfigError("unknown profile kind '" + kind + "' (monthly|hourly|weekday)");
}

BinProfile build_profile(const std::vector<FlightRecord>& records, ProfileKind kind,
                         const std::optional<RouteKey>& route) {
    if (route) require_known_route(records, *route);
    switch (kind) {
        case ProfileKind::monthly: return monthly_profile(records);
        case ProfileKind::weekday: return weekday_profile(records);
        case ProfileKind::hourly: return hourly_profile(records, route);
    }
    throw ConfigError("unreachable profile kind");
}

nlohmann::json period_json(const StationaryPeriod& p) {
    return {{"kind", to_string(p.kind)}, {"start", p.start_bin},
            {"end", p.end_bin},         {"intensity", p.intensity},
            {"n_events", p.n_events},   {"p_value", p.p_value}};
}

bool period_matches(const StationaryPeriod& p, const PeriodFilter& filter) {
    return !filter || (p.start_bin == filter->first && p.end_bin == filter->second);
}

}  // namespace

RouteKey parse_route_arg(const std::string& text) {
    const auto dash = text.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == text.size())
        throw ConfigError("route must be written ENTRY-EXIT, got '" + text + "'");
    return RouteKey{text.substr(0, dash), text.substr(dash + 1)};
}

int cmd_ingest(const AnalysisConfig& cfg) {
    const ParseResult result = load_inputs(cfg);
    {
        std::ofstream out = open_out(fs::path(cfg.out_dir) / "records.csv");
        write_canonical_csv(result.records, out);
    }
    write_json(fs::path(cfg.out_dir) / "parse_report.json", report_to_json(result.report));
    std::cout << "ingested " << result.report.accepted << " records, rejected "
              << result.report.rejected << " lines\n";
    return 0;
}

int cmd_profile(const AnalysisConfig& cfg, const std::string& kind,
                const std::optional<RouteKey>& route) {
    const ProfileKind k = kind_from_string(kind);
    const ParseResult data = load_inputs(cfg);
    const BinProfile profile = build_profile(data.records, k, route);

    std::string name = std::string("profile_") + to_string(k);
    if (route) name += "_" + route_slug(*route);
    std::ofstream out = open_out(fs::path(cfg.out_dir) / (name + ".csv"));
    profile_to_csv(profile, out);
    std::cout << name << ".csv: " << profile.bins.size() << " bins, "
              << profile.total_count() << " records\n";
    return 0;
}

int cmd_segment(const AnalysisConfig& cfg, const std::string& kind,
                const std::optional<RouteKey>& route) {
    const ProfileKind k = kind_from_string(kind);
    const ParseResult data = load_inputs(cfg);
    const BinProfile profile = build_profile(data.records, k, route);
    const std::vector<StationaryPeriod> periods =
        segment_stationary(profile, cfg.alpha, cfg.min_expected);

    std::string name = std::string("segments_") + to_string(k);
    if (route) name += "_" + route_slug(*route);
    write_json(fs::path(cfg.out_dir) / (name + ".json"),
               {{"kind", to_string(k)},
                {"alpha", cfg.alpha},
                {"periods", periods_to_json(periods)}});
    std::cout << name << ".json: " << periods.size() << " stationary periods\n";
    return 0;
}

int cmd_intervals(const AnalysisConfig& cfg, const RouteKey& route, const PeriodFilter& filter) {
    const ParseResult data = load_inputs(cfg);
    require_known_route(data.records, route);
    const BinProfile profile = hourly_profile(data.records, route);
    const std::vector<StationaryPeriod> periods =
        segment_stationary(profile, cfg.alpha, cfg.min_expected);

    std::size_t written = 0;
    for (const StationaryPeriod& period : periods) {
        if (!period_matches(period, filter)) continue;
        const IntervalSample sample = extract_intervals(data.records, route, period);
        const std::string base = "intervals_" + route_slug(route) + "_" + period_slug(period);
        {
            std::ofstream out = open_out(fs::path(cfg.out_dir) / (base + ".csv"));
            intervals_to_csv(sample, out);
        }
        write_json(fs::path(cfg.out_dir) / (base + ".meta.json"),
                   interval_metadata_json(sample));
        ++written;
    }
    if (filter && written == 0)
        throw DataError("no stationary period matches " + std::to_string(filter->first) + "-" +
                        std::to_string(filter->second) + " for route " + to_string(route));
    std::cout << "wrote interval samples for " << written << " periods\n";
    return 0;
}

int cmd_analyze(const AnalysisConfig& cfg, const std::optional<RouteKey>& route,
                const PeriodFilter& filter) {
    const ParseResult data = load_inputs(cfg);
    const auto groups = group_by_route(data.records);

    std::vector<RouteKey> routes;
    if (route) {
        require_known_route(data.records, *route);
        routes.push_back(*route);
    } else {
        for (const auto& [key, group] : groups) routes.push_back(key);
    }

    SolverConfig solver = cfg.solver;
    solver.seed = Rng::splitmix64_at(cfg.seed, kSolverTag);
    const GofConfig gof_config{cfg.gof_bins, cfg.min_expected};

    nlohmann::json index_entries = nlohmann::json::array();
    for (const RouteKey& key : routes) {
        const BinProfile profile = hourly_profile(data.records, key);
        const std::vector<StationaryPeriod> periods =
            segment_stationary(profile, cfg.alpha, cfg.min_expected);
        for (const StationaryPeriod& period : periods) {
            if (!period_matches(period, filter)) continue;
            const IntervalSample sample = extract_intervals(data.records, key, period);
            const std::string base = route_slug(key) + "__" + period_slug(period);

            nlohmann::json report = {
                {"route", {{"entry", key.entry_point}, {"exit", key.exit_point}}},
                {"period", period_json(period)},
                {"intervals",
                 {{"n", sample.intervals.size()},
                  {"n_zero_dropped", sample.n_zero_dropped},
                  {"n_boundary_dropped", sample.n_boundary_dropped}}}};

            std::string status = "ok";
            if (sample.intervals.size() < 30) {
                status = "skipped";
                report["skip_reason"] = "insufficient intervals (n=" +
                                        std::to_string(sample.intervals.size()) +
                                        ", need 30)";
            } else {
                const ExponentialFit exp_fit = fit_exponential(sample.intervals);
                const GofResult exp_gof =
                    chi_square_gof_exponential(sample.intervals, exp_fit, gof_config);
                report["exponential"] = exponential_fit_json(exp_fit, &exp_gof);
                const bool accepted = exp_gof.p_value >= cfg.alpha;
                report["exponential_accepted"] = accepted;
                {
                    std::ofstream out =
                        open_out(fs::path(cfg.out_dir) / ("hist_" + base + "_exp.csv"));
                    gof_bins_to_csv(exp_gof, out);
                }
                if (accepted) {
                    report["mixture"] = nullptr;
                } else if (sample.intervals.size() < cfg.solver.min_sample) {
                    report["mixture"] =
                        "skipped: insufficient intervals for mixture fit (n=" +
                        std::to_string(sample.intervals.size()) + ", need " +
                        std::to_string(cfg.solver.min_sample) + ")";
                } else {
                    const MixtureFit mix = fit_mixture_mom(sample.intervals, solver);
                    const GofResult mix_gof =
                        chi_square_gof_mixture(sample.intervals, mix.params, gof_config);
                    report["mixture"] =
                        mixture_fit_json(mix, sample.intervals.size(), &mix_gof);
                    std::ofstream out =
                        open_out(fs::path(cfg.out_dir) / ("hist_" + base + "_mix.csv"));
                    gof_bins_to_csv(mix_gof, out);
                }
            }
            report["status"] = status;

            const std::string file = "report_" + base + ".json";
            write_json(fs::path(cfg.out_dir) / file, report);
            index_entries.push_back({{"route", to_string(key)},
                                     {"period", period_slug(period)},
                                     {"file", file},
                                     {"status", status}});
        }
    }

    write_json(fs::path(cfg.out_dir) / "index.json",
               {{"alpha", cfg.alpha}, {"seed", cfg.seed}, {"reports", index_entries}});
    std::cout << "analyzed " << index_entries.size() << " (route, period) pairs\n";
    return 0;
}

int cmd_simulate(const AnalysisConfig& cfg) {
    const SimulateSpec& spec = cfg.simulate;
    const auto start_date = parse_date(spec.start_date);
    if (!start_date) throw ConfigError("simulate: invalid start_date '" + spec.start_date + "'");
    const Minutes start = minutes_at(*start_date, 0, 0);
    const std::uint64_t seed = Rng::splitmix64_at(cfg.seed, kSimulateTag);

    GeneratedStream stream;
    if (spec.generator == "homogeneous_poisson") {
        stream = gen_homogeneous_poisson(spec.rate_per_hour, start, spec.duration_hours,
                                         spec.route, seed);
    } else if (spec.generator == "nhpp") {
        IntensityProfile profile{spec.hourly_rates, spec.monthly_multipliers};
        if (!profile.valid())
            throw ConfigError("simulate: nhpp needs 24 finite hourly rates, at least one > 0");
        stream = gen_nhpp(profile, start, spec.days, spec.route, seed);
    } else if (spec.generator == "mixture_renewal") {
        if (!spec.mixture.valid())
            throw ConfigError("simulate: invalid mixture parameters (0<p<1, lambda>0, sigma>0)");
        stream = gen_mixture_renewal(spec.mixture, spec.n, start, spec.route, seed);
    } else {
        throw ConfigError("simulate: unknown generator '" + spec.generator +
                          "' (homogeneous_poisson|nhpp|mixture_renewal)");
    }

    {
        std::ofstream out = open_out(fs::path(cfg.out_dir) / "stream.csv");
        write_canonical_csv(stream.records, out);
    }
    write_json(fs::path(cfg.out_dir) / "truth.json", stream.truth);
    std::cout << "simulated " << stream.records.size() << " records (seed " << cfg.seed
              << ")\n";
    return 0;
}

}  // namespace airstat
