#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "airstat/commands.hpp"
#include "airstat/errors.hpp"

using namespace airstat;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("airstat_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

nlohmann::json slurp_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

AnalysisConfig base_config(const TempDir& dir) {
    AnalysisConfig cfg;
    cfg.out_dir = (dir.path / "out").string();
    cfg.seed = 20020101;
    return cfg;
}

}  // namespace

TEST_CASE("ingest writes the canonical dump and the parse report") {
    TempDir dir("ingest");
    const std::string csv =
        "date,entry_time,entry_point,exit_point\n"
        "2002-03-05,13:10,NINTA,OPOKA\n"
        "bad line\n"
        "2002-03-05,09:00,NINTA,OPOKA\n"
        "2002-03-05,not-a-time,NINTA,OPOKA\n";
    write_file(dir.path / "in.csv", csv);

    AnalysisConfig cfg = base_config(dir);
    cfg.inputs = {(dir.path / "in.csv").string()};
    CHECK(cmd_ingest(cfg) == 0);

    const nlohmann::json report = slurp_json(fs::path(cfg.out_dir) / "parse_report.json");
    CHECK(report["accepted"] == 2);
    CHECK(report["rejected"] == 2);
    CHECK(report["rejections"].size() == 2);

    const std::string dump = slurp(fs::path(cfg.out_dir) / "records.csv");
    CHECK(dump.find("09:00") < dump.find("13:10"));  // sorted
}

TEST_CASE("missing input file raises a config error (exit code 1 contract)") {
    TempDir dir("missing");
    AnalysisConfig cfg = base_config(dir);
    cfg.inputs = {(dir.path / "nope.csv").string()};
    CHECK_THROWS_AS(cmd_ingest(cfg), ConfigError);
    AnalysisConfig empty = base_config(dir);
    CHECK_THROWS_AS(cmd_ingest(empty), ConfigError);
}

TEST_CASE("simulate then ingest is a fixed point of the canonical form") {
    TempDir dir("fixedpoint");
    AnalysisConfig cfg = base_config(dir);
    cfg.simulate.generator = "homogeneous_poisson";
    cfg.simulate.rate_per_hour = 5.0;
    cfg.simulate.duration_hours = 72.0;
    CHECK(cmd_simulate(cfg) == 0);

    const std::string stream_csv = slurp(fs::path(cfg.out_dir) / "stream.csv");

    AnalysisConfig ingest_cfg = base_config(dir);
    ingest_cfg.inputs = {(fs::path(cfg.out_dir) / "stream.csv").string()};
    ingest_cfg.out_dir = (dir.path / "out2").string();
    CHECK(cmd_ingest(ingest_cfg) == 0);
    CHECK(slurp(fs::path(ingest_cfg.out_dir) / "records.csv") == stream_csv);
}

TEST_CASE("simulate is byte-deterministic in the seed") {
    TempDir dir("simdet");
    AnalysisConfig cfg = base_config(dir);
    cfg.simulate.generator = "mixture_renewal";
    cfg.simulate.n = 5000;
    CHECK(cmd_simulate(cfg) == 0);
    const std::string first = slurp(fs::path(cfg.out_dir) / "stream.csv");
    const std::string first_truth = slurp(fs::path(cfg.out_dir) / "truth.json");

    cfg.out_dir = (dir.path / "out_b").string();
    CHECK(cmd_simulate(cfg) == 0);
    CHECK(slurp(fs::path(cfg.out_dir) / "stream.csv") == first);
    CHECK(slurp(fs::path(cfg.out_dir) / "truth.json") == first_truth);

    cfg.out_dir = (dir.path / "out_c").string();
    cfg.seed = 9;
    CHECK(cmd_simulate(cfg) == 0);
    CHECK(slurp(fs::path(cfg.out_dir) / "stream.csv") != first);
}

TEST_CASE("zero-duration simulation writes an empty stream with a header") {
    TempDir dir("zerodur");
    AnalysisConfig cfg = base_config(dir);
    cfg.simulate.generator = "homogeneous_poisson";
    cfg.simulate.duration_hours = 0.0;
    CHECK(cmd_simulate(cfg) == 0);
    CHECK(slurp(fs::path(cfg.out_dir) / "stream.csv") ==
          "date,entry_time,entry_point,exit_point,aircraft_type,flight_code,origin,destination\n");
}

TEST_CASE("profile command writes plot data; monthly of empty input is header-only") {
    TempDir dir("profile");
    write_file(dir.path / "empty.csv", "date,entry_time,entry_point,exit_point\n");
    AnalysisConfig cfg = base_config(dir);
    cfg.inputs = {(dir.path / "empty.csv").string()};
    CHECK(cmd_profile(cfg, "monthly", std::nullopt) == 0);
    CHECK(slurp(fs::path(cfg.out_dir) / "profile_monthly.csv") ==
          "label,count,exposure_hours,rate_per_hour\n");

    write_file(dir.path / "one.csv",
               "date,entry_time,entry_point,exit_point\n2002-03-05,13:10,NINTA,OPOKA\n");
    cfg.inputs = {(dir.path / "one.csv").string()};
    CHECK(cmd_profile(cfg, "hourly", std::nullopt) == 0);
    std::istringstream hourly(slurp(fs::path(cfg.out_dir) / "profile_hourly.csv"));
    std::string line;
    std::size_t rows = 0;
    while (std::getline(hourly, line)) ++rows;
    CHECK(rows == 25);  // header + 24 bins
}

TEST_CASE("unknown route raises a data error with a hint") {
    TempDir dir("unknownroute");
    write_file(dir.path / "one.csv",
               "date,entry_time,entry_point,exit_point\n2002-03-05,13:10,NINTA,OPOKA\n");
    AnalysisConfig cfg = base_config(dir);
    cfg.inputs = {(dir.path / "one.csv").string()};
    try {
        cmd_profile(cfg, "hourly", RouteKey{"NO", "WHERE"});
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("NINTA-OPOKA") != std::string::npos);
    }
}

TEST_CASE("full pipeline on a Poisson fixture accepts the exponential") {
    TempDir dir("poisson");
    AnalysisConfig cfg = base_config(dir);
    cfg.simulate.generator = "homogeneous_poisson";
    cfg.simulate.rate_per_hour = 0.5;
    cfg.simulate.duration_hours = 120.0 * 24.0;
    cfg.simulate.route = {"NINTA", "OPOKA"};
    CHECK(cmd_simulate(cfg) == 0);

    AnalysisConfig run = base_config(dir);
    run.inputs = {(fs::path(cfg.out_dir) / "stream.csv").string()};
    run.out_dir = (dir.path / "analysis").string();
    CHECK(cmd_analyze(run, std::nullopt, std::nullopt) == 0);

    const nlohmann::json index = slurp_json(fs::path(run.out_dir) / "index.json");
    REQUIRE(index["reports"].size() >= 1);
    bool found_ok = false;
    for (const auto& entry : index["reports"]) {
        const nlohmann::json report =
            slurp_json(fs::path(run.out_dir) / entry["file"].get<std::string>());
        if (entry["status"] == "ok") {
            found_ok = true;
            CHECK(report["exponential_accepted"] == true);
            CHECK(report["mixture"].is_null());
            const double lambda = report["exponential"]["params"]["lambda"].get<double>();
            // 0.5/h = 1/120 per minute
            CHECK(std::fabs(lambda - 1.0 / 120.0) / (1.0 / 120.0) < 0.15);
        }
    }
    CHECK(found_ok);
}

TEST_CASE("full pipeline on a mixture fixture rejects the exponential and fits the mix") {
    TempDir dir("mixture");
    AnalysisConfig cfg = base_config(dir);
    cfg.simulate.generator = "mixture_renewal";
    cfg.simulate.mixture = {0.45, 0.05, 90.0, 12.0};
    cfg.simulate.n = 15000;
    CHECK(cmd_simulate(cfg) == 0);

    AnalysisConfig run = base_config(dir);
    run.inputs = {(fs::path(cfg.out_dir) / "stream.csv").string()};
    run.out_dir = (dir.path / "analysis").string();
    CHECK(cmd_analyze(run, RouteKey{"NINTA", "OPOKA"}, std::nullopt) == 0);

    const nlohmann::json index = slurp_json(fs::path(run.out_dir) / "index.json");
    bool fitted = false;
    for (const auto& entry : index["reports"]) {
        if (entry["status"] != "ok") continue;
        const nlohmann::json report =
            slurp_json(fs::path(run.out_dir) / entry["file"].get<std::string>());
        if (report["exponential_accepted"] == true) continue;
        REQUIRE(report["mixture"].is_object());
        fitted = true;
        // End-to-end tolerance is wider than the solver's own: records are
        // minute-truncated and same-minute ties are dropped as zeros.
        const nlohmann::json params = report["mixture"]["params"];
        CHECK(std::fabs(params["p"].get<double>() - 0.45) <= 0.07);
        CHECK(std::fabs(params["lambda"].get<double>() - 0.05) / 0.05 <= 0.15);
        CHECK(std::fabs(params["mu"].get<double>() - 90.0) / 90.0 <= 0.15);
        CHECK(std::fabs(params["sigma"].get<double>() - 12.0) / 12.0 <= 0.15);
        CHECK(fs::exists(fs::path(run.out_dir) /
                         ("hist_" + entry["file"].get<std::string>().substr(7).substr(
                                        0, entry["file"].get<std::string>().size() - 12) +
                          "_mix.csv")));
    }
    CHECK(fitted);
}

TEST_CASE("alpha steers the accept/reject decision monotonically") {
    TempDir dir("alpha");
    AnalysisConfig cfg = base_config(dir);
    cfg.simulate.generator = "homogeneous_poisson";
    cfg.simulate.rate_per_hour = 0.5;
    cfg.simulate.duration_hours = 90.0 * 24.0;
    CHECK(cmd_simulate(cfg) == 0);

    auto accepted_count = [&](double alpha, const std::string& tag) {
        AnalysisConfig run = base_config(dir);
        run.inputs = {(fs::path(cfg.out_dir) / "stream.csv").string()};
        run.out_dir = (dir.path / tag).string();
        run.alpha = alpha;
        REQUIRE(cmd_analyze(run, std::nullopt, std::nullopt) == 0);
        int accepted = 0, total = 0;
        const nlohmann::json index = slurp_json(fs::path(run.out_dir) / "index.json");
        for (const auto& entry : index["reports"]) {
            if (entry["status"] != "ok") continue;
            const nlohmann::json report =
                slurp_json(fs::path(run.out_dir) / entry["file"].get<std::string>());
            ++total;
            if (report["exponential_accepted"] == true) ++accepted;
        }
        REQUIRE(total > 0);
        return std::pair<int, int>(accepted, total);
    };

    const auto [acc_tiny, total_tiny] = accepted_count(1e-9, "tiny");
    CHECK(acc_tiny == total_tiny);  // alpha -> 0 accepts everything
    const auto [acc_huge, total_huge] = accepted_count(0.999999, "huge");
    CHECK(acc_huge == 0);  // alpha -> 1 rejects everything
}

TEST_CASE("analyze is byte-deterministic for a fixed seed") {
    TempDir dir("repdet");
    AnalysisConfig cfg = base_config(dir);
    cfg.simulate.generator = "nhpp";
    cfg.simulate.hourly_rates.fill(0.3);
    for (int h = 13; h <= 17; ++h) cfg.simulate.hourly_rates[static_cast<std::size_t>(h)] = 3.0;
    cfg.simulate.days = 120;
    CHECK(cmd_simulate(cfg) == 0);

    auto run_into = [&](const std::string& tag) {
        AnalysisConfig run = base_config(dir);
        run.inputs = {(fs::path(cfg.out_dir) / "stream.csv").string()};
        run.out_dir = (dir.path / tag).string();
        REQUIRE(cmd_analyze(run, std::nullopt, std::nullopt) == 0);
        return run.out_dir;
    };
    const std::string a = run_into("a");
    const std::string b = run_into("b");

    const nlohmann::json index = slurp_json(fs::path(a) / "index.json");
    CHECK(slurp(fs::path(a) / "index.json") == slurp(fs::path(b) / "index.json"));
    for (const auto& entry : index["reports"]) {
        const std::string file = entry["file"].get<std::string>();
        CHECK(slurp(fs::path(a) / file) == slurp(fs::path(b) / file));
    }
}

TEST_CASE("segment and intervals commands write their artifacts") {
    TempDir dir("segint");
    AnalysisConfig cfg = base_config(dir);
    cfg.simulate.generator = "homogeneous_poisson";
    cfg.simulate.rate_per_hour = 2.0;
    cfg.simulate.duration_hours = 60.0 * 24.0;
    CHECK(cmd_simulate(cfg) == 0);

    AnalysisConfig run = base_config(dir);
    run.inputs = {(fs::path(cfg.out_dir) / "stream.csv").string()};
    run.out_dir = (dir.path / "work").string();
    CHECK(cmd_segment(run, "hourly", std::nullopt) == 0);
    const nlohmann::json segments = slurp_json(fs::path(run.out_dir) / "segments_hourly.json");
    CHECK(segments["kind"] == "hourly");
    REQUIRE(segments["periods"].size() >= 1);

    CHECK(cmd_intervals(run, RouteKey{"NINTA", "OPOKA"}, std::nullopt) == 0);
    const auto start = segments["periods"][0]["start"].get<std::size_t>();
    const auto end = segments["periods"][0]["end"].get<std::size_t>();
    const std::string base =
        "intervals_NINTA__OPOKA_h" + std::to_string(start) + "-" + std::to_string(end);
    CHECK(fs::exists(fs::path(run.out_dir) / (base + ".csv")));
    const nlohmann::json meta = slurp_json(fs::path(run.out_dir) / (base + ".meta.json"));
    CHECK(meta.contains("n_intervals"));
    CHECK(meta.contains("n_boundary_dropped"));

    CHECK_THROWS_AS(cmd_intervals(run, RouteKey{"NINTA", "OPOKA"},
                                  PeriodFilter({99, 99})),
                    DataError);
}

TEST_CASE("route argument parsing") {
    CHECK(parse_route_arg("NINTA-OPOKA") == RouteKey{"NINTA", "OPOKA"});
    CHECK_THROWS_AS(parse_route_arg("NINTA"), ConfigError);
    CHECK_THROWS_AS(parse_route_arg("-OPOKA"), ConfigError);
    CHECK_THROWS_AS(parse_route_arg("NINTA-"), ConfigError);
}

TEST_CASE("config loading applies defaults, overrides, and validation") {
    TempDir dir("config");
    write_file(dir.path / "cfg.json", R"({
        "inputs": ["a.csv"],
        "alpha": 0.1,
        "gof_bins": 12,
        "seed": 99,
        "out_dir": "somewhere",
        "solver": {"tolerance": 1e-9, "min_sample": 80},
        "simulate": {"generator": "nhpp", "days": 7,
                     "hourly_rates": [1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1]}
    })");
    const AnalysisConfig cfg = load_config((dir.path / "cfg.json").string());
    CHECK(cfg.alpha == 0.1);
    CHECK(cfg.gof_bins == 12);
    CHECK(cfg.seed == 99);
    CHECK(cfg.solver.tolerance == 1e-9);
    CHECK(cfg.solver.min_sample == 80);
    CHECK(cfg.solver.max_iterations == 2000);  // default kept
    CHECK(cfg.simulate.generator == "nhpp");
    CHECK(cfg.simulate.days == 7);

    write_file(dir.path / "bad.json", R"({"alpha": 1.5})");
    CHECK_THROWS_AS(load_config((dir.path / "bad.json").string()), ConfigError);
    write_file(dir.path / "notjson.json", "{nope");
    CHECK_THROWS_AS(load_config((dir.path / "notjson.json").string()), ConfigError);
    CHECK_THROWS_AS(load_config((dir.path / "absent.json").string()), ConfigError);
}
