#include "airstat/flight_records.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "airstat/errors.hpp"

namespace airstat {

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, delimiter)) fields.push_back(field);
    if (!line.empty() && line.back() == delimiter) fields.emplace_back();
    return fields;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

constexpr const char* kRequiredFields[] = {"date", "entry_point", "exit_point", "entry_time"};
constexpr const char* kOptionalFields[] = {"aircraft_type", "flight_code", "origin", "destination"};

}  // namespace

std::string to_string(const RouteKey& route) {
    return route.entry_point + "-" + route.exit_point;
}

RouteKey route_key(const FlightRecord& record) {
    return RouteKey{record.entry_point, record.exit_point};
}

ParseSchema ParseSchema::defaults() {
    ParseSchema schema;
    for (const char* f : kRequiredFields) schema.columns[f] = f;
    for (const char* f : kOptionalFields) schema.columns[f] = f;
    return schema;
}

ParseResult parse_records(std::istream& source, const ParseSchema& schema) {
    if (!source) throw ConfigError("parse_records: unreadable source stream");

    std::string header_line;
    if (!std::getline(source, header_line)) {
        // Empty file: no header, no data.
        return {};
    }
    const std::vector<std::string> header = split_line(header_line, schema.delimiter);

    auto column_index = [&](const std::string& field) -> int {
        const auto it = schema.columns.find(field);
        if (it == schema.columns.end()) return -1;
        for (std::size_t i = 0; i < header.size(); ++i)
            if (trim(header[i]) == it->second) return static_cast<int>(i);
        return -1;
    };

    std::map<std::string, int> index;
    for (const char* f : kRequiredFields) {
        const int idx = column_index(f);
        if (idx < 0)
            throw ConfigError(std::string("parse_records: required column for field '") + f +
                              "' not found in header");
        index[f] = idx;
    }
    for (const char* f : kOptionalFields) index[f] = column_index(f);

    ParseResult result;
    std::string line;
    std::size_t line_no = 1;  // header was line 1
    while (std::getline(source, line)) {
        ++line_no;
        auto reject = [&](const std::string& reason) {
            ++result.report.rejected;
            result.report.rejections.push_back({line_no, reason});
        };

        if (trim(line).empty()) {
            reject("empty line");
            continue;
        }
        const std::vector<std::string> fields = split_line(line, schema.delimiter);
        auto get = [&](const char* f) -> std::string {
            const int idx = index[f];
            if (idx < 0 || static_cast<std::size_t>(idx) >= fields.size()) return "";
            return trim(fields[static_cast<std::size_t>(idx)]);
        };

        const std::string date_text = get("date");
        const auto date = parse_date(date_text);
        if (!date) {
            reject("invalid date '" + date_text + "'");
            continue;
        }

        FlightRecord rec;
        rec.registration_date = *date;
        rec.entry_point = get("entry_point");
        rec.exit_point = get("exit_point");
        if (rec.entry_point.empty()) {
            reject("missing entry_point");
            continue;
        }
        if (rec.exit_point.empty()) {
            reject("missing exit_point");
            continue;
        }

        const std::string time_text = get("entry_time");
        std::optional<int> tod = parse_hhmm(time_text);
        if (!tod) {
            // Full timestamp form: "YYYY-MM-DD HH:MM" or "YYYY-MM-DDTHH:MM".
            if (time_text.size() >= 16) {
                const auto tdate = parse_date(time_text.substr(0, 10));
                const auto ttod = parse_hhmm(trim(time_text.substr(11)));
                if (tdate && ttod && (time_text[10] == ' ' || time_text[10] == 'T')) {
                    if (*tdate != rec.registration_date) {
                        reject("entry_time date differs from registration date");
                        continue;
                    }
                    tod = ttod;
                }
            }
            if (!tod) {
                reject("invalid entry_time '" + time_text + "'");
                continue;
            }
        }
        rec.entry_time = minutes_at(rec.registration_date, *tod / 60, *tod % 60);

        rec.aircraft_type = get("aircraft_type");
        rec.flight_code = get("flight_code");
        rec.origin = get("origin");
        rec.destination = get("destination");

        if (rec.entry_point == rec.exit_point)
            result.report.warnings.push_back({line_no, "entry_point equals exit_point"});

        ++result.report.accepted;
        result.records.push_back(std::move(rec));
    }

    std::stable_sort(result.records.begin(), result.records.end(),
                     [](const FlightRecord& a, const FlightRecord& b) {
                         return a.entry_time < b.entry_time;
                     });
    return result;
}

ParseResult parse_records_file(const std::string& path, const ParseSchema& schema) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open input file: " + path);
    return parse_records(in, schema);
}

std::map<RouteKey, std::vector<FlightRecord>> group_by_route(
    const std::vector<FlightRecord>& records) {
    std::map<RouteKey, std::vector<FlightRecord>> groups;
    for (const FlightRecord& rec : records) groups[route_key(rec)].push_back(rec);
    return groups;
}

void write_canonical_csv(const std::vector<FlightRecord>& records, std::ostream& out) {
    out << "date,entry_time,entry_point,exit_point,aircraft_type,flight_code,origin,destination\n";
    for (const FlightRecord& r : records) {
        const int tod = hour_of(r.entry_time) * 60 + minute_of(r.entry_time);
        out << format_date(r.registration_date) << ',' << format_hhmm(tod) << ','
            << r.entry_point << ',' << r.exit_point << ',' << r.aircraft_type << ','
            << r.flight_code << ',' << r.origin << ',' << r.destination << '\n';
    }
}

nlohmann::json report_to_json(const ParseReport& report) {
    nlohmann::json issues = nlohmann::json::array();
    for (const ParseIssue& i : report.rejections)
        issues.push_back({{"line", i.line}, {"reason", i.reason}});
    nlohmann::json warnings = nlohmann::json::array();
    for (const ParseIssue& i : report.warnings)
        warnings.push_back({{"line", i.line}, {"reason", i.reason}});
    return {{"accepted", report.accepted},
            {"rejected", report.rejected},
            {"rejections", issues},
            {"warnings", warnings}};
}

}  // namespace airstat
