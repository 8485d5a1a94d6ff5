#pragma once

#include <compare>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "airstat/calendar.hpp"

namespace airstat {

// Ordered (entry point, exit point) pair; (A,B) and (B,A) are distinct routes.
struct RouteKey {
    std::string entry_point;
    std::string exit_point;
    auto operator<=>(const RouteKey&) const = default;
};

std::string to_string(const RouteKey& route);

// One transit record: route endpoints, identity fields and the entry
// timestamp at minute resolution.
struct FlightRecord {
    Date registration_date;
    std::string aircraft_type;
    std::string flight_code;
    std::string origin;
    std::string destination;
    std::string entry_point;
    std::string exit_point;
    Minutes entry_time = 0;

    bool operator==(const FlightRecord&) const = default;
};

RouteKey route_key(const FlightRecord& record);

struct ParseIssue {
    std::size_t line = 0;  // 1-based line number in the source file
    std::string reason;
};

struct ParseReport {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::vector<ParseIssue> rejections;
    std::vector<ParseIssue> warnings;  // accepted records worth flagging
};

// Column mapping: record field name -> column header in the file.
// Required fields: date, entry_point, exit_point, entry_time.
// Optional fields default to the empty token when unmapped or absent.
struct ParseSchema {
    char delimiter = ',';
    std::map<std::string, std::string> columns;

    static ParseSchema defaults();
};

struct ParseResult {
    std::vector<FlightRecord> records;  // sorted by entry_time ascending
    ParseReport report;
};

ParseResult parse_records(std::istream& source, const ParseSchema& schema);
ParseResult parse_records_file(const std::string& path, const ParseSchema& schema);

// Groups preserve the global time order; the union of groups is the input.
std::map<RouteKey, std::vector<FlightRecord>> group_by_route(
    const std::vector<FlightRecord>& records);

// Canonical dump, fixed column order:
// date,entry_time,entry_point,exit_point,aircraft_type,flight_code,origin,destination
void write_canonical_csv(const std::vector<FlightRecord>& records, std::ostream& out);

nlohmann::json report_to_json(const ParseReport& report);

}  // namespace airstat
