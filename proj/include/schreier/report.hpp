#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "schreier/io.hpp"

namespace schreier {

/// Verdict of one check, with counts and a few sample violations.
struct CheckResult {
    std::string id;
    std::string title;
    bool passed = true;
    std::size_t cases = 0;
    std::size_t violations = 0;
    Json details = Json::object();
    Json witnesses = Json::array();
    std::chrono::milliseconds elapsed{0};  // reported under "timestamp" only

    static constexpr std::size_t kMaxWitnesses = 8;

    /// Counts a failed case; keeps its witness while there is room.
    void violation(Json witness);
    /// Counts a case and records a violation when `ok` is false.
    void expect(bool ok, const std::function<Json()>& witness);
};

Json to_json(const CheckResult& c);

struct Report {
    std::vector<std::string> argv;
    Json config = Json::object();
    std::vector<CheckResult> checks;
    Json extra = Json::object();  // command-specific payload (witnesses, tables)
    std::chrono::system_clock::time_point started = std::chrono::system_clock::now();
    std::chrono::milliseconds elapsed{0};

    bool passed() const;
};

/// {version, command, config, checks, [result], summary, timestamp}. The
/// "timestamp" object holds every wall-clock value and is the only part that
/// may differ between two runs of the same command.
Json to_json(const Report& r);

/// Human-readable rendering, one line per check.
std::string render_text(const Report& r);

/// The report with its "timestamp" removed.
Json without_timestamp(Json j);

/// Equal modulo timestamp.
bool same_report(const Json& a, const Json& b);

}  // namespace schreier
