#include "schreier/report.hpp"

#include <ctime>
#include <sstream>

namespace schreier {

void CheckResult::violation(Json witness) {
    ++violations;
    passed = false;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(witness));
}

void CheckResult::expect(bool ok, const std::function<Json()>& witness) {
    ++cases;
    if (!ok) violation(witness());
}

Json to_json(const CheckResult& c) {
    return {{"id", c.id},
            {"title", c.title},
            {"passed", c.passed},
            {"cases", c.cases},
            {"violations", c.violations},
            {"details", c.details},
            {"witnesses", c.witnesses}};
}

bool Report::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

namespace {

std::string utc(std::chrono::system_clock::time_point t) {
    const std::time_t secs = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

Json to_json(const Report& r) {
    Json checks = Json::array();
    Json timings = Json::object();
    std::size_t passed = 0;
    for (const auto& c : r.checks) {
        checks.push_back(to_json(c));
        timings[c.id] = c.elapsed.count();
        if (c.passed) ++passed;
    }
    Json j = {{"version", kFormatVersion},
              {"command", {{"argv", r.argv}}},
              {"config", r.config},
              {"checks", std::move(checks)}};
    if (!r.extra.empty()) j["result"] = r.extra;
    j["summary"] = {{"verdict", r.passed() ? "pass" : "fail"},
                    {"checks", r.checks.size()},
                    {"passed", passed},
                    {"failed", r.checks.size() - passed}};
    j["timestamp"] = {{"utc", utc(r.started)}, {"elapsed_ms", r.elapsed.count()}, {"check_ms", std::move(timings)}};
    return j;
}

std::string render_text(const Report& r) {
    std::ostringstream out;
    for (const auto& c : r.checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.id << "  " << c.title << "  (" << c.cases << " cases";
        if (c.violations) out << ", " << c.violations << " violations";
        out << ")\n";
        for (const auto& w : c.witnesses) out << "     witness: " << w.dump() << "\n";
    }
    std::size_t passed = 0;
    for (const auto& c : r.checks) passed += c.passed;
    out << (r.passed() ? "verdict: pass" : "verdict: fail") << " (" << passed << "/" << r.checks.size()
        << " checks)\n";
    return out.str();
}

Json without_timestamp(Json j) {
    if (j.is_object()) j.erase("timestamp");
    return j;
}

bool same_report(const Json& a, const Json& b) { return without_timestamp(a) == without_timestamp(b); }

}  // namespace schreier
