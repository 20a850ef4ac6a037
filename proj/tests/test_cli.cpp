#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "schreier/catalog.hpp"
#include "schreier/io.hpp"

using namespace schreier;
namespace fs = std::filesystem;

namespace {

const fs::path kData = SCHREIER_DATA_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
    Json report;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Json report;
    const int code = cli::run(args, out, err, &report);
    return {code, out.str(), err.str(), report};
}

std::string data(const char* name) { return (kData / name).string(); }

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("schreier_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const char* name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST(Cli, DiagonalPointFails) {
    const auto r = run({data("diag_point.json")});
    EXPECT_EQ(r.code, cli::kCheckFailed);
    EXPECT_NE(r.out.find("UniquenessFails at element 3 (alpha 0, 1)"), std::string::npos);
    EXPECT_EQ(r.report.at("summary").at("verdict"), "fail");
    EXPECT_EQ(run({"schreier", data("diag_point.json")}).report.at("checks"), r.report.at("checks"));
}

TEST(Cli, SchreierPointsPass) {
    EXPECT_EQ(run({data("prod_point.json")}).code, cli::kPass);
    EXPECT_EQ(run({"schreier", "prod_B2_Z2"}).code, cli::kPass);
    EXPECT_EQ(run({"schreier", "builtin:semidirect_Bool_self"}).code, cli::kPass);
    EXPECT_EQ(run({"schreier", "diag_Bool"}).code, cli::kCheckFailed);
}

TEST(Cli, CatalogList) {
    const auto a = run({"catalog", "list"});
    EXPECT_EQ(a.code, cli::kPass);
    EXPECT_EQ(a.out.rfind("algebra zero\n", 0), 0u);
    EXPECT_NE(a.out.find("point diag_B2\n"), std::string::npos);
    EXPECT_EQ(run({"catalog", "list"}).out, a.out);
}

TEST(Cli, VerifyProtomodularity) {
    const auto r = run({"verify", "protomodularity", "--catalog", "builtin"});
    EXPECT_EQ(r.code, cli::kPass) << r.out;
    EXPECT_EQ(r.report.at("summary").at("checks"), 2);
}

TEST(Cli, VerifyRingBase) { EXPECT_EQ(run({"verify", "ring-base"}).code, cli::kPass); }

TEST(Cli, UsageErrors) {
    auto r = run({});
    EXPECT_EQ(r.code, cli::kUsageError);
    EXPECT_EQ(r.err.rfind("usage error:", 0), 0u);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kUsageError);
    EXPECT_EQ(run({"verify", "everything"}).code, cli::kUsageError);
    EXPECT_EQ(run({"search", "--goal", "Nothing"}).code, cli::kUsageError);
    EXPECT_EQ(run({"report", "compare", data("B2.json")}).code, cli::kUsageError);
}

TEST(Cli, DistinctDiagnostics) {
    auto malformed = run({"validate", data("bad_size.json")});
    EXPECT_EQ(malformed.code, cli::kUsageError);
    EXPECT_EQ(malformed.err.rfind("malformed input:", 0), 0u);

    auto missing = run({"validate", data("no_such_file.json")});
    EXPECT_EQ(missing.code, cli::kUsageError);
    EXPECT_EQ(missing.err.rfind("file error:", 0), 0u);

    auto guard = run({"--guard-homs", "1", "verify", "protomodularity"});
    EXPECT_EQ(guard.code, cli::kUsageError);
    EXPECT_EQ(guard.err.rfind("guard exceeded:", 0), 0u);

    auto unknown = run({"schreier", "no_such_point"});
    EXPECT_EQ(unknown.code, cli::kUsageError);
    EXPECT_EQ(unknown.err.rfind("error:", 0), 0u);
}

TEST(Cli, ValidateEveryDataFile) {
    for (const char* f : {"B2.json", "B2xB2.json", "diag_point.json", "prod_point.json", "pi1.json",
                          "b2_kills_z2.json", "b2xb2_kills_z2.json"})
        EXPECT_EQ(run({"validate", data(f)}).code, cli::kPass) << f;
}

TEST(Cli, RightAdjointAgainst) {
    const auto r = run({"radjoint", "mon", data("pi1.json"), data("b2xb2_kills_z2.json"), "--against",
                        data("b2_kills_z2.json")});
    EXPECT_EQ(r.code, cli::kPass) << r.out << r.err;
    EXPECT_EQ(r.report.at("summary").at("checks"), 4);
}

TEST_F(CliFiles, SemidirectThenActionRoundtrip) {
    ASSERT_EQ(run({"semidirect", data("b2_kills_z2.json"), "--out", path("p.json")}).code, cli::kPass);
    ASSERT_EQ(run({"action", path("p.json"), "--out", path("a.json")}).code, cli::kPass);
    EXPECT_EQ(std::get<MonoidAction>(load_action_file(path("a.json"))),
              std::get<MonoidAction>(load_action_file(data("b2_kills_z2.json"))));
}

TEST_F(CliFiles, JsonReportIsDeterministic) {
    ASSERT_EQ(run({"--json", path("a.json"), "verify", "ssfl"}).code, cli::kPass);
    ASSERT_EQ(run({"verify", "ssfl", "--json", path("b.json")}).code, cli::kPass);
    auto a = read_json_file(path("a.json"));
    auto b = read_json_file(path("b.json"));
    a.erase("timestamp");
    b.erase("timestamp");
    EXPECT_EQ(dump(a), dump(b));
    EXPECT_EQ(run({"report", "compare", path("a.json"), path("b.json")}).code, cli::kPass);
}

TEST_F(CliFiles, ReportReplay) {
    ASSERT_EQ(run({"--json", path("r.json"), "schreier", data("diag_point.json")}).code, cli::kCheckFailed);
    const auto replay = run({"--json", path("replay.json"), "report", "replay", path("r.json")});
    EXPECT_EQ(replay.code, cli::kPass) << replay.out;
    EXPECT_EQ(run({"report", "replay", path("replay.json")}).code, cli::kUsageError);
}

TEST_F(CliFiles, CompareDetectsDifferences) {
    ASSERT_EQ(run({"--json", path("a.json"), "schreier", "diag_B2"}).code, cli::kCheckFailed);
    ASSERT_EQ(run({"--json", path("b.json"), "schreier", "prod_B2_Z2"}).code, cli::kPass);
    EXPECT_EQ(run({"report", "compare", path("a.json"), path("b.json")}).code, cli::kCheckFailed);
}

TEST_F(CliFiles, SearchWitnessesReplay) {
    const auto r = run({"search", "--goal", "NonSchreier", "--max-size", "4", "--timeout", "10", "--max-witnesses",
                        "4", "--out-dir", path("w")});
    ASSERT_EQ(r.code, cli::kPass) << r.err;
    ASSERT_FALSE(r.report.at("result").at("witnesses").empty());
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dir_ / "w")) {
        ++files;
        EXPECT_EQ(run({"report", "replay", entry.path().string()}).code, cli::kPass) << entry.path();
    }
    EXPECT_EQ(files, r.report.at("result").at("witnesses").size());
}

TEST_F(CliFiles, CatalogExportIsLoadable) {
    ASSERT_EQ(run({"catalog", "export", path("cat")}).code, cli::kPass);
    EXPECT_TRUE(fs::exists(dir_ / "cat" / "B2.json"));
    EXPECT_EQ(*load_algebra_file(dir_ / "cat" / "B2xB2.json"), *Catalog::builtin().algebra("B2xB2"));
    EXPECT_EQ(run({"schreier", path("cat/points/diag_B2.json")}).code, cli::kCheckFailed);
}
