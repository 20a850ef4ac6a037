#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>

#include "schreier/io.hpp"
#include "schreier/report.hpp"
#include "schreier/search.hpp"
#include "support.hpp"

using namespace schreier;
using namespace schreier::testing;
namespace fs = std::filesystem;

namespace {

const fs::path kData = SCHREIER_DATA_DIR;

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("schreier_io_" + std::to_string(std::random_device{}()))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

Json parse(const char* text) { return Json::parse(text); }

}  // namespace

TEST(Io, SaveThenLoadB2) {
    TempDir dir;
    const auto file = dir.path() / "b2.json";
    write_json_file(file, to_json(*algebras::b2()));
    const auto loaded = load_algebra_file(file);
    EXPECT_EQ(*loaded, *algebras::b2());
    EXPECT_TRUE(std::ranges::equal(loaded->operations()[0].table.cells(), algebras::b2()->operations()[0].table.cells()));
}

TEST(Io, AlgebraRoundtripOverCatalog) {
    for (const auto& [name, a] : Catalog::builtin().algebras()) {
        SCOPED_TRACE(name);
        const auto j = to_json(*a);
        EXPECT_EQ(*algebra_from_json(j), *a);
        EXPECT_EQ(to_json(*algebra_from_json(Json::parse(dump(j)))), j);
    }
}

TEST(Io, RandomAlgebrasRoundtrip) {
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        auto a = random_jt(rng, 1 + i % 5);
        EXPECT_EQ(*algebra_from_json(Json::parse(dump(to_json(*a)))), *a);
    }
}

TEST(Io, HomPointActionRoundtrip) {
    const auto& cat = Catalog::builtin();
    for (const auto& [name, p] : cat.points()) {
        SCOPED_TRACE(name);
        const auto back = point_from_json(Json::parse(dump(to_json(p))));
        EXPECT_EQ(back.f(), p.f());
        EXPECT_EQ(back.s(), p.s());
        const auto h = hom_from_json(to_json(p.f()));
        EXPECT_EQ(h, p.f());
    }
    for (const auto& [name, a] : cat.monoid_actions())
        EXPECT_EQ(std::get<MonoidAction>(action_from_json(to_json(a))), a) << name;
    for (const auto& [name, a] : cat.semiring_actions())
        EXPECT_EQ(std::get<SemiringAction>(action_from_json(to_json(a))), a) << name;
}

TEST(Io, SchreierWitnessRoundtrip) {
    for (const auto& [name, p] : Catalog::builtin().points()) {
        SCOPED_TRACE(name);
        const auto w = check_schreier(p);
        const auto back = witness_from_json(to_json(w));
        EXPECT_EQ(back.status, w.status);
        EXPECT_EQ(back.retraction, w.retraction);
        ASSERT_EQ(back.failures.size(), w.failures.size());
        for (std::size_t i = 0; i < w.failures.size(); ++i) {
            EXPECT_EQ(back.failures[i].kind, w.failures[i].kind);
            EXPECT_EQ(back.failures[i].element, w.failures[i].element);
            EXPECT_EQ(back.failures[i].alpha1, w.failures[i].alpha1);
            EXPECT_EQ(back.failures[i].alpha2, w.failures[i].alpha2);
        }
    }
}

TEST(Io, SearchWitnessRoundtrip) {
    SearchBounds b;
    b.max_size = 3;
    const auto r = search_counterexamples(SearchGoal::SSFLFailureOffClass, b);
    ASSERT_FALSE(r.witnesses.empty());
    for (const auto& w : r.witnesses) {
        const auto j = to_json(w);
        EXPECT_EQ(to_json(search_witness_from_json(Json::parse(dump(j)))), j);
    }
}

TEST(Io, ReportFileRoundtrip) {
    TempDir dir;
    Report rep;
    rep.argv = {"verify", "ring-base"};
    CheckResult c{"8", "ring base"};
    c.expect(true, [] { return Json{}; });
    rep.checks.push_back(c);
    const auto j = to_json(rep);
    write_json_file(dir.path() / "r.json", j);
    const auto back = read_json_file(dir.path() / "r.json");
    EXPECT_EQ(back, j);
    EXPECT_TRUE(same_report(back, j));
}

TEST(Io, DumpIsStable) {
    const auto j = to_json(*algebras::b2());
    EXPECT_EQ(dump(j), dump(Json::parse(dump(j))));
    EXPECT_EQ(dump(j).back(), '\n');
}

TEST(Io, ReferencesResolveRelativeToTheFile) {
    const auto p = load_point_file(kData / "diag_point.json");
    EXPECT_EQ(p.A(), *Catalog::builtin().algebra("B2xB2"));
    EXPECT_EQ(p.f(), Catalog::builtin().point("diag_B2").f());
    const auto inlined = inline_references(read_json_file(kData / "diag_point.json"), kData);
    EXPECT_TRUE(inlined.at("A").is_object());
    EXPECT_EQ(point_from_json(inlined).s(), p.s());
}

TEST(Io, BuiltinReferences) {
    const auto j = parse(R"({"source": "builtin:B2xZ2", "target": "builtin:B2", "map": [0,0,1,1]})");
    const auto h = hom_from_json(j);
    EXPECT_EQ(h.source(), *Catalog::builtin().algebra("B2xZ2"));
    EXPECT_EQ(std::get<MonoidAction>(action_from_json(Json("builtin:B2_kills_Z2"))).object(), *algebras::z2());
}

TEST(Io, TableSizeMismatchIsStructural) {
    EXPECT_THROW(load_algebra_file(kData / "bad_size.json"), StructuralError);
    EXPECT_THROW(algebra_from_json(parse(R"({"kind":"monoid","size":2,"add":[[0,1],[1]]})")), StructuralError);
}

TEST(Io, VersionIsChecked) {
    EXPECT_NO_THROW(algebra_from_json(parse(R"({"kind":"monoid","size":1,"add":[[0]]})")));
    EXPECT_NO_THROW(algebra_from_json(parse(R"({"version":1,"kind":"monoid","size":1,"add":[[0]]})")));
    EXPECT_THROW(algebra_from_json(parse(R"({"version":2,"kind":"monoid","size":1,"add":[[0]]})")), StructuralError);
    EXPECT_THROW(check_version(parse(R"({"version":"1"})")), StructuralError);
}

TEST(Io, IndexOutOfRange) {
    EXPECT_ANY_THROW(algebra_from_json(parse(R"({"kind":"monoid","size":2,"add":[[0,1],[1,2]]})")));
    EXPECT_ANY_THROW(hom_from_json(parse(R"({"source":"builtin:B2","target":"builtin:B2","map":[0,2]})")));
    EXPECT_ANY_THROW(hom_from_json(parse(R"({"source":"builtin:B2","target":"builtin:B2","map":[0]})")));
}

TEST(Io, MissingFieldsAndUnknownKinds) {
    EXPECT_THROW(algebra_from_json(parse(R"({"kind":"monoid","add":[[0]]})")), StructuralError);
    EXPECT_THROW(algebra_from_json(parse(R"({"kind":"group","size":1,"add":[[0]]})")), StructuralError);
    EXPECT_THROW(action_from_json(parse(R"({"B":"builtin:B2","X":"builtin:Z2"})")), StructuralError);
    EXPECT_THROW(read_json_file(kData / "no_such_file.json"), FileError);
}
