#include <gtest/gtest.h>

#include "schreier/catalog.hpp"
#include "schreier/search.hpp"
#include "support.hpp"

using namespace schreier;
using namespace schreier::testing;

namespace {

// Tables on {0..n-1} with 0 as unit, by brute force over every free cell.
std::vector<Table> oracle_unit_tables(std::size_t n) {
    std::vector<Table> out;
    const std::size_t free = (n - 1) * (n - 1);
    std::size_t total = 1;
    for (std::size_t i = 0; i < free; ++i) total *= n;
    for (std::size_t code = 0; code < total; ++code) {
        out.push_back(Table::from_function(n, [&](Elem x, Elem y) -> Elem {
            if (x == 0) return y;
            if (y == 0) return x;
            std::size_t cell = (x - 1) * (n - 1) + (y - 1), c = code;
            for (std::size_t i = 0; i < cell; ++i) c /= n;
            return static_cast<Elem>(c % n);
        }));
    }
    return out;
}

std::vector<Table> oracle_absorbing_tables(std::size_t n) {
    std::vector<Table> out;
    for (const auto& t : oracle_unit_tables(n))
        out.push_back(Table::from_function(n, [&](Elem x, Elem y) -> Elem { return x && y ? t(x, y) : 0; }));
    return out;
}

bool assoc(const Table& t) {
    const auto n = static_cast<Elem>(t.size());
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            for (Elem z = 0; z < n; ++z)
                if (t(t(x, y), z) != t(x, t(y, z))) return false;
    return true;
}

bool comm(const Table& t) {
    const auto n = static_cast<Elem>(t.size());
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            if (t(x, y) != t(y, x)) return false;
    return true;
}

bool distributive(const Table& m, const Table& a) {
    const auto n = static_cast<Elem>(m.size());
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            for (Elem z = 0; z < n; ++z)
                if (m(x, a(y, z)) != a(m(x, y), m(x, z)) || m(a(y, z), x) != a(m(y, x), m(z, x))) return false;
    return true;
}

std::size_t oracle_pool_size(std::string_view variety, std::size_t max_size) {
    std::size_t count = 0;
    for (std::size_t n = 1; n <= max_size; ++n)
        for (const auto& add : oracle_unit_tables(n)) {
            if (variety == "jt") ++count;
            if (variety == "mon" && assoc(add)) ++count;
            if (variety != "srng" && variety != "nasrng") continue;
            if (!assoc(add) || !comm(add)) continue;
            for (const auto& mul : oracle_absorbing_tables(n))
                if (distributive(mul, add) && (variety == "nasrng" || assoc(mul))) ++count;
        }
    return count;
}

SearchBounds bounds(std::string variety, std::size_t max_size) {
    SearchBounds b;
    b.variety = std::move(variety);
    b.max_size = max_size;
    b.timeout = std::chrono::seconds(60);
    b.max_witnesses = 0;
    return b;
}

bool same_point(const Point& p, const Point& q) {
    return p.A() == q.A() && p.B() == q.B() && p.f() == q.f() && p.s() == q.s();
}

}  // namespace

TEST(SearchPool, MatchesBruteForceCounts) {
    for (std::string v : {"mon", "srng", "nasrng", "jt"}) {
        const auto pool = search_pool(bounds(v, 3));
        EXPECT_EQ(pool.size(), oracle_pool_size(v, 3)) << v;
        for (const auto& a : pool) EXPECT_TRUE(validate_algebra(*a).accepted()) << v;
    }
}

TEST(SearchPool, CatalogComesFirstAndSeedOnlyPermutes) {
    auto b = bounds("mon", 3);
    const auto p0 = search_pool(b);
    b.seed = 99;
    const auto p1 = search_pool(b);
    const auto catalog = Catalog::builtin().variety("mon", 3);
    for (std::size_t i = 0; i < catalog.size(); ++i) EXPECT_EQ(*p0[i], *catalog[i].algebra);
    auto key = [](const std::vector<AlgebraRef>& p) {
        std::vector<std::string> k;
        for (const auto& a : p) k.push_back(dump(to_json(*a)));
        std::sort(k.begin(), k.end());
        return k;
    };
    EXPECT_EQ(key(p0), key(p1));
}

TEST(Search, NonSchreierFindsTheDiagonal) {
    SearchBounds b;
    b.variety = "mon";
    const auto start = std::chrono::steady_clock::now();
    const auto r = search_counterexamples(SearchGoal::NonSchreier, b);
    EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(10));
    const auto& diag = Catalog::builtin().point("diag_B2");
    EXPECT_TRUE(std::any_of(r.witnesses.begin(), r.witnesses.end(),
                            [&](const SearchWitness& w) { return same_point(std::get<Point>(w.subject), diag); }));
}

TEST(Search, NonSchreierByCardinality) {
    // |A| = 3 and |B| = 2: a Schreier point has |A| = |K| |B|, so none is.
    const auto r = search_counterexamples(SearchGoal::NonSchreier, bounds("mon", 3));
    EXPECT_GT(r.candidates, 0u);
    EXPECT_EQ(r.witnesses.size(), r.candidates);
}

TEST(Search, NoKernelCoherenceFailureInMon) {
    const auto r = search_counterexamples(SearchGoal::KernelCoherenceFailure, bounds("mon", 3));
    EXPECT_FALSE(r.timed_out);
    EXPECT_GT(r.candidates, 100u);
    EXPECT_TRUE(r.witnesses.empty());
}

TEST(Search, NonAssociativeRunsToCompletion) {
    const auto r = search_counterexamples(SearchGoal::KernelCoherenceFailure, bounds("nasrng", 3));
    EXPECT_FALSE(r.timed_out);
    EXPECT_GT(r.candidates, 0u);
    for (const auto& w : r.witnesses) EXPECT_TRUE(reverify(w));
}

TEST(Search, SsflFailuresAreOffClass) {
    const auto r = search_counterexamples(SearchGoal::SSFLFailureOffClass, bounds("mon", 3));
    ASSERT_FALSE(r.witnesses.empty());
    for (const auto& w : r.witnesses) {
        const auto& m = std::get<PointMorphism>(w.subject);
        EXPECT_TRUE(kernel_restriction(m).is_bijective());
        EXPECT_FALSE(m.g().is_bijective());
        EXPECT_FALSE(check_schreier(m.source()).is_schreier() && check_schreier(m.target()).is_schreier());
    }
}

TEST(Search, WitnessBudgetTruncates) {
    auto b = bounds("mon", 3);
    b.max_witnesses = 3;
    const auto r = search_counterexamples(SearchGoal::SSFLFailureOffClass, b);
    EXPECT_EQ(r.witnesses.size(), 3u);
    EXPECT_TRUE(r.truncated);
}

TEST(Search, SeedDoesNotChangeWitnesses) {
    for (auto goal : {SearchGoal::NonSchreier, SearchGoal::SSFLFailureOffClass}) {
        auto b = bounds("srng", 3);
        auto dump_all = [&](std::uint64_t seed) {
            b.seed = seed;
            std::string out;
            for (const auto& w : search_counterexamples(goal, b).witnesses) out += dump(to_json(w));
            return out;
        };
        EXPECT_EQ(dump_all(1), dump_all(12345));
    }
}

TEST(Replay, EveryWitnessKindRoundTrips) {
    for (auto goal : {SearchGoal::NonSchreier, SearchGoal::SSFLFailureOffClass}) {
        auto b = bounds("srng", 3);
        b.max_witnesses = 10;
        for (const auto& w : search_counterexamples(goal, b).witnesses) {
            const Json j = to_json(w);
            const auto r = replay_witness(Json::parse(dump(j)));
            EXPECT_TRUE(r.confirmed);
            EXPECT_TRUE(r.same_verdict);
            EXPECT_EQ(dump(to_json(search_witness_from_json(j))), dump(j));
        }
    }
}

TEST(Replay, CoherenceInstanceRoundTrips) {
    const auto pts = enumerate_points(Catalog::builtin().algebra("BoolxBool"), algebras::boolean());
    const auto insts = enumerate_coherence_instances(pts, 5);
    ASSERT_FALSE(insts.empty());
    for (const auto& inst : insts) {
        const auto back = coherence_instance_from_json(Json::parse(dump(to_json(inst))));
        EXPECT_EQ(back.f, inst.f);
        EXPECT_EQ(back.g, inst.g);
        EXPECT_EQ(check_kernel_coherence(back).holds, check_kernel_coherence(inst).holds);
    }
}

TEST(Replay, TamperedWitnessesAreCaught) {
    SearchWitness w{SearchGoal::NonSchreier, Catalog::builtin().point("diag_B2")};
    Json j = to_json(w);
    EXPECT_TRUE(replay_witness(j).same_verdict);
    j["verdict"]["status"] = "Schreier";
    EXPECT_FALSE(replay_witness(j).same_verdict);
    EXPECT_TRUE(replay_witness(j).confirmed);

    SearchWitness honest{SearchGoal::NonSchreier, Catalog::builtin().point("prod_B2_Z2")};
    EXPECT_FALSE(reverify(honest));
    EXPECT_FALSE(replay_witness(to_json(honest)).confirmed);
}

TEST(Replay, RejectsUnknownGoalAndVersion) {
    Json j = to_json(SearchWitness{SearchGoal::NonSchreier, Catalog::builtin().point("diag_B2")});
    Json bad = j;
    bad["goal"] = "Nope";
    EXPECT_THROW(search_witness_from_json(bad), PreconditionError);
    bad = j;
    bad["version"] = 7;
    EXPECT_THROW(search_witness_from_json(bad), StructuralError);
}
