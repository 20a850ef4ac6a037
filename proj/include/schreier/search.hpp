#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "schreier/coherence.hpp"
#include "schreier/io.hpp"

namespace schreier {

enum class SearchGoal { NonSchreier, KernelCoherenceFailure, SSFLFailureOffClass };

std::string_view to_string(SearchGoal goal);
SearchGoal search_goal_from_string(std::string_view text);

/// Varieties the harness can enumerate: "mon", "srng", "nasrng" (semirings
/// without multiplicative associativity) and "jt" (a bare unital +).
inline constexpr std::string_view kSearchVarieties[] = {"mon", "srng", "nasrng", "jt"};

struct SearchBounds {
    std::string variety = "mon";
    std::size_t max_size = 4;
    std::chrono::milliseconds timeout{10'000};
    /// 0 means unbounded.
    std::size_t max_witnesses = 64;
    /// Upper bound on enumerated (non-catalog) tables.
    std::size_t max_tables = 2000;
    /// Coherence instances examined per base algebra.
    std::size_t instances_per_base = 200;
    /// Shuffles the enumerated part of the pool; never changes a verdict.
    std::uint64_t seed = 0;
    bool include_generated = true;
    Guards guards;
};

/// What was found: a point, a coherence instance or a fibre morphism.
using WitnessSubject = std::variant<Point, CoherenceInstance, PointMorphism>;

struct SearchWitness {
    SearchGoal goal = SearchGoal::NonSchreier;
    WitnessSubject subject;
};

struct SearchResult {
    std::vector<SearchWitness> witnesses;  // canonical order
    std::size_t pool_size = 0;             // distinct algebras considered
    std::size_t candidates = 0;            // points, instances or morphisms checked
    bool timed_out = false;
    bool truncated = false;                // stopped at max_witnesses
};

/// The candidate algebras for a variety: catalog entries first, then
/// enumerated tables with the unit law fixed, without duplicates.
std::vector<AlgebraRef> search_pool(const SearchBounds& bounds);

/// Each emitted witness has been re-verified by its checker.
SearchResult search_counterexamples(SearchGoal goal, const SearchBounds& bounds);

/// Runs the goal's checker on the subject; true when the failure is real.
bool reverify(const SearchWitness& w);

/// Self-contained witness file: goal, subject and the checker's verdict.
Json to_json(const SearchWitness& w);
SearchWitness search_witness_from_json(const Json& j);

/// The checker's verdict on the subject, as recorded in witness files.
Json witness_verdict(const SearchWitness& w);

Json to_json(const CoherenceInstance& inst);
CoherenceInstance coherence_instance_from_json(const Json& j);
Json to_json(const PointMorphism& m);
PointMorphism point_morphism_from_json(const Json& j);

struct ReplayResult {
    bool confirmed = false;  // the failure reproduces
    bool same_verdict = false;  // recomputed verdict equals the recorded one
};

ReplayResult replay_witness(const Json& j);

}  // namespace schreier
