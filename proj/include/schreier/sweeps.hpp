#pragma once

#include <functional>
#include <string>
#include <vector>

#include "schreier/catalog.hpp"
#include "schreier/report.hpp"

namespace schreier {

/// Scope of the exhaustive sweeps. The defaults are the sizes the
/// acceptance run uses.
struct SweepOptions {
    const Catalog* catalog = &Catalog::builtin();
    Guards guards;
    std::uint64_t seed = 0;

    std::size_t point_max_size = 6;    // A and B for the point sweeps
    std::size_t ssfl_max_size = 6;     // sources and targets of fibre morphisms
    std::size_t adjoint_base_max = 3;  // |B| for the monoid adjunction
    std::size_t adjoint_max = 4;       // |E|, |M|, |S| for the monoid adjunction
    std::size_t srng_adjoint_max = 9;  // E and B for the semiring adjunction
    std::size_t srng_object_max = 4;   // X and S for the semiring adjunction
    std::size_t ring_max_size = 8;
    std::size_t coherence_base_max = 3;
    std::size_t coherence_max = 6;
    std::size_t coherence_instances = 300;  // per base
    std::chrono::milliseconds search_timeout{10'000};
};

Json to_json(const SweepOptions& o);

/// Every point A -> B between catalog algebras of the same signature with
/// both sizes at most `max_size`. Pairs whose enumeration exceeds the guards
/// are skipped and counted.
struct PointCensus {
    std::vector<Point> points;
    std::vector<bool> schreier;
    std::size_t skipped_pairs = 0;
};
PointCensus catalog_points(const SweepOptions& o, std::size_t max_size);

CheckResult sweep_schreier_implies_strong(const SweepOptions& o);  // 1
CheckResult sweep_limit_stability(const SweepOptions& o);          // 2
CheckResult sweep_ssfl(const SweepOptions& o);                     // 3
CheckResult sweep_action_roundtrips(const SweepOptions& o);        // 4
CheckResult sweep_mon_adjunction(const SweepOptions& o);           // 5
CheckResult sweep_simplified_cofree(const SweepOptions& o);        // 6
CheckResult sweep_srng_adjunction(const SweepOptions& o);          // 7
CheckResult sweep_ring_base(const SweepOptions& o);                // 8
/// `variety` is "mon", "srng" or "both".
CheckResult sweep_coherence(const SweepOptions& o, const std::string& variety = "both");  // 9
CheckResult sweep_determinism(const SweepOptions& o);              // 10

struct Criterion {
    int number;
    std::string title;
    std::function<CheckResult(const SweepOptions&)> run;
};

/// The ten acceptance criteria in order.
const std::vector<Criterion>& criteria();

/// Runs a sweep, stamping its id and elapsed time; a thrown Error other
/// than GuardExceeded becomes a failed check carrying the message.
CheckResult run_timed(const std::string& id, const std::function<CheckResult()>& sweep);

}  // namespace schreier
