#include "schreier/search.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "schreier/catalog.hpp"

namespace schreier {

std::string_view to_string(SearchGoal goal) {
    switch (goal) {
        case SearchGoal::NonSchreier: return "NonSchreier";
        case SearchGoal::KernelCoherenceFailure: return "KernelCoherenceFailure";
        case SearchGoal::SSFLFailureOffClass: return "SSFLFailureOffClass";
    }
    return "?";
}

SearchGoal search_goal_from_string(std::string_view text) {
    for (auto g : {SearchGoal::NonSchreier, SearchGoal::KernelCoherenceFailure, SearchGoal::SSFLFailureOffClass})
        if (text == to_string(g)) return g;
    throw PreconditionError("unknown search goal '" + std::string(text) + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

class Deadline {
public:
    explicit Deadline(std::chrono::milliseconds budget) : end_(Clock::now() + budget) {}
    bool expired() {
        if (!hit_ && Clock::now() >= end_) hit_ = true;
        return hit_;
    }
    bool hit() const { return hit_; }

private:
    Clock::time_point end_;
    bool hit_ = false;
};

// ---------------------------------------------------------------------------
// Table completion

constexpr Elem kUnset = kNoElem;

struct PartialTable {
    std::size_t n;
    std::vector<Elem> cells;
    Elem at(Elem x, Elem y) const { return cells[x * n + y]; }
};

// False when some instance of `law` whose cells are all set is violated.
bool consistent(const PartialTable& t, const PartialTable* add, Law law) {
    const std::size_t n = t.n;
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            const Elem xy = t.at(x, y);
            if (law == Law::Comm) {
                const Elem yx = t.at(y, x);
                if (xy != kUnset && yx != kUnset && xy != yx) return false;
                continue;
            }
            for (Elem z = 0; z < n; ++z) {
                if (law == Law::Assoc) {
                    const Elem yz = t.at(y, z);
                    if (xy == kUnset || yz == kUnset) continue;
                    const Elem l = t.at(xy, z), r = t.at(x, yz);
                    if (l != kUnset && r != kUnset && l != r) return false;
                } else if (law == Law::LeftDist) {
                    const Elem xz = t.at(x, z), lhs = t.at(x, add->at(y, z));
                    if (xy == kUnset || xz == kUnset || lhs == kUnset) continue;
                    if (lhs != add->at(xy, xz)) return false;
                } else if (law == Law::RightDist) {
                    const Elem yx = t.at(y, x), zx = t.at(z, x), lhs = t.at(add->at(y, z), x);
                    if (yx == kUnset || zx == kUnset || lhs == kUnset) continue;
                    if (lhs != add->at(yx, zx)) return false;
                }
            }
        }
    return true;
}

// Every completion of the cells (x, y) with x, y >= 1; row and column 0 are
// fixed by the caller. `visit` returns false to stop.
bool complete(PartialTable& t, const PartialTable* add, const std::vector<Law>& laws, std::size_t cell,
              Deadline& deadline, const std::function<bool(const PartialTable&)>& visit) {
    const std::size_t n = t.n;
    while (cell < n * n && (cell / n == 0 || cell % n == 0)) ++cell;
    if (cell == n * n) return visit(t);
    if (deadline.expired()) return false;
    for (Elem v = 0; v < n; ++v) {
        t.cells[cell] = v;
        bool ok = true;
        for (Law law : laws)
            if (!consistent(t, add, law)) {
                ok = false;
                break;
            }
        if (ok && !complete(t, add, laws, cell + 1, deadline, visit)) {
            t.cells[cell] = kUnset;
            return false;
        }
    }
    t.cells[cell] = kUnset;
    return true;
}

PartialTable unit_table(std::size_t n) {
    PartialTable t{n, std::vector<Elem>(n * n, kUnset)};
    for (Elem x = 0; x < n; ++x) {
        t.cells[x] = x;
        t.cells[x * n] = x;
    }
    return t;
}

PartialTable absorbing_table(std::size_t n) {
    PartialTable t{n, std::vector<Elem>(n * n, kUnset)};
    for (Elem x = 0; x < n; ++x) {
        t.cells[x] = 0;
        t.cells[x * n] = 0;
    }
    return t;
}

struct VarietyShape {
    Kind kind;
    std::vector<Law> add_laws;  // enforced while enumerating
    std::set<Law> declared_add;
    bool has_mul;
    std::vector<Law> mul_laws;
    std::set<Law> declared_mul;
};

VarietyShape shape_of(std::string_view variety) {
    if (variety == "mon") return {Kind::Monoid, {Law::Assoc}, {}, false, {}, {}};
    if (variety == "srng")
        return {Kind::Semiring, {Law::Assoc, Law::Comm}, {}, true,
                {Law::Assoc, Law::LeftDist, Law::RightDist}, {}};
    if (variety == "nasrng")
        return {Kind::JTGeneric, {Law::Assoc, Law::Comm}, {Law::Assoc, Law::Comm}, true,
                {Law::LeftDist, Law::RightDist}, {Law::LeftDist, Law::RightDist, Law::Absorb}};
    if (variety == "jt") return {Kind::JTGeneric, {}, {}, false, {}, {}};
    throw PreconditionError("unknown search variety '" + std::string(variety) + "'");
}

AlgebraRef build(const VarietyShape& shape, Table add, std::optional<Table> mul) {
    std::vector<Operation> extra;
    if (mul) extra.push_back({"mul", std::move(*mul), shape.declared_mul});
    return make_algebra(shape.kind, std::move(add), std::move(extra), shape.declared_add);
}

// Catalog algebras of the variety, recast to its signature where needed.
std::vector<AlgebraRef> catalog_part(const VarietyShape& shape, std::string_view variety, std::size_t max_size) {
    const auto& cat = Catalog::builtin();
    std::vector<AlgebraRef> out;
    if (variety == "mon" || variety == "srng") {
        for (const auto& a : cat.variety(variety, max_size)) out.push_back(a.algebra);
        return out;
    }
    const Kind source = shape.has_mul ? Kind::Semiring : Kind::Monoid;
    for (const auto& a : cat.algebras(source, max_size)) {
        std::optional<Table> mul;
        if (shape.has_mul) mul = a.algebra->operations()[1].table;
        out.push_back(build(shape, a.algebra->operations()[0].table, std::move(mul)));
    }
    return out;
}

std::vector<Elem> key_of(const Algebra& a) {
    std::vector<Elem> key;
    for (const auto& op : a.operations()) key.insert(key.end(), op.table.cells().begin(), op.table.cells().end());
    key.push_back(static_cast<Elem>(a.size()));
    return key;
}

std::vector<AlgebraRef> build_pool(const SearchBounds& bounds, Deadline& deadline) {
    const auto shape = shape_of(bounds.variety);
    std::vector<AlgebraRef> pool;
    std::set<std::vector<Elem>> seen;
    auto offer = [&](AlgebraRef a) {
        if (seen.insert(key_of(*a)).second) pool.push_back(std::move(a));
    };
    for (auto& a : catalog_part(shape, bounds.variety, bounds.max_size)) offer(std::move(a));
    if (!bounds.include_generated) return pool;

    const std::size_t catalog_count = pool.size();
    auto room = [&] { return pool.size() - catalog_count < bounds.max_tables; };
    for (std::size_t n = 1; n <= bounds.max_size && room(); ++n) {
        auto add = unit_table(n);
        complete(add, nullptr, shape.add_laws, 0, deadline, [&](const PartialTable& a) {
            Table add_table(n, a.cells);
            if (!shape.has_mul) {
                offer(build(shape, std::move(add_table), std::nullopt));
                return room();
            }
            auto mul = absorbing_table(n);
            return complete(mul, &a, shape.mul_laws, 0, deadline, [&](const PartialTable& m) {
                offer(build(shape, add_table, Table(n, m.cells)));
                return room();
            });
        });
    }
    std::mt19937_64 rng(bounds.seed);
    std::shuffle(pool.begin() + static_cast<std::ptrdiff_t>(catalog_count), pool.end(), rng);
    return pool;
}

// ---------------------------------------------------------------------------
// Witness plumbing

Json strip_version(Json j) {
    j.erase("version");
    return j;
}

std::vector<Elem> map_of(const Hom& h) { return {h.map().begin(), h.map().end()}; }

Json subject_json(const WitnessSubject& s) {
    return std::visit([](const auto& x) { return strip_version(to_json(x)); }, s);
}

bool schreier_triple(const CoherenceInstance& inst) {
    return check_schreier(inst.left).is_schreier() && check_schreier(inst.middle).is_schreier() &&
           check_schreier(inst.right).is_schreier();
}

struct Collector {
    SearchGoal goal;
    const SearchBounds& bounds;
    SearchResult& result;

    // False once the witness budget is spent.
    bool emit(WitnessSubject subject) {
        SearchWitness w{goal, std::move(subject)};
        if (!reverify(w)) throw Error("search produced a witness that does not re-verify");
        result.witnesses.push_back(std::move(w));
        if (bounds.max_witnesses && result.witnesses.size() >= bounds.max_witnesses) {
            result.truncated = true;
            return false;
        }
        return true;
    }
};

std::vector<Point> points_onto(const AlgebraRef& b, const std::vector<AlgebraRef>& pool, const SearchBounds& bounds,
                               Deadline& deadline) {
    std::vector<Point> out;
    for (const auto& a : pool) {
        if (deadline.expired()) break;
        if (a->size() < b->size()) continue;
        for (auto& p : enumerate_points(a, b, bounds.guards)) out.push_back(std::move(p));
    }
    return out;
}

void search_non_schreier(const std::vector<AlgebraRef>& pool, Collector& c, Deadline& deadline) {
    for (const auto& a : pool)
        for (const auto& b : pool) {
            if (b->size() < 2 || a->size() <= b->size()) continue;
            if (deadline.expired()) return;
            for (auto& p : enumerate_points(a, b, c.bounds.guards)) {
                ++c.result.candidates;
                if (!check_schreier(p).is_schreier() && !c.emit(std::move(p))) return;
            }
        }
}

// False when the search should stop.
bool scan_kernel_coherence(const AlgebraRef& b, const std::vector<AlgebraRef>& pool, Collector& c,
                           Deadline& deadline) {
    std::vector<Point> schreier;
    for (auto& p : points_onto(b, pool, c.bounds, deadline))
        if (check_schreier(p).is_schreier()) schreier.push_back(std::move(p));
    std::map<std::pair<std::size_t, std::size_t>, std::vector<PointMorphism>> morphisms;
    auto fibre = [&](std::size_t from, std::size_t to) -> const std::vector<PointMorphism>& {
        auto [it, fresh] = morphisms.try_emplace({from, to});
        if (fresh) it->second = enumerate_fibre_morphisms(schreier[from], schreier[to], c.bounds.guards);
        return it->second;
    };
    std::size_t examined = 0;
    for (std::size_t d = 0; d < schreier.size(); ++d)
        for (std::size_t a = 0; a < schreier.size(); ++a)
            for (std::size_t k = 0; k < schreier.size(); ++k) {
                if (deadline.expired()) return false;
                if (examined >= c.bounds.instances_per_base) return true;
                for (const auto& f : fibre(a, d))
                    for (const auto& g : fibre(k, d)) {
                        if (!jointly_strongly_epi(f.g(), g.g()).holds) continue;
                        CoherenceInstance inst(schreier[a], schreier[d], schreier[k], f.g(), g.g());
                        ++examined;
                        ++c.result.candidates;
                        if (!check_kernel_coherence(inst).holds && !c.emit(std::move(inst))) return false;
                    }
            }
    return true;
}

void search_kernel_coherence(const std::vector<AlgebraRef>& pool, Collector& c, Deadline& deadline) {
    for (const auto& b : pool)
        if (deadline.expired() || !scan_kernel_coherence(b, pool, c, deadline)) return;
}

void search_ssfl(const std::vector<AlgebraRef>& pool, Collector& c, Deadline& deadline) {
    for (const auto& b : pool) {
        if (deadline.expired()) return;
        const auto pts = points_onto(b, pool, c.bounds, deadline);
        std::vector<bool> schreier;
        for (const auto& p : pts) schreier.push_back(check_schreier(p).is_schreier());
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (schreier[i] && schreier[j]) continue;
                if (deadline.expired()) return;
                for (auto& m : enumerate_fibre_morphisms(pts[i], pts[j], c.bounds.guards)) {
                    ++c.result.candidates;
                    if (!ssfl_implication(m) && !c.emit(std::move(m))) return;
                }
            }
    }
}

}  // namespace

std::vector<AlgebraRef> search_pool(const SearchBounds& bounds) {
    Deadline deadline(bounds.timeout);
    return build_pool(bounds, deadline);
}

SearchResult search_counterexamples(SearchGoal goal, const SearchBounds& bounds) {
    Deadline deadline(bounds.timeout);
    SearchResult result;
    const auto pool = build_pool(bounds, deadline);
    result.pool_size = pool.size();
    Collector c{goal, bounds, result};
    switch (goal) {
        case SearchGoal::NonSchreier: search_non_schreier(pool, c, deadline); break;
        case SearchGoal::KernelCoherenceFailure: search_kernel_coherence(pool, c, deadline); break;
        case SearchGoal::SSFLFailureOffClass: search_ssfl(pool, c, deadline); break;
    }
    result.timed_out = deadline.hit();

    std::vector<std::pair<std::string, SearchWitness>> keyed;
    for (auto& w : result.witnesses) {
        const Json s = subject_json(w.subject);
        keyed.emplace_back(dump(s), std::move(w));
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
        if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
        return x.first < y.first;
    });
    result.witnesses.clear();
    for (auto& [k, w] : keyed) result.witnesses.push_back(std::move(w));
    return result;
}

bool reverify(const SearchWitness& w) {
    switch (w.goal) {
        case SearchGoal::NonSchreier:
            return !check_schreier(std::get<Point>(w.subject)).is_schreier();
        case SearchGoal::KernelCoherenceFailure: {
            const auto& inst = std::get<CoherenceInstance>(w.subject);
            return schreier_triple(inst) && jointly_strongly_epi(inst.f, inst.g).holds &&
                   !check_kernel_coherence(inst).holds;
        }
        case SearchGoal::SSFLFailureOffClass:
            return !ssfl_implication(std::get<PointMorphism>(w.subject));
    }
    return false;
}

Json witness_verdict(const SearchWitness& w) {
    switch (w.goal) {
        case SearchGoal::NonSchreier: return to_json(check_schreier(std::get<Point>(w.subject)));
        case SearchGoal::KernelCoherenceFailure: {
            const auto& inst = std::get<CoherenceInstance>(w.subject);
            const auto r = check_kernel_coherence(inst);
            const auto kernel = inst.middle.kernel().members();
            return {{"holds", r.holds},
                    {"generated", std::vector<Elem>(r.generated.members().begin(), r.generated.members().end())},
                    {"kernel", std::vector<Elem>(kernel.begin(), kernel.end())}};
        }
        case SearchGoal::SSFLFailureOffClass: {
            const auto& m = std::get<PointMorphism>(w.subject);
            return {{"kernel_bijective", kernel_restriction(m).is_bijective()},
                    {"bijective", m.g().is_bijective()},
                    {"source_schreier", check_schreier(m.source()).is_schreier()},
                    {"target_schreier", check_schreier(m.target()).is_schreier()}};
        }
    }
    return {};
}

Json to_json(const CoherenceInstance& inst) {
    return {{"version", kFormatVersion},
            {"left", strip_version(to_json(inst.left))},
            {"middle", strip_version(to_json(inst.middle))},
            {"right", strip_version(to_json(inst.right))},
            {"f", map_of(inst.f)},
            {"g", map_of(inst.g)}};
}

CoherenceInstance coherence_instance_from_json(const Json& j) {
    check_version(j);
    try {
        Point left = point_from_json(j.at("left"));
        Point middle = point_from_json(j.at("middle"));
        Point right = point_from_json(j.at("right"));
        Hom f(left.A_ref(), middle.A_ref(), j.at("f").get<std::vector<Elem>>());
        Hom g(right.A_ref(), middle.A_ref(), j.at("g").get<std::vector<Elem>>());
        return CoherenceInstance(std::move(left), std::move(middle), std::move(right), std::move(f), std::move(g));
    } catch (const Json::exception& e) {
        throw StructuralError(std::string("coherence instance: ") + e.what());
    }
}

Json to_json(const PointMorphism& m) {
    return {{"version", kFormatVersion},
            {"source", strip_version(to_json(m.source()))},
            {"target", strip_version(to_json(m.target()))},
            {"g", map_of(m.g())}};
}

PointMorphism point_morphism_from_json(const Json& j) {
    check_version(j);
    try {
        Point source = point_from_json(j.at("source"));
        Point target = point_from_json(j.at("target"));
        Hom g(source.A_ref(), target.A_ref(), j.at("g").get<std::vector<Elem>>());
        return PointMorphism(std::move(source), std::move(target), std::move(g));
    } catch (const Json::exception& e) {
        throw StructuralError(std::string("point morphism: ") + e.what());
    }
}

Json to_json(const SearchWitness& w) {
    return {{"version", kFormatVersion},
            {"goal", std::string(to_string(w.goal))},
            {"subject", subject_json(w.subject)},
            {"verdict", witness_verdict(w)}};
}

SearchWitness search_witness_from_json(const Json& j) {
    check_version(j);
    try {
        const auto goal = search_goal_from_string(j.at("goal").get<std::string>());
        const Json& s = j.at("subject");
        switch (goal) {
            case SearchGoal::NonSchreier: return {goal, point_from_json(s)};
            case SearchGoal::KernelCoherenceFailure: return {goal, coherence_instance_from_json(s)};
            case SearchGoal::SSFLFailureOffClass: return {goal, point_morphism_from_json(s)};
        }
    } catch (const Json::exception& e) {
        throw StructuralError(std::string("search witness: ") + e.what());
    }
    throw StructuralError("search witness: unknown goal");
}

ReplayResult replay_witness(const Json& j) {
    const auto w = search_witness_from_json(j);
    ReplayResult r;
    r.confirmed = reverify(w);
    r.same_verdict = j.contains("verdict") && witness_verdict(w) == j.at("verdict");
    return r;
}

}  // namespace schreier
