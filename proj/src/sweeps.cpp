#include "schreier/sweeps.hpp"

#include <algorithm>
#include <map>

#include "schreier/adjoints.hpp"
#include "schreier/coherence.hpp"
#include "schreier/search.hpp"

namespace schreier {

namespace {

Json bare(Json j) {
    j.erase("version");
    return j;
}

std::vector<AlgebraRef> catalog_of(const SweepOptions& o, std::optional<Kind> kind, std::size_t max_size) {
    std::vector<AlgebraRef> out;
    for (const auto& a : o.catalog->algebras())
        if (a.algebra->size() <= max_size && (!kind || a.algebra->kind() == *kind)) out.push_back(a.algebra);
    return out;
}

AlgebraRef catalog_or(const SweepOptions& o, std::string_view name, AlgebraRef fallback) {
    for (const auto& a : o.catalog->algebras())
        if (a.name == name) return a.algebra;
    return fallback;
}

bool same_point(const Point& p, const Point& q) {
    return p.A() == q.A() && p.B() == q.B() && p.f() == q.f() && p.s() == q.s();
}

// pi_1: B x B -> B with the diagonal section.
Point diagonal_point(const AlgebraRef& b) {
    const auto pr = product(b, b);
    std::vector<Elem> diag(b->size());
    for (Elem x = 0; x < b->size(); ++x) diag[x] = pr.index(x, x);
    return Point(pr.pi1, Hom(b, pr.algebra, std::move(diag)));
}

std::vector<Elem> to_vector(std::span<const Elem> s) { return {s.begin(), s.end()}; }

Json hom_map(const Hom& h) { return to_vector(h.map()); }

template <class Action>
std::vector<Action> small_actions(const SweepOptions& o, Kind kind, std::size_t max_size,
                                  std::vector<Action> (*enumerate)(const AlgebraRef&, const AlgebraRef&,
                                                                   const Guards&)) {
    std::vector<Action> out;
    for (const auto& b : catalog_of(o, kind, max_size))
        for (const auto& x : catalog_of(o, kind, max_size))
            for (auto& a : enumerate(b, x, o.guards)) out.push_back(std::move(a));
    return out;
}

}  // namespace

Json to_json(const SweepOptions& o) {
    return {{"point_max_size", o.point_max_size},
            {"ssfl_max_size", o.ssfl_max_size},
            {"adjoint_base_max", o.adjoint_base_max},
            {"adjoint_max", o.adjoint_max},
            {"srng_adjoint_max", o.srng_adjoint_max},
            {"srng_object_max", o.srng_object_max},
            {"ring_max_size", o.ring_max_size},
            {"coherence_base_max", o.coherence_base_max},
            {"coherence_max", o.coherence_max},
            {"coherence_instances", o.coherence_instances},
            {"search_timeout_ms", o.search_timeout.count()},
            {"guard_homs", o.guards.homs},
            {"guard_functions", o.guards.functions},
            {"seed", o.seed}};
}

PointCensus catalog_points(const SweepOptions& o, std::size_t max_size) {
    PointCensus census;
    const auto algebras = catalog_of(o, std::nullopt, max_size);
    for (const auto& a : algebras)
        for (const auto& b : algebras) {
            if (a->size() < b->size() || !a->same_signature(*b)) continue;
            try {
                for (auto& p : enumerate_points(a, b, o.guards)) {
                    census.schreier.push_back(check_schreier(p).is_schreier());
                    census.points.push_back(std::move(p));
                }
            } catch (const GuardExceeded&) {
                ++census.skipped_pairs;
            }
        }
    return census;
}

// ---------------------------------------------------------------------------
// 1-3: points

CheckResult sweep_schreier_implies_strong(const SweepOptions& o) {
    CheckResult r{"1", "Schreier points are strong"};
    const auto census = catalog_points(o, o.point_max_size);
    std::size_t schreier = 0;
    for (std::size_t i = 0; i < census.points.size(); ++i) {
        if (!census.schreier[i]) continue;
        ++schreier;
        const auto& p = census.points[i];
        r.expect(is_strong_point(p).strong, [&] { return bare(to_json(p)); });
    }
    r.details = {{"points", census.points.size()},
                 {"schreier", schreier},
                 {"non_schreier", census.points.size() - schreier},
                 {"skipped_pairs", census.skipped_pairs}};
    return r;
}

CheckResult sweep_limit_stability(const SweepOptions& o) {
    CheckResult r{"2", "Schreier points are stable under pullback and fibre product"};
    const auto census = catalog_points(o, o.point_max_size);
    std::vector<const Point*> schreier;
    for (std::size_t i = 0; i < census.points.size(); ++i)
        if (census.schreier[i]) schreier.push_back(&census.points[i]);

    const auto algebras = catalog_of(o, std::nullopt, o.point_max_size);
    std::size_t pullbacks = 0, products = 0, skipped = 0;
    for (const Point* p : schreier)
        for (const auto& e : algebras) {
            if (!e->same_signature(p->B())) continue;
            std::vector<Hom> homs;
            try {
                homs = enumerate_homs(e, p->B_ref(), o.guards);
            } catch (const GuardExceeded&) {
                ++skipped;
                continue;
            }
            for (const auto& h : homs) {
                ++pullbacks;
                const auto q = pullback_point(h, *p);
                r.expect(check_schreier(q).is_schreier(), [&] {
                    return Json{{"kind", "pullback"}, {"point", bare(to_json(*p))}, {"along", bare(to_json(h))}};
                });
            }
        }
    for (std::size_t i = 0; i < schreier.size(); ++i)
        for (std::size_t j = i; j < schreier.size(); ++j) {
            if (!same_base(*schreier[i], *schreier[j])) continue;
            ++products;
            const auto q = fibre_product_point(*schreier[i], *schreier[j]);
            r.expect(check_schreier(q).is_schreier(), [&] {
                return Json{{"kind", "fibre_product"},
                            {"left", bare(to_json(*schreier[i]))},
                            {"right", bare(to_json(*schreier[j]))}};
            });
        }
    r.details = {{"schreier_points", schreier.size()},
                 {"pullbacks", pullbacks},
                 {"fibre_products", products},
                 {"skipped", skipped + census.skipped_pairs}};
    return r;
}

CheckResult sweep_ssfl(const SweepOptions& o) {
    CheckResult r{"3", "Split short five lemma on Schreier points; search exhibits the diagonal"};
    const auto census = catalog_points(o, o.ssfl_max_size);
    std::vector<const Point*> schreier;
    for (std::size_t i = 0; i < census.points.size(); ++i)
        if (census.schreier[i]) schreier.push_back(&census.points[i]);
    std::size_t morphisms = 0, skipped = 0;
    for (const Point* p : schreier)
        for (const Point* q : schreier) {
            if (!same_base(*p, *q)) continue;
            std::vector<PointMorphism> ms;
            try {
                ms = enumerate_fibre_morphisms(*p, *q, o.guards);
            } catch (const GuardExceeded&) {
                ++skipped;
                continue;
            }
            for (const auto& m : ms) {
                ++morphisms;
                r.expect(check_ssfl(m), [&] { return bare(to_json(m)); });
            }
        }

    SearchBounds bounds;
    bounds.variety = "mon";
    bounds.timeout = o.search_timeout;
    bounds.seed = o.seed;
    bounds.guards = o.guards;
    const auto found = search_counterexamples(SearchGoal::NonSchreier, bounds);
    const auto diag = diagonal_point(algebras::b2());
    const bool hit = std::any_of(found.witnesses.begin(), found.witnesses.end(), [&](const SearchWitness& w) {
        return same_point(std::get<Point>(w.subject), diag);
    });
    r.expect(hit, [&] { return Json{{"search", "NonSchreier"}, {"missing", bare(to_json(diag))}}; });
    r.details = {{"schreier_points", schreier.size()},
                 {"fibre_morphisms", morphisms},
                 {"skipped", skipped + census.skipped_pairs},
                 {"search_found_diagonal", hit}};
    return r;
}

// ---------------------------------------------------------------------------
// 4: actions

CheckResult sweep_action_roundtrips(const SweepOptions& o) {
    CheckResult r{"4", "Actions and Schreier points correspond"};
    std::vector<AnyAction> actions;
    for (const auto& a : o.catalog->monoid_actions()) actions.emplace_back(a.action);
    for (const auto& a : o.catalog->semiring_actions()) actions.emplace_back(a.action);
    for (auto& a : small_actions<MonoidAction>(o, Kind::Monoid, 3, enumerate_monoid_actions))
        actions.emplace_back(std::move(a));
    for (auto& a : small_actions<SemiringAction>(o, Kind::Semiring, 3, enumerate_semiring_actions))
        actions.emplace_back(std::move(a));

    std::size_t action_cases = 0;
    std::vector<Point> semidirects;
    for (const auto& a : actions) {
        ++action_cases;
        semidirects.push_back(semidirect_any(a));
        r.expect(point_to_action(semidirects.back()) == a, [&] { return Json{{"action", bare(to_json(a))}}; });
    }

    const auto census = catalog_points(o, o.point_max_size);
    std::size_t point_cases = 0;
    for (std::size_t i = 0; i < census.points.size(); ++i) {
        const auto& p = census.points[i];
        if (!census.schreier[i] || (p.A().kind() != Kind::Monoid && p.A().kind() != Kind::Semiring)) continue;
        ++point_cases;
        const auto back = semidirect_any(point_to_action(p));
        r.expect(find_point_isomorphism(back, p, o.guards).has_value(), [&] { return Json{{"point", bare(to_json(p))}}; });
    }

    std::size_t pair_cases = 0;
    for (std::size_t i = 0; i < actions.size(); ++i)
        for (std::size_t j = 0; j < actions.size(); ++j) {
            const auto& a1 = actions[i];
            const auto& a2 = actions[j];
            if (a1.index() != a2.index()) continue;
            const std::size_t equivariant = std::visit(
                [&](const auto& x) -> std::size_t {
                    using A = std::decay_t<decltype(x)>;
                    const auto& y = std::get<A>(a2);
                    if (!(x.acting() == y.acting())) return kNoElem;
                    return equivariant_homs(x, y, o.guards).size();
                },
                a1);
            if (equivariant == kNoElem) continue;
            ++pair_cases;
            const std::size_t fibre = enumerate_fibre_morphisms(semidirects[i], semidirects[j], o.guards).size();
            r.expect(equivariant == fibre, [&] {
                return Json{{"from", bare(to_json(a1))}, {"to", bare(to_json(a2))},
                            {"equivariant", equivariant}, {"fibre_morphisms", fibre}};
            });
        }
    r.details = {{"actions", action_cases}, {"schreier_points", point_cases}, {"hom_set_pairs", pair_cases}};
    return r;
}

// ---------------------------------------------------------------------------
// 5-7: adjoints

CheckResult sweep_mon_adjunction(const SweepOptions& o) {
    CheckResult r{"5", "Monoid actions: restriction has a right adjoint along every hom"};
    const auto monoids = catalog_of(o, Kind::Monoid, o.adjoint_max);
    std::size_t homs = 0, skipped = 0;
    for (const auto& e : monoids)
        for (const auto& b : monoids) {
            if (b->size() > o.adjoint_base_max) continue;
            for (const auto& h : enumerate_homs(e, b, o.guards)) {
                ++homs;
                for (const auto& m : monoids)
                    for (const auto& f : enumerate_monoid_actions(e, m, o.guards))
                        for (const auto& s : monoids)
                            for (const auto& g : enumerate_monoid_actions(b, s, o.guards)) {
                                AdjunctionReport a;
                                try {
                                    a = verify_adjunction_mon(h, g, f, o.guards);
                                } catch (const GuardExceeded&) {
                                    ++skipped;
                                    continue;
                                }
                                r.expect(a.ok(), [&] {
                                    return Json{{"h", bare(to_json(h))},
                                                {"G", bare(to_json(g))},
                                                {"F", bare(to_json(f))},
                                                {"left", a.left_count},
                                                {"right", a.right_count}};
                                });
                            }
            }
        }
    r.details = {{"homs", homs}, {"instances", r.cases}, {"skipped", skipped}};
    return r;
}

CheckResult sweep_simplified_cofree(const SweepOptions& o) {
    CheckResult r{"6", "Cofree object along a surjection, described inside M"};
    const auto monoids = catalog_of(o, Kind::Monoid, o.point_max_size);
    const auto objects = catalog_of(o, Kind::Monoid, o.adjoint_max);
    std::size_t surjections = 0, sections = 0, unpointed = 0;
    for (const auto& e : monoids)
        for (const auto& b : monoids) {
            if (b->size() > o.adjoint_base_max || b->size() > e->size()) continue;
            for (const auto& h : enumerate_homs(e, b, o.guards)) {
                if (!h.is_surjective()) continue;
                ++surjections;
                const auto sects = pointed_sections(h, o.guards);
                sections += sects.size();
                std::size_t pointed = 1;
                for (Elem x = 1; x < b->size(); ++x)
                    pointed *= static_cast<std::size_t>(std::count(h.map().begin(), h.map().end(), x));
                const auto over_zero = static_cast<std::size_t>(std::count(h.map().begin(), h.map().end(), 0));
                unpointed += pointed * (over_zero - 1);
                for (const auto& m : objects)
                    for (const auto& f : enumerate_monoid_actions(e, m, o.guards)) {
                        std::optional<Subset> first;
                        for (const auto& sect : sects) {
                            const auto c = cofree_mon_surjective(h, f, sect, o.guards);
                            const bool independent = !first || c.submonoid == *first;
                            if (!first) first = c.submonoid;
                            r.expect(c.iso_verified && independent, [&] {
                                return Json{{"h", bare(to_json(h))}, {"F", bare(to_json(f))}, {"section", sect},
                                            {"iso_verified", c.iso_verified}, {"section_independent", independent}};
                            });
                        }
                    }
            }
        }
    r.details = {{"surjections", surjections}, {"pointed_sections", sections}, {"unpointed_sections_excluded", unpointed}};
    return r;
}

CheckResult sweep_srng_adjunction(const SweepOptions& o) {
    CheckResult r{"7", "Semiring actions: restriction has a right adjoint along every surjection"};
    const auto semirings = catalog_of(o, Kind::Semiring, o.srng_adjoint_max);
    const auto objects = catalog_of(o, Kind::Semiring, o.srng_object_max);
    std::size_t surjections = 0, skipped = 0;
    for (const auto& e : semirings)
        for (const auto& b : semirings) {
            if (b->size() > e->size()) continue;
            for (const auto& h : enumerate_homs(e, b, o.guards)) {
                if (!h.is_surjective()) continue;
                ++surjections;
                for (const auto& x : objects)
                    for (const auto& f : enumerate_semiring_actions(e, x, o.guards))
                        for (const auto& s : objects)
                            for (const auto& g : enumerate_semiring_actions(b, s, o.guards)) {
                                AdjunctionReport a;
                                try {
                                    a = verify_adjunction_srng(h, g, f, o.guards);
                                } catch (const GuardExceeded&) {
                                    ++skipped;
                                    continue;
                                }
                                r.expect(a.ok() && a.naturality_checked > 0, [&] {
                                    return Json{{"h", bare(to_json(h))},
                                                {"G", bare(to_json(g))},
                                                {"F", bare(to_json(f))},
                                                {"left", a.left_count},
                                                {"right", a.right_count},
                                                {"naturality", a.naturality}};
                                });
                            }
            }
        }
    r.details = {{"surjections", surjections}, {"instances", r.cases}, {"skipped", skipped}};
    return r;
}

// ---------------------------------------------------------------------------
// 8-9: ring base and coherence

CheckResult sweep_ring_base(const SweepOptions& o) {
    CheckResult r{"8", "Every split epimorphism onto a ring is Schreier"};
    const auto sources = catalog_of(o, Kind::Semiring, o.ring_max_size);
    const auto z2 = catalog_or(o, "Z2ring", algebras::z2_ring());
    const auto report = check_ring_base_schreier(z2, sources, o.ring_max_size, o.guards);
    r.cases += report.points;
    if (!report.all_schreier()) r.violation(bare(to_json(*report.counterexample)));

    const auto zero = check_ring_base_schreier(algebras::zero_semiring(), sources, o.ring_max_size, o.guards);
    r.cases += zero.points;
    if (!zero.all_schreier()) r.violation(bare(to_json(*zero.counterexample)));

    const auto boolean = catalog_or(o, "Bool", algebras::boolean());
    bool rejected = false;
    try {
        check_ring_base_schreier(boolean, sources, o.ring_max_size, o.guards);
    } catch (const PreconditionError&) {
        rejected = true;
    }
    r.expect(rejected, [] { return Json{{"base", "Bool"}, {"expected", "rejected: not additively a group"}}; });
    const auto diag = diagonal_point(boolean);
    const bool diag_non_schreier = !check_schreier(diag).is_schreier();
    r.expect(diag_non_schreier, [&] { return Json{{"expected_non_schreier", bare(to_json(diag))}}; });
    r.details = {{"z2_ring_points", report.points},
                 {"z2_ring_schreier", report.schreier},
                 {"zero_base_points", zero.points},
                 {"boolean_rejected", rejected},
                 {"boolean_diagonal", bare(to_json(check_schreier(diag)))}};
    return r;
}

CheckResult sweep_coherence(const SweepOptions& o, const std::string& variety) {
    CheckResult r{"9", "Relative algebraic coherence of monoids and semirings"};
    std::vector<Kind> kinds;
    if (variety == "mon" || variety == "both") kinds.push_back(Kind::Monoid);
    if (variety == "srng" || variety == "both") kinds.push_back(Kind::Semiring);
    if (kinds.empty()) throw PreconditionError("coherence sweep: unknown variety '" + variety + "'");

    std::size_t instances = 0, along = 0, products = 0, vanishing_failures = 0, kernel_sums = 0;
    for (Kind kind : kinds) {
        const auto algebras = catalog_of(o, kind, o.coherence_max);
        for (const auto& b : algebras) {
            if (b->size() > o.coherence_base_max) continue;
            std::vector<Point> points;
            for (const auto& a : algebras)
                if (a->size() >= b->size())
                    for (auto& p : enumerate_points(a, b, o.guards)) points.push_back(std::move(p));
            for (const auto& inst : enumerate_coherence_instances(points, o.coherence_instances, o.guards)) {
                ++instances;
                auto instance_json = [&] { return bare(to_json(inst)); };
                r.expect(check_kernel_coherence(inst).holds, instance_json);
                for (const auto& e : algebras)
                    for (const auto& h : enumerate_homs(e, b, o.guards)) {
                        ++along;
                        r.expect(check_coherence_along(h, inst).holds,
                                 [&] { return Json{{"instance", instance_json()}, {"along", hom_map(h)}}; });
                    }
                if (kind != Kind::Semiring) continue;

                const auto& D = inst.middle.A();
                for (Elem a = 0; a < inst.left.A().size(); ++a)
                    for (Elem c = 0; c < inst.right.A().size(); ++c)
                        for (auto order : {ProductOrder::FG, ProductOrder::GF}) {
                            const Elem prod = order == ProductOrder::FG ? D.mul(inst.f(a), inst.g(c))
                                                                        : D.mul(inst.g(c), inst.f(a));
                            if (inst.middle.f()(prod) != 0) continue;
                            ++products;
                            bool ok = false, vanishing = false;
                            try {
                                const auto d = decompose_product_element(inst, a, c, order);
                                ok = d.ok();
                                vanishing = d.vanishing;
                            } catch (const Error&) {
                            }
                            if (!vanishing) ++vanishing_failures;
                            r.expect(ok, [&] {
                                return Json{{"instance", instance_json()}, {"a", a}, {"c", c},
                                            {"order", order == ProductOrder::FG ? "fg" : "gf"}};
                            });
                        }
                const auto jse = jointly_strongly_epi(inst.f, inst.g);
                for (Elem k : inst.middle.kernel().members()) {
                    const auto words = expand_to_words(inst, jse, k);
                    if (!words) continue;
                    ++kernel_sums;
                    r.expect(decompose_kernel_sum(inst, *words).verified,
                             [&] { return Json{{"instance", instance_json()}, {"kernel_element", k}}; });
                }
            }
        }
    }
    r.details = {{"variety", variety},
                 {"instances", instances},
                 {"pullbacks_checked", along},
                 {"product_decompositions", products},
                 {"vanishing_failures", vanishing_failures},
                 {"kernel_sums", kernel_sums}};
    return r;
}

// ---------------------------------------------------------------------------
// 10: determinism

CheckResult sweep_determinism(const SweepOptions& o) {
    CheckResult r{"10", "Witnesses replay and reports are byte-stable"};

    SweepOptions small = o;
    small.coherence_max = 3;
    small.coherence_base_max = 2;
    small.coherence_instances = 40;
    for (const auto& sweep : std::vector<std::function<CheckResult()>>{
             [&] { return sweep_ring_base(small); }, [&] { return sweep_coherence(small, "both"); }}) {
        const auto first = dump(to_json(sweep()));
        const auto second = dump(to_json(sweep()));
        r.expect(first == second, [&] { return Json{{"unstable_check", Json::parse(first).at("id")}}; });
    }

    struct Run {
        SearchGoal goal;
        const char* variety;
    };
    std::size_t replayed = 0;
    for (const auto& [goal, variety] : {Run{SearchGoal::NonSchreier, "mon"}, Run{SearchGoal::SSFLFailureOffClass, "mon"},
                                         Run{SearchGoal::KernelCoherenceFailure, "nasrng"},
                                         Run{SearchGoal::NonSchreier, "srng"}}) {
        SearchBounds bounds;
        bounds.variety = variety;
        bounds.max_size = 3;
        bounds.max_witnesses = 0;
        bounds.timeout = std::chrono::minutes(5);
        bounds.guards = o.guards;
        auto witnesses_with_seed = [&](std::uint64_t seed) {
            bounds.seed = seed;
            Json all = Json::array();
            for (const auto& w : search_counterexamples(goal, bounds).witnesses) all.push_back(to_json(w));
            return all;
        };
        const Json first = witnesses_with_seed(o.seed);
        const Json second = witnesses_with_seed(o.seed + 1);
        r.expect(dump(first) == dump(second), [&] {
            return Json{{"unstable_search", std::string(to_string(goal))}, {"variety", variety}};
        });
        for (const auto& w : first) {
            ++replayed;
            const auto back = replay_witness(Json::parse(dump(w)));
            r.expect(back.confirmed && back.same_verdict, [&] { return w; });
        }
    }

    Report a, b;
    a.argv = b.argv = {"schreier", "verify", "ring-base"};
    a.checks = b.checks = {sweep_ring_base(small)};
    b.started = a.started + std::chrono::hours(1);
    b.elapsed = a.elapsed + std::chrono::milliseconds(1234);
    r.expect(same_report(to_json(a), to_json(b)) &&
                 dump(without_timestamp(to_json(a))) == dump(without_timestamp(to_json(b))),
             [] { return Json{{"unstable_report", true}}; });
    r.details = {{"witnesses_replayed", replayed}};
    return r;
}

// ---------------------------------------------------------------------------

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {1, "Schreier implies strong", sweep_schreier_implies_strong},
        {2, "Pullback and fibre-product stability", sweep_limit_stability},
        {3, "Split short five lemma", sweep_ssfl},
        {4, "Action equivalence roundtrips", sweep_action_roundtrips},
        {5, "Monoid relative adjunction", sweep_mon_adjunction},
        {6, "Simplified cofree object", sweep_simplified_cofree},
        {7, "Semiring relative adjunction", sweep_srng_adjunction},
        {8, "Ring-base Schreier", sweep_ring_base},
        {9, "Coherence", [](const SweepOptions& o) { return sweep_coherence(o, "both"); }},
        {10, "Determinism and replay", sweep_determinism},
    };
    return list;
}

CheckResult run_timed(const std::string& id, const std::function<CheckResult()>& sweep) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
        r = sweep();
    } catch (const GuardExceeded&) {
        throw;
    } catch (const Error& e) {
        r.title = "error";
        r.violation(Json{{"error", e.what()}});
    }
    r.id = id;
    r.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    return r;
}

}  // namespace schreier
