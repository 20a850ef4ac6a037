#include "schreier/catalog.hpp"

#include <algorithm>
#include <filesystem>

#include "schreier/io.hpp"

namespace schreier {

namespace algebras {

namespace {

AlgebraRef monoid(std::size_t n, auto&& add) {
    return make_algebra(Kind::Monoid, Table::from_function(n, add));
}

AlgebraRef semiring(std::size_t n, auto&& add, auto&& mul) {
    return make_algebra(Kind::Semiring, Table::from_function(n, add),
                        std::vector<Operation>{Operation{"mul", Table::from_function(n, mul), {}}});
}

}  // namespace

AlgebraRef zero_monoid() {
    static const auto a = monoid(1, [](Elem, Elem) { return 0; });
    return a;
}

AlgebraRef zero_semiring() {
    static const auto a = semiring(1, [](Elem, Elem) { return 0; }, [](Elem, Elem) { return 0; });
    return a;
}

AlgebraRef b2() {
    static const auto a = monoid(2, [](Elem x, Elem y) { return x | y; });
    return a;
}

AlgebraRef n3() {
    static const auto a = monoid(3, [](Elem x, Elem y) { return std::min<Elem>(x + y, 2); });
    return a;
}

AlgebraRef z2() {
    static const auto a = monoid(2, [](Elem x, Elem y) { return x ^ y; });
    return a;
}

AlgebraRef rz3() {
    static const auto a = monoid(3, [](Elem x, Elem y) { return y == 0 ? x : y; });
    return a;
}

AlgebraRef z2_ring() {
    static const auto a = semiring(2, [](Elem x, Elem y) { return x ^ y; },
                                   [](Elem x, Elem y) { return x & y; });
    return a;
}

AlgebraRef boolean() {
    static const auto a = semiring(2, [](Elem x, Elem y) { return x | y; },
                                   [](Elem x, Elem y) { return x & y; });
    return a;
}

AlgebraRef t3() {
    static const auto a = semiring(3, [](Elem x, Elem y) { return std::min<Elem>(x + y, 2); },
                                   [](Elem x, Elem y) { return std::min<Elem>(x * y, 2); });
    return a;
}

}  // namespace algebras

const Catalog& Catalog::builtin() {
    static const Catalog catalog = [] {
        Catalog c;
        auto add = [&](std::string name, AlgebraRef a) {
            c.algebras_.push_back({std::move(name), std::move(a)});
        };
        const std::vector<NamedAlgebra> monoids = {
            {"B2", algebras::b2()}, {"N3", algebras::n3()}, {"Z2", algebras::z2()}, {"RZ3", algebras::rz3()}};
        const std::vector<NamedAlgebra> semirings = {
            {"Z2ring", algebras::z2_ring()}, {"Bool", algebras::boolean()}, {"T3", algebras::t3()}};

        add("zero", algebras::zero_monoid());
        for (const auto& m : monoids) add(m.name, m.algebra);
        for (std::size_t i = 0; i < monoids.size(); ++i)
            for (std::size_t j = i; j < monoids.size(); ++j)
                add(monoids[i].name + "x" + monoids[j].name,
                    product(monoids[i].algebra, monoids[j].algebra).algebra);
        add("zero_srng", algebras::zero_semiring());
        for (const auto& s : semirings) add(s.name, s.algebra);
        for (std::size_t i = 0; i < semirings.size(); ++i)
            for (std::size_t j = i; j < semirings.size(); ++j)
                add(semirings[i].name + "x" + semirings[j].name,
                    product(semirings[i].algebra, semirings[j].algebra).algebra);

        const auto B2 = c.algebra("B2");
        const auto N3 = c.algebra("N3");
        const auto Z2 = c.algebra("Z2");
        const auto RZ3 = c.algebra("RZ3");
        const auto B2xB2 = c.algebra("B2xB2");
        const auto Bool = c.algebra("Bool");
        const auto Z2ring = c.algebra("Z2ring");
        const auto T3 = c.algebra("T3");
        const auto BoolxBool = c.algebra("BoolxBool");

        // B2 x B2 elements: (x, y) -> 2x + y.
        auto& ma = c.monoid_actions_;
        ma.push_back({"triv_B2_on_Z2", trivial_action(B2, Z2)});
        ma.push_back({"B2_kills_Z2", MonoidAction(B2, Z2, {0, 1, 0, 0})});
        ma.push_back({"Z2_swaps_B2xB2", MonoidAction(Z2, B2xB2, {0, 1, 2, 3, 0, 2, 1, 3})});
        ma.push_back({"RZ3_projects_B2xB2", MonoidAction(RZ3, B2xB2, {0, 1, 2, 3, 0, 0, 3, 3, 0, 3, 0, 3})});
        ma.push_back({"N3_kills_B2", MonoidAction(N3, B2, {0, 1, 0, 0, 0, 0})});
        ma.push_back({"triv_RZ3_on_N3", trivial_action(RZ3, N3)});

        auto self_action = [](const AlgebraRef& s) {
            const std::size_t n = s->size();
            std::vector<Elem> left(n * n), right(n * n);
            for (Elem b = 0; b < n; ++b)
                for (Elem x = 0; x < n; ++x) {
                    left[b * n + x] = s->mul(b, x);
                    right[x * n + b] = s->mul(x, b);
                }
            return SemiringAction(s, s, std::move(left), std::move(right));
        };
        auto& sa = c.semiring_actions_;
        sa.push_back({"Bool_self", self_action(Bool)});
        sa.push_back({"Z2ring_self", self_action(Z2ring)});
        sa.push_back({"T3_self", self_action(T3)});
        sa.push_back({"zero_Bool_on_Z2ring", zero_action(Bool, Z2ring)});
        {
            // b . (x, y) = (bx, by) on Bool x Bool, elements (x, y) -> 2x + y.
            std::vector<Elem> left(2 * 4), right(4 * 2);
            for (Elem b = 0; b < 2; ++b)
                for (Elem z = 0; z < 4; ++z) {
                    const Elem v = ((b & (z >> 1)) << 1) | (b & z & 1);
                    left[b * 4 + z] = v;
                    right[z * 2 + b] = v;
                }
            sa.push_back({"Bool_on_BoolxBool", SemiringAction(Bool, BoolxBool, left, right)});
        }

        auto& pts = c.points_;
        {
            auto pr = product(B2, B2);
            pts.push_back({"diag_B2", Point(pr.pi1, Hom(B2, pr.algebra, {0, 3}))});
            auto pz = product(B2, Z2);
            pts.push_back({"prod_B2_Z2", Point(pz.pi1, pz.in1)});
            auto pb = product(Bool, Bool);
            pts.push_back({"diag_Bool", Point(pb.pi1, Hom(Bool, pb.algebra, {0, 3}))});
            auto pzr = product(Bool, Z2ring);
            pts.push_back({"prod_Bool_Z2ring", Point(pzr.pi1, pzr.in1)});
        }
        for (const auto& a : ma) pts.push_back({"semidirect_" + a.name, semidirect(a.action)});
        for (const auto& a : sa) pts.push_back({"semidirect_" + a.name, semidirect_srng(a.action)});
        return c;
    }();
    return catalog;
}

Catalog Catalog::from_directory(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw StructuralError("catalog directory '" + dir + "' not found");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    Catalog c;
    for (const auto& f : files) c.algebras_.push_back({f.stem().string(), load_algebra_file(f.string())});
    return c;
}

std::vector<NamedAlgebra> Catalog::algebras(Kind kind, std::size_t max_size) const {
    std::vector<NamedAlgebra> out;
    for (const auto& a : algebras_)
        if (a.algebra->kind() == kind && a.algebra->size() <= max_size) out.push_back(a);
    return out;
}

std::vector<NamedAlgebra> Catalog::variety(std::string_view variety, std::size_t max_size) const {
    if (variety == "mon") return algebras(Kind::Monoid, max_size);
    if (variety == "srng") return algebras(Kind::Semiring, max_size);
    if (variety == "cmon") return algebras(Kind::CommutativeMonoid, max_size);
    if (variety == "jt") return algebras(Kind::JTGeneric, max_size);
    throw PreconditionError("unknown variety '" + std::string(variety) + "'");
}

AlgebraRef Catalog::algebra(std::string_view name) const {
    for (const auto& a : algebras_)
        if (a.name == name) return a.algebra;
    throw PreconditionError("no catalog algebra named '" + std::string(name) + "'");
}

std::optional<std::string> Catalog::name_of(const Algebra& a) const {
    for (const auto& n : algebras_)
        if (*n.algebra == a) return n.name;
    return std::nullopt;
}

const Point& Catalog::point(std::string_view name) const {
    for (const auto& p : points_)
        if (p.name == name) return p.point;
    throw PreconditionError("no catalog point named '" + std::string(name) + "'");
}

std::vector<std::string> Catalog::names() const {
    std::vector<std::string> out;
    for (const auto& a : algebras_) out.push_back("algebra " + a.name);
    for (const auto& a : monoid_actions_) out.push_back("action " + a.name);
    for (const auto& a : semiring_actions_) out.push_back("action " + a.name);
    for (const auto& p : points_) out.push_back("point " + p.name);
    return out;
}

}  // namespace schreier
