#include "schreier/actions.hpp"

#include <algorithm>
#include <map>

namespace schreier {

namespace {

bool same_algebra(const AlgebraRef& l, const AlgebraRef& r) { return l == r || *l == *r; }

void require_kind(const Algebra& a, Kind kind, std::string_view what) {
    if (a.kind() != kind)
        throw SignatureMismatch(std::string(what) + ": expected kind " + std::string(to_string(kind)) +
                                ", got " + std::string(to_string(a.kind())));
}

void check_table(std::span<const Elem> table, std::size_t rows, std::size_t cols, std::size_t range,
                 std::string_view what) {
    if (table.size() != rows * cols)
        throw StructuralError(std::string(what) + " table has " + std::to_string(table.size()) +
                              " entries, expected " + std::to_string(rows * cols));
    for (Elem v : table)
        if (v >= range)
            throw StructuralError(std::string(what) + " table value " + std::to_string(v) +
                                  " out of range");
}

std::vector<std::vector<Elem>> to_rows(std::span<const Elem> t, std::size_t rows, std::size_t cols) {
    std::vector<std::vector<Elem>> out(rows);
    for (std::size_t r = 0; r < rows; ++r)
        out[r].assign(t.begin() + static_cast<std::ptrdiff_t>(r * cols),
                      t.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
    return out;
}

// Records the first counterexample for one named law.
struct LawRecorder {
    LawReport& report;
    std::size_t index;

    LawRecorder(LawReport& r, std::string law) : report(r), index(r.checks.size()) {
        report.checks.push_back(LawCheck{"act", std::move(law), true, {}});
    }
    bool fail(std::vector<Elem> witness) {
        auto& c = report.checks[index];
        if (c.holds) {
            c.holds = false;
            c.witness = std::move(witness);
        }
        return false;
    }
    bool ok() const { return report.checks[index].holds; }
};

}  // namespace

// ---------------------------------------------------------------------------
// Action types

MonoidAction::MonoidAction(AlgebraRef acting, AlgebraRef object, std::vector<Elem> table)
    : acting_(std::move(acting)), object_(std::move(object)), table_(std::move(table)) {
    require_kind(*acting_, Kind::Monoid, "monoid action (acting)");
    require_kind(*object_, Kind::Monoid, "monoid action (object)");
    check_table(table_, acting_->size(), object_->size(), object_->size(), "action");
}

std::vector<std::vector<Elem>> MonoidAction::rows() const {
    return to_rows(table_, acting_->size(), object_->size());
}

bool MonoidAction::operator==(const MonoidAction& other) const {
    return table_ == other.table_ && same_algebra(acting_, other.acting_) &&
           same_algebra(object_, other.object_);
}

SemiringAction::SemiringAction(AlgebraRef acting, AlgebraRef object, std::vector<Elem> left,
                               std::vector<Elem> right)
    : acting_(std::move(acting)), object_(std::move(object)), left_(std::move(left)),
      right_(std::move(right)) {
    require_kind(*acting_, Kind::Semiring, "semiring action (acting)");
    require_kind(*object_, Kind::Semiring, "semiring action (object)");
    check_table(left_, acting_->size(), object_->size(), object_->size(), "left action");
    check_table(right_, object_->size(), acting_->size(), object_->size(), "right action");
}

std::vector<std::vector<Elem>> SemiringAction::left_rows() const {
    return to_rows(left_, acting_->size(), object_->size());
}

std::vector<std::vector<Elem>> SemiringAction::right_rows() const {
    return to_rows(right_, object_->size(), acting_->size());
}

bool SemiringAction::operator==(const SemiringAction& other) const {
    return left_ == other.left_ && right_ == other.right_ && same_algebra(acting_, other.acting_) &&
           same_algebra(object_, other.object_);
}

MonoidAction trivial_action(const AlgebraRef& acting, const AlgebraRef& object) {
    std::vector<Elem> table(acting->size() * object->size());
    for (Elem b = 0; b < acting->size(); ++b)
        for (Elem x = 0; x < object->size(); ++x) table[b * object->size() + x] = x;
    return MonoidAction(acting, object, std::move(table));
}

SemiringAction zero_action(const AlgebraRef& acting, const AlgebraRef& object) {
    const std::size_t n = acting->size() * object->size();
    return SemiringAction(acting, object, std::vector<Elem>(n, 0), std::vector<Elem>(n, 0));
}

// ---------------------------------------------------------------------------
// Validation

LawReport validate_action(const MonoidAction& a) {
    const auto& B = a.acting();
    const auto& X = a.object();
    LawReport report;
    LawRecorder endo(report, "endomorphism");
    LawRecorder unit(report, "identity");
    LawRecorder comp(report, "composition");
    for (Elem b = 0; b < B.size() && endo.ok(); ++b) {
        if (a(b, 0) != 0) endo.fail({b, 0, 0});
        for (Elem x = 0; x < X.size() && endo.ok(); ++x)
            for (Elem y = 0; y < X.size() && endo.ok(); ++y)
                if (a(b, X.add(x, y)) != X.add(a(b, x), a(b, y))) endo.fail({b, x, y});
    }
    for (Elem x = 0; x < X.size() && unit.ok(); ++x)
        if (a(0, x) != x) unit.fail({x});
    for (Elem b1 = 0; b1 < B.size() && comp.ok(); ++b1)
        for (Elem b2 = 0; b2 < B.size() && comp.ok(); ++b2)
            for (Elem x = 0; x < X.size() && comp.ok(); ++x)
                if (a(B.add(b1, b2), x) != a(b1, a(b2, x))) comp.fail({b1, b2, x});
    return report;
}

LawReport validate_action(const SemiringAction& a) {
    const auto& B = a.acting();
    const auto& X = a.object();
    const Elem nb = static_cast<Elem>(B.size());
    const Elem nx = static_cast<Elem>(X.size());
    LawReport report;

    {
        LawRecorder r(report, "(1) zero laws");
        for (Elem x = 0; x < nx && r.ok(); ++x)
            if (a.left(0, x) != 0 || a.right(x, 0) != 0) r.fail({x});
        for (Elem b = 0; b < nb && r.ok(); ++b)
            if (a.left(b, 0) != 0 || a.right(0, b) != 0) r.fail({b});
    }
    {
        LawRecorder l(report, "(2) left additive in x");
        LawRecorder r(report, "(2) right additive in x");
        for (Elem b = 0; b < nb; ++b)
            for (Elem x1 = 0; x1 < nx; ++x1)
                for (Elem x2 = 0; x2 < nx; ++x2) {
                    if (l.ok() && a.left(b, X.add(x1, x2)) != X.add(a.left(b, x1), a.left(b, x2)))
                        l.fail({b, x1, x2});
                    if (r.ok() && a.right(X.add(x1, x2), b) != X.add(a.right(x1, b), a.right(x2, b)))
                        r.fail({b, x1, x2});
                }
    }
    {
        LawRecorder l(report, "(3) left additive in b");
        LawRecorder r(report, "(3) right additive in b");
        for (Elem b1 = 0; b1 < nb; ++b1)
            for (Elem b2 = 0; b2 < nb; ++b2)
                for (Elem x = 0; x < nx; ++x) {
                    if (l.ok() && a.left(B.add(b1, b2), x) != X.add(a.left(b1, x), a.left(b2, x)))
                        l.fail({b1, b2, x});
                    if (r.ok() && a.right(x, B.add(b1, b2)) != X.add(a.right(x, b1), a.right(x, b2)))
                        r.fail({b1, b2, x});
                }
    }
    {
        LawRecorder l(report, "(4) b.(x1 x2) = (b.x1) x2");
        LawRecorder r(report, "(4) (x1 x2).b = x1 (x2.b)");
        for (Elem b = 0; b < nb; ++b)
            for (Elem x1 = 0; x1 < nx; ++x1)
                for (Elem x2 = 0; x2 < nx; ++x2) {
                    if (l.ok() && a.left(b, X.mul(x1, x2)) != X.mul(a.left(b, x1), x2))
                        l.fail({b, x1, x2});
                    if (r.ok() && a.right(X.mul(x1, x2), b) != X.mul(x1, a.right(x2, b)))
                        r.fail({b, x1, x2});
                }
    }
    {
        LawRecorder l(report, "(5) (b1 b2).x = b1.(b2.x)");
        LawRecorder r(report, "(5) x.(b1 b2) = (x.b1).b2");
        for (Elem b1 = 0; b1 < nb; ++b1)
            for (Elem b2 = 0; b2 < nb; ++b2)
                for (Elem x = 0; x < nx; ++x) {
                    if (l.ok() && a.left(B.mul(b1, b2), x) != a.left(b1, a.left(b2, x)))
                        l.fail({b1, b2, x});
                    if (r.ok() && a.right(x, B.mul(b1, b2)) != a.right(a.right(x, b1), b2))
                        r.fail({b1, b2, x});
                }
    }
    {
        LawRecorder l(report, "(6) x1 (b.x2) = (x1.b) x2");
        for (Elem b = 0; b < nb && l.ok(); ++b)
            for (Elem x1 = 0; x1 < nx && l.ok(); ++x1)
                for (Elem x2 = 0; x2 < nx && l.ok(); ++x2)
                    if (X.mul(x1, a.left(b, x2)) != X.mul(a.right(x1, b), x2)) l.fail({b, x1, x2});
        LawRecorder r(report, "(6) (b1.x).b2 = b1.(x.b2)");
        for (Elem b1 = 0; b1 < nb && r.ok(); ++b1)
            for (Elem b2 = 0; b2 < nb && r.ok(); ++b2)
                for (Elem x = 0; x < nx && r.ok(); ++x)
                    if (a.right(a.left(b1, x), b2) != a.left(b1, a.right(x, b2))) r.fail({b1, b2, x});
    }
    return report;
}

// ---------------------------------------------------------------------------
// Points <-> actions

NotSchreier::NotSchreier(SchreierWitness witness)
    : PreconditionError("point is not a Schreier split epimorphism (" +
                        std::string(to_string(witness.status)) + " at element " +
                        std::to_string(witness.failures.front().element) + ")"),
      witness_(std::move(witness)) {}

namespace {

std::vector<Elem> require_retraction(const Point& p) {
    auto w = check_schreier(p);
    if (!w.is_schreier()) throw NotSchreier(std::move(w));
    return std::move(w.retraction);
}

}  // namespace

MonoidAction point_to_monoid_action(const Point& p) {
    require_kind(p.A(), Kind::Monoid, "point_to_monoid_action");
    const auto q = require_retraction(p);
    const auto k = p.kernel_algebra();
    const auto& A = p.A();
    const std::size_t nx = k.algebra->size();
    std::vector<Elem> table(p.B().size() * nx);
    for (Elem b = 0; b < p.B().size(); ++b)
        for (Elem x = 0; x < nx; ++x)
            table[b * nx + x] = k.restrict(q[A.add(p.s()(b), k.inclusion(x))]);
    return MonoidAction(p.B_ref(), k.algebra, std::move(table));
}

SemiringAction point_to_semiring_action(const Point& p) {
    require_kind(p.A(), Kind::Semiring, "point_to_semiring_action");
    const auto q = require_retraction(p);
    const auto k = p.kernel_algebra();
    const auto& A = p.A();
    const std::size_t nx = k.algebra->size();
    const std::size_t nb = p.B().size();
    std::vector<Elem> left(nb * nx), right(nx * nb);
    for (Elem b = 0; b < nb; ++b)
        for (Elem x = 0; x < nx; ++x) {
            left[b * nx + x] = k.restrict(q[A.mul(p.s()(b), k.inclusion(x))]);
            right[x * nb + b] = k.restrict(q[A.mul(k.inclusion(x), p.s()(b))]);
        }
    return SemiringAction(p.B_ref(), k.algebra, std::move(left), std::move(right));
}

AnyAction point_to_action(const Point& p) {
    if (p.A().kind() == Kind::Semiring) return point_to_semiring_action(p);
    if (p.A().kind() == Kind::Monoid) return point_to_monoid_action(p);
    throw SignatureMismatch("actions are defined for monoids and semirings only");
}

namespace {

Point semidirect_point(const AlgebraRef& B, const AlgebraRef& P) {
    if (auto report = validate_algebra(*P); !report.accepted()) {
        const auto* bad = report.first_violation();
        throw Error("semidirect product violates " + bad->op + "." + bad->law +
                    "; the construction formula is wrong");
    }
    const std::size_t nb = B->size();
    std::vector<Elem> f(P->size()), s(nb);
    for (Elem z = 0; z < P->size(); ++z) f[z] = static_cast<Elem>(z % nb);
    for (Elem b = 0; b < nb; ++b) s[b] = b;
    return Point(Hom(P, B, std::move(f)), Hom(B, P, std::move(s)));
}

void require_valid_action(const LawReport& report) {
    if (const auto* bad = report.first_violation())
        throw PreconditionError("invalid action: law '" + bad->law + "' fails");
}

}  // namespace

Point semidirect(const MonoidAction& a) {
    require_valid_action(validate_action(a));
    const auto& B = a.acting();
    const auto& X = a.object();
    const std::size_t nb = B.size();
    auto add = Table::from_function(X.size() * nb, [&](Elem z, Elem w) {
        const Elem x1 = z / nb, b1 = z % nb, x2 = w / nb, b2 = w % nb;
        return semidirect_index(X.add(x1, a(b1, x2)), B.add(b1, b2), nb);
    });
    return semidirect_point(a.acting_ref(), make_algebra(Kind::Monoid, std::move(add)));
}

Point semidirect_srng(const SemiringAction& a) {
    require_valid_action(validate_action(a));
    const auto& B = a.acting();
    const auto& X = a.object();
    const std::size_t nb = B.size();
    const std::size_t n = X.size() * nb;
    auto add = Table::from_function(n, [&](Elem z, Elem w) {
        return semidirect_index(X.add(z / nb, w / nb), B.add(z % nb, w % nb), nb);
    });
    auto mul = Table::from_function(n, [&](Elem z, Elem w) {
        const Elem x1 = z / nb, b1 = z % nb, x2 = w / nb, b2 = w % nb;
        const Elem x = X.add(X.add(X.mul(x1, x2), a.right(x1, b2)), a.left(b1, x2));
        return semidirect_index(x, B.mul(b1, b2), nb);
    });
    auto P = make_algebra(Kind::Semiring, std::move(add),
                          std::vector<Operation>{Operation{"mul", std::move(mul), {}}});
    return semidirect_point(a.acting_ref(), P);
}

Point semidirect_any(const AnyAction& a) {
    return std::visit(
        [](const auto& act) {
            if constexpr (std::is_same_v<std::decay_t<decltype(act)>, MonoidAction>)
                return semidirect(act);
            else
                return semidirect_srng(act);
        },
        a);
}

// ---------------------------------------------------------------------------
// Equivariance

bool is_equivariant(const Hom& g, const MonoidAction& a1, const MonoidAction& a2) {
    for (Elem b = 0; b < a1.acting().size(); ++b)
        for (Elem x = 0; x < a1.object().size(); ++x)
            if (g(a1(b, x)) != a2(b, g(x))) return false;
    return true;
}

bool is_equivariant(const Hom& g, const SemiringAction& a1, const SemiringAction& a2) {
    for (Elem b = 0; b < a1.acting().size(); ++b)
        for (Elem x = 0; x < a1.object().size(); ++x)
            if (g(a1.left(b, x)) != a2.left(b, g(x)) || g(a1.right(x, b)) != a2.right(g(x), b))
                return false;
    return true;
}

namespace {

template <class Action>
std::vector<Hom> equivariant_filter(const Action& a1, const Action& a2, const Guards& guards) {
    if (!same_algebra(a1.acting_ref(), a2.acting_ref()))
        throw PreconditionError("equivariant_homs: actions of different algebras");
    std::vector<Hom> out;
    for (auto& g : enumerate_homs(a1.object_ref(), a2.object_ref(), guards))
        if (is_equivariant(g, a1, a2)) out.push_back(std::move(g));
    return out;
}

}  // namespace

std::vector<Hom> equivariant_homs(const MonoidAction& a1, const MonoidAction& a2, const Guards& guards) {
    return equivariant_filter(a1, a2, guards);
}

std::vector<Hom> equivariant_homs(const SemiringAction& a1, const SemiringAction& a2,
                                  const Guards& guards) {
    return equivariant_filter(a1, a2, guards);
}

Hom semidirect_map(const Hom& g, const Point& from, const Point& to) {
    const std::size_t nb = from.B().size();
    if (to.B().size() != nb || from.A().size() != g.source().size() * nb ||
        to.A().size() != g.target().size() * nb)
        throw PreconditionError("semidirect_map: points are not semidirect products over one base");
    std::vector<Elem> map(from.A().size());
    for (Elem z = 0; z < map.size(); ++z) map[z] = semidirect_index(g(z / nb), z % nb, nb);
    return Hom(from.A_ref(), to.A_ref(), std::move(map));
}

// ---------------------------------------------------------------------------
// Enumerating actions

namespace {

using MapKey = std::vector<Elem>;

std::map<MapKey, Elem> index_maps(const std::vector<Hom>& maps) {
    std::map<MapKey, Elem> idx;
    for (std::size_t i = 0; i < maps.size(); ++i)
        idx.emplace(MapKey(maps[i].map().begin(), maps[i].map().end()), static_cast<Elem>(i));
    return idx;
}

Elem lookup(const std::map<MapKey, Elem>& idx, const MapKey& key) {
    auto it = idx.find(key);
    if (it == idx.end()) throw Error("endomorphism set is not closed under the operation");
    return it->second;
}

MapKey after(const Hom& second, const Hom& first) {
    MapKey out(first.source().size());
    for (Elem x = 0; x < out.size(); ++x) out[x] = second(first(x));
    return out;
}

}  // namespace

EndomorphismMonoid endomorphism_monoid(const AlgebraRef& x, const Guards& guards) {
    auto maps = enumerate_homs(x, x, guards);
    const auto id = identity_hom(x);
    std::stable_partition(maps.begin(), maps.end(), [&](const Hom& h) { return h == id; });
    const auto idx = index_maps(maps);
    const std::size_t n = maps.size();
    auto table = Table::from_function(n, [&](Elem i, Elem j) { return lookup(idx, after(maps[i], maps[j])); });
    return {make_algebra(Kind::Monoid, std::move(table)), std::move(maps)};
}

std::vector<MonoidAction> enumerate_monoid_actions(const AlgebraRef& acting, const AlgebraRef& object,
                                                   const Guards& guards) {
    require_kind(*acting, Kind::Monoid, "enumerate_monoid_actions");
    const auto end = endomorphism_monoid(object, guards);
    std::vector<MonoidAction> out;
    const std::size_t nx = object->size();
    for (const auto& phi : enumerate_homs(acting, end.algebra, guards)) {
        std::vector<Elem> table(acting->size() * nx);
        for (Elem b = 0; b < acting->size(); ++b)
            for (Elem x = 0; x < nx; ++x) table[b * nx + x] = end.maps[phi(b)](x);
        out.emplace_back(acting, object, std::move(table));
    }
    return out;
}

namespace {

// Additive endomorphisms of X satisfying a one-sided linearity condition,
// as a semiring under pointwise + and composition (in the given order).
struct OneSidedMaps {
    AlgebraRef algebra;
    std::vector<Hom> maps;
};

OneSidedMaps one_sided_maps(const AlgebraRef& x, bool left, const Guards& guards) {
    const auto reduct = additive_reduct(*x);
    const auto& X = *x;
    std::vector<Hom> maps;
    for (auto& psi : enumerate_homs(reduct, reduct, guards)) {
        bool ok = true;
        for (Elem x1 = 0; x1 < X.size() && ok; ++x1)
            for (Elem x2 = 0; x2 < X.size() && ok; ++x2)
                ok = left ? psi(X.mul(x1, x2)) == X.mul(psi(x1), x2)
                          : psi(X.mul(x1, x2)) == X.mul(x1, psi(x2));
        if (ok) maps.push_back(std::move(psi));
    }
    // maps[0] is the zero map (lexicographically least).
    const auto idx = index_maps(maps);
    const std::size_t n = maps.size();
    auto add = Table::from_function(n, [&](Elem i, Elem j) {
        MapKey sum(X.size());
        for (Elem v = 0; v < X.size(); ++v) sum[v] = X.add(maps[i](v), maps[j](v));
        return lookup(idx, sum);
    });
    auto mul = Table::from_function(n, [&](Elem i, Elem j) {
        return lookup(idx, left ? after(maps[i], maps[j]) : after(maps[j], maps[i]));
    });
    auto alg = make_algebra(Kind::Semiring, std::move(add),
                            std::vector<Operation>{Operation{"mul", std::move(mul), {}}});
    return {alg, std::move(maps)};
}

}  // namespace

std::vector<SemiringAction> enumerate_semiring_actions(const AlgebraRef& acting,
                                                       const AlgebraRef& object,
                                                       const Guards& guards) {
    require_kind(*acting, Kind::Semiring, "enumerate_semiring_actions");
    require_kind(*object, Kind::Semiring, "enumerate_semiring_actions");
    const auto lmaps = one_sided_maps(object, true, guards);
    const auto rmaps = one_sided_maps(object, false, guards);
    const auto lefts = enumerate_homs(acting, lmaps.algebra, guards);
    const auto rights = enumerate_homs(acting, rmaps.algebra, guards);
    const std::size_t nb = acting->size();
    const std::size_t nx = object->size();
    const auto& X = *object;
    std::vector<SemiringAction> out;
    for (const auto& lam : lefts) {
        for (const auto& rho : rights) {
            auto L = [&](Elem b, Elem x) { return lmaps.maps[lam(b)](x); };
            auto R = [&](Elem x, Elem b) { return rmaps.maps[rho(b)](x); };
            bool ok = true;
            for (Elem b = 0; b < nb && ok; ++b)
                for (Elem x1 = 0; x1 < nx && ok; ++x1)
                    for (Elem x2 = 0; x2 < nx && ok; ++x2)
                        ok = X.mul(x1, L(b, x2)) == X.mul(R(x1, b), x2);
            for (Elem b1 = 0; b1 < nb && ok; ++b1)
                for (Elem b2 = 0; b2 < nb && ok; ++b2)
                    for (Elem x = 0; x < nx && ok; ++x) ok = R(L(b1, x), b2) == L(b1, R(x, b2));
            if (!ok) continue;
            std::vector<Elem> left(nb * nx), right(nx * nb);
            for (Elem b = 0; b < nb; ++b)
                for (Elem x = 0; x < nx; ++x) {
                    left[b * nx + x] = L(b, x);
                    right[x * nb + b] = R(x, b);
                }
            out.emplace_back(acting, object, std::move(left), std::move(right));
        }
    }
    return out;
}

}  // namespace schreier
