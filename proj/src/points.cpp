#include "schreier/points.hpp"

namespace schreier {

std::string_view to_string(SchreierStatus status) {
    switch (status) {
        case SchreierStatus::Schreier: return "Schreier";
        case SchreierStatus::ExistenceFails: return "ExistenceFails";
        case SchreierStatus::UniquenessFails: return "UniquenessFails";
    }
    return "?";
}

namespace {

Subset kernel_of(const Hom& f) {
    std::vector<Elem> members;
    for (Elem a = 0; a < f.source().size(); ++a)
        if (f(a) == 0) members.push_back(a);
    return Subset(f.source().size(), std::move(members));
}

bool same_algebra(const AlgebraRef& l, const AlgebraRef& r) { return l == r || *l == *r; }

void require_hom(const Hom& h, std::string_view what) {
    if (auto c = check_hom(h); !c.ok)
        throw PreconditionError(std::string(what) + " is not a homomorphism (op " +
                                c.violation->op + " at " + std::to_string(c.violation->x) + "," +
                                std::to_string(c.violation->y) + ")");
}

}  // namespace

Point::Point(Hom f, Hom s) : f_(std::move(f)), s_(std::move(s)) {
    if (!same_algebra(f_.source_ref(), s_.target_ref()) || !same_algebra(f_.target_ref(), s_.source_ref()))
        throw PreconditionError("point: section does not go B -> A");
    require_hom(f_, "point projection");
    require_hom(s_, "point section");
    for (Elem b = 0; b < B().size(); ++b)
        if (f_(s_(b)) != b)
            throw PreconditionError("point: f s differs from the identity at " + std::to_string(b));
    kernel_ = kernel_of(f_);
}

SchreierWitness check_schreier(const Point& p) {
    const auto& A = p.A();
    SchreierWitness w;
    std::vector<Elem> q(A.size(), 0);
    for (Elem a = 0; a < A.size(); ++a) {
        const Elem sfa = p.s()(p.f()(a));
        std::vector<Elem> solutions;
        for (Elem alpha : p.kernel().members())
            if (A.add(alpha, sfa) == a) solutions.push_back(alpha);
        if (solutions.size() == 1) {
            q[a] = solutions.front();
            continue;
        }
        if (solutions.empty())
            w.failures.push_back({SchreierStatus::ExistenceFails, a, 0, 0});
        else
            w.failures.push_back({SchreierStatus::UniquenessFails, a, solutions[0], solutions[1]});
    }
    if (w.failures.empty())
        w.retraction = std::move(q);
    else
        w.status = w.failures.front().kind;
    return w;
}

StrongPointResult is_strong_point(const Point& p) {
    std::vector<Elem> gens(p.kernel().members().begin(), p.kernel().members().end());
    for (Elem b = 0; b < p.B().size(); ++b) gens.push_back(p.s()(b));
    auto generated = generated_subalgebra(p.A(), gens);
    const bool strong = generated.is_all();
    return {strong, std::move(generated)};
}

Point pullback_point(const Hom& h, const Point& p) {
    if (!same_algebra(h.target_ref(), p.B_ref()))
        throw PreconditionError("pullback_point: h does not land in the base of the point");
    auto pb = pullback(p.f(), h);
    std::vector<Elem> section(h.source().size());
    for (Elem e = 0; e < section.size(); ++e) section[e] = pb.index_of(p.s()(h(e)), e);
    return Point(pb.p2, Hom(h.source_ref(), pb.algebra, std::move(section)));
}

Point fibre_product_point(const Point& p1, const Point& p2) {
    if (!same_base(p1, p2)) throw PreconditionError("fibre_product_point: different bases");
    auto pb = pullback(p1.f(), p2.f());
    std::vector<Elem> section(p1.B().size());
    for (Elem b = 0; b < section.size(); ++b) section[b] = pb.index_of(p1.s()(b), p2.s()(b));
    return Point(compose(p1.f(), pb.p1), Hom(p1.B_ref(), pb.algebra, std::move(section)));
}

bool same_base(const Point& p1, const Point& p2) { return same_algebra(p1.B_ref(), p2.B_ref()); }

// ---------------------------------------------------------------------------
// Morphisms

PointMorphism::PointMorphism(Point source, Point target, Hom g, Hom h)
    : source_(std::move(source)), target_(std::move(target)), g_(std::move(g)), h_(std::move(h)) {
    if (!same_algebra(g_.source_ref(), source_.A_ref()) || !same_algebra(g_.target_ref(), target_.A_ref()) ||
        !same_algebra(h_.source_ref(), source_.B_ref()) || !same_algebra(h_.target_ref(), target_.B_ref()))
        throw PreconditionError("point morphism: endpoints do not match the points");
    require_hom(g_, "point morphism component g");
    require_hom(h_, "point morphism component h");
    for (Elem a = 0; a < source_.A().size(); ++a)
        if (h_(source_.f()(a)) != target_.f()(g_(a)))
            throw PreconditionError("point morphism: h f != f' g at " + std::to_string(a));
    for (Elem b = 0; b < source_.B().size(); ++b)
        if (g_(source_.s()(b)) != target_.s()(h_(b)))
            throw PreconditionError("point morphism: g s != s' h at " + std::to_string(b));
}

PointMorphism::PointMorphism(Point source, Point target, Hom g)
    : PointMorphism(source, target, g, identity_hom(source.B_ref())) {
    if (!same_base(source_, target_)) throw PreconditionError("fibre morphism across different bases");
}

bool PointMorphism::is_fibre() const {
    if (!same_base(source_, target_)) return false;
    for (Elem b = 0; b < h_.source().size(); ++b)
        if (h_(b) != b) return false;
    return true;
}

std::vector<PointMorphism> enumerate_fibre_morphisms(const Point& p1, const Point& p2,
                                                     const Guards& guards) {
    if (!same_base(p1, p2)) throw PreconditionError("enumerate_fibre_morphisms: different bases");
    std::vector<Elem> fixed(p1.A().size(), kNoElem);
    for (Elem b = 0; b < p1.B().size(); ++b) {
        const Elem at = p1.s()(b);
        if (fixed[at] != kNoElem && fixed[at] != p2.s()(b)) return {};
        fixed[at] = p2.s()(b);
    }
    std::vector<PointMorphism> out;
    for (auto& g : enumerate_homs(p1.A_ref(), p2.A_ref(), guards, fixed)) {
        bool over_b = true;
        for (Elem a = 0; a < p1.A().size() && over_b; ++a) over_b = p2.f()(g(a)) == p1.f()(a);
        if (over_b) out.emplace_back(p1, p2, std::move(g));
    }
    return out;
}

Hom kernel_restriction(const PointMorphism& m) {
    auto k1 = m.source().kernel_algebra();
    auto k2 = m.target().kernel_algebra();
    std::vector<Elem> map(k1.algebra->size());
    for (Elem x = 0; x < map.size(); ++x) {
        const Elem image = m.g()(k1.inclusion(x));
        if (k2.index_of[image] == kNoElem)
            throw PreconditionError("kernel_restriction: g does not preserve kernels");
        map[x] = k2.index_of[image];
    }
    return Hom(k1.algebra, k2.algebra, std::move(map));
}

bool ssfl_implication(const PointMorphism& m) {
    if (!m.is_fibre()) throw PreconditionError("SSFL is stated for fibre morphisms");
    const auto& k1 = m.source().kernel();
    const auto& k2 = m.target().kernel();
    bool kernel_bijective = k1.size() == k2.size();
    if (kernel_bijective) {
        std::vector<bool> hit(m.target().A().size(), false);
        for (Elem x : k1.members()) {
            const Elem y = m.g()(x);
            if (!k2.contains(y) || hit[y]) {
                kernel_bijective = false;
                break;
            }
            hit[y] = true;
        }
    }
    return !kernel_bijective || m.g().is_bijective();
}

bool check_ssfl(const PointMorphism& m) {
    if (!m.is_fibre()) throw PreconditionError("check_ssfl: not a fibre morphism");
    if (!check_schreier(m.source()).is_schreier() || !check_schreier(m.target()).is_schreier())
        throw PreconditionError("check_ssfl: both points must be Schreier");
    return ssfl_implication(m);
}

std::optional<PointMorphism> find_point_isomorphism(const Point& p, const Point& q, const Guards& guards) {
    if (p.A().size() != q.A().size() || p.B().size() != q.B().size()) return std::nullopt;
    if (!p.A().same_signature(q.A()) || !p.B().same_signature(q.B())) return std::nullopt;
    for (auto& h : enumerate_homs(p.B_ref(), q.B_ref(), guards)) {
        if (!h.is_bijective()) continue;
        std::vector<Elem> fixed(p.A().size(), kNoElem);
        bool consistent = true;
        for (Elem b = 0; b < p.B().size() && consistent; ++b) {
            const Elem at = p.s()(b);
            const Elem want = q.s()(h(b));
            consistent = fixed[at] == kNoElem || fixed[at] == want;
            fixed[at] = want;
        }
        if (!consistent) continue;
        for (auto& g : enumerate_homs(p.A_ref(), q.A_ref(), guards, fixed)) {
            if (!g.is_bijective()) continue;
            bool square = true;
            for (Elem a = 0; a < p.A().size() && square; ++a) square = h(p.f()(a)) == q.f()(g(a));
            if (square) return PointMorphism(p, q, std::move(g), h);
        }
    }
    return std::nullopt;
}

std::vector<Point> enumerate_points(const AlgebraRef& a, const AlgebraRef& b, const Guards& guards) {
    std::vector<Point> out;
    if (!a->same_signature(*b)) return out;
    const auto sections = enumerate_homs(b, a, guards);
    for (const auto& f : enumerate_homs(a, b, guards)) {
        if (!f.is_surjective()) continue;
        for (const auto& s : sections) {
            bool split = true;
            for (Elem x = 0; x < b->size() && split; ++x) split = f(s(x)) == x;
            if (split) out.emplace_back(f, s);
        }
    }
    return out;
}

}  // namespace schreier
