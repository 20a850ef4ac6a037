#include "schreier/adjoints.hpp"

#include <algorithm>
#include <string>

namespace schreier {

namespace {

bool same_algebra(const Algebra& l, const Algebra& r) { return &l == &r || l == r; }

void require_surjective(const Hom& h, std::string_view what) {
    if (!h.is_surjective()) throw PreconditionError(std::string(what) + ": h is not surjective");
}

void require_hom(const Hom& h, std::string_view what) {
    if (!check_hom(h).ok) throw PreconditionError(std::string(what) + ": h is not a homomorphism");
}

std::uint64_t power_or_saturate(std::uint64_t base, std::size_t exp) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
        r *= base;
    }
    return r;
}

// Advances a to the next array in lexicographic order (last index fastest).
bool next_function(std::vector<Elem>& u, std::size_t range) {
    for (std::size_t i = u.size(); i-- > 0;) {
        if (++u[i] < range) return true;
        u[i] = 0;
    }
    return false;
}

template <class T>
std::vector<T> take_spread(const std::vector<T>& all, std::size_t n) {
    if (all.size() <= n) return all;
    std::vector<T> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(all[i * all.size() / n]);
    return out;
}

bool contains_map(const std::vector<Hom>& homs, std::span<const Elem> map) {
    return std::any_of(homs.begin(), homs.end(),
                       [&](const Hom& h) { return std::ranges::equal(h.map(), map); });
}

}  // namespace

MonoidAction restrict_along(const Hom& h, const MonoidAction& g) {
    if (!same_algebra(h.target(), g.acting()))
        throw PreconditionError("restrict_along: h does not land in the acting monoid");
    const std::size_t n = g.object().size();
    std::vector<Elem> table(h.source().size() * n);
    for (Elem e = 0; e < h.source().size(); ++e)
        for (Elem x = 0; x < n; ++x) table[e * n + x] = g(h(e), x);
    return MonoidAction(h.source_ref(), g.object_ref(), std::move(table));
}

SemiringAction restrict_along(const Hom& h, const SemiringAction& g) {
    if (!same_algebra(h.target(), g.acting()))
        throw PreconditionError("restrict_along: h does not land in the acting semiring");
    const std::size_t n = g.object().size();
    const std::size_t m = h.source().size();
    std::vector<Elem> left(m * n), right(n * m);
    for (Elem e = 0; e < m; ++e)
        for (Elem x = 0; x < n; ++x) {
            left[e * n + x] = g.left(h(e), x);
            right[x * m + e] = g.right(x, h(e));
        }
    return SemiringAction(h.source_ref(), g.object_ref(), std::move(left), std::move(right));
}

// ---------------------------------------------------------------------------
// Monoids

Elem CofreeTable::index_of(const std::vector<Elem>& u) const {
    auto it = index.find(u);
    return it == index.end() ? kNoElem : it->second;
}

CofreeTable cofree_mon(const Hom& h, const MonoidAction& f, const Guards& guards) {
    if (!same_algebra(h.source(), f.acting()))
        throw PreconditionError("cofree_mon: the action is not by the source of h");
    require_hom(h, "cofree_mon");
    const Algebra& B = h.target();
    const Algebra& E = h.source();
    const Algebra& M = f.object();
    const std::size_t nb = B.size();
    const std::uint64_t required = power_or_saturate(M.size(), nb);
    if (required > guards.functions) throw GuardExceeded("functions B -> M", required, guards.functions);

    std::vector<std::vector<Elem>> elements;
    std::vector<Elem> u(nb, 0);
    do {
        bool member = true;
        for (Elem e = 0; e < E.size() && member; ++e)
            for (Elem b = 0; b < nb && member; ++b) member = f(e, u[b]) == u[B.add(h(e), b)];
        if (member) elements.push_back(u);
    } while (next_function(u, M.size()));

    std::map<std::vector<Elem>, Elem> index;
    for (Elem i = 0; i < elements.size(); ++i) index.emplace(elements[i], i);
    auto lookup = [&](const std::vector<Elem>& v) {
        auto it = index.find(v);
        if (it == index.end()) throw Error("cofree_mon: elements are not closed");
        return it->second;
    };

    const std::size_t n = elements.size();
    std::vector<Elem> add(n * n);
    std::vector<Elem> v(nb);
    for (Elem i = 0; i < n; ++i)
        for (Elem j = 0; j < n; ++j) {
            for (Elem b = 0; b < nb; ++b) v[b] = M.add(elements[i][b], elements[j][b]);
            add[i * n + j] = lookup(v);
        }
    auto algebra = make_algebra(Kind::Monoid, Table(n, std::move(add)));

    std::vector<Elem> act(nb * n);
    for (Elem b0 = 0; b0 < nb; ++b0)
        for (Elem i = 0; i < n; ++i) {
            for (Elem b = 0; b < nb; ++b) v[b] = elements[i][B.add(b, b0)];
            act[b0 * n + i] = lookup(v);
        }

    CofreeTable c{h, f, std::move(elements), algebra, MonoidAction(h.target_ref(), algebra, std::move(act)),
                  std::move(index)};
    return c;
}

Counit counit_mon(const CofreeTable& c) {
    std::vector<Elem> map(c.elements.size());
    for (Elem i = 0; i < map.size(); ++i) map[i] = c.elements[i][0];
    Hom eps(c.algebra, c.base_action.object_ref(), std::move(map));
    Counit out{eps};
    out.is_hom = check_hom(eps).ok;
    out.equivariant = is_equivariant(eps, restrict_along(c.h, c.action), c.base_action);
    return out;
}

Hom mediate_mon(const CofreeTable& c, const MonoidAction& g, const Hom& beta) {
    if (!same_algebra(g.acting(), c.h.target()))
        throw PreconditionError("mediate_mon: G is not an action of the base");
    if (!same_algebra(beta.source(), g.object()) || !same_algebra(beta.target(), c.base_action.object()))
        throw PreconditionError("mediate_mon: beta has the wrong endpoints");
    if (!check_hom(beta).ok || !is_equivariant(beta, restrict_along(c.h, g), c.base_action))
        throw PreconditionError("mediate_mon: beta is not an equivariant homomorphism");
    const std::size_t nb = c.h.target().size();
    std::vector<Elem> map(g.object().size());
    std::vector<Elem> u(nb);
    for (Elem s = 0; s < map.size(); ++s) {
        for (Elem b = 0; b < nb; ++b) u[b] = beta(g(b, s));
        map[s] = c.index_of(u);
        if (map[s] == kNoElem) throw Error("mediate_mon: transpose leaves the cofree object");
    }
    return Hom(g.object_ref(), c.algebra, std::move(map));
}

Subset displayed_submonoid(const Hom& h, const MonoidAction& f, std::span<const Elem> sect) {
    const Algebra& B = h.target();
    const Algebra& E = h.source();
    if (sect.size() != B.size()) throw PreconditionError("displayed_submonoid: section has the wrong length");
    std::vector<Elem> members;
    for (Elem m = 0; m < f.object().size(); ++m) {
        bool in = true;
        for (Elem e = 0; e < E.size() && in; ++e)
            for (Elem b = 0; b < B.size() && in; ++b)
                in = f(E.add(e, sect[b]), m) == f(sect[B.add(h(e), b)], m);
        if (in) members.push_back(m);
    }
    return Subset(f.object().size(), std::move(members));
}

SimplifiedCofree cofree_mon_surjective(const Hom& h, const MonoidAction& f, std::span<const Elem> sect,
                                       const Guards& guards) {
    require_surjective(h, "cofree_mon_surjective");
    if (sect.size() != h.target().size())
        throw PreconditionError("cofree_mon_surjective: section has the wrong length");
    for (Elem b = 0; b < sect.size(); ++b)
        if (sect[b] >= h.source().size() || h(sect[b]) != b)
            throw PreconditionError("cofree_mon_surjective: sect is not a right inverse of h at " +
                                    std::to_string(b));
    if (sect[0] != 0) throw PreconditionError("cofree_mon_surjective: sect(0) must be 0");

    const auto cofree = cofree_mon(h, f, guards);
    auto sub = displayed_submonoid(h, f, sect);
    if (!is_closed(f.object(), sub)) throw Error("cofree_mon_surjective: displayed subset is not a submonoid");
    auto emb = materialize(f.object_ref(), sub);

    bool verified = true;
    std::vector<Elem> map(sub.size());
    std::vector<Elem> u(sect.size());
    for (Elem i = 0; i < sub.size(); ++i) {
        const Elem m = sub.members()[i];
        for (Elem b = 0; b < sect.size(); ++b) u[b] = f(sect[b], m);
        const Elem at = cofree.index_of(u);
        verified = verified && at != kNoElem;
        map[i] = at == kNoElem ? 0 : at;
    }
    Hom iso(emb.algebra, cofree.algebra, std::move(map));
    verified = verified && iso.is_bijective() && check_hom(iso).ok;
    return {std::move(sub), std::move(emb), std::move(iso), verified};
}

std::vector<std::vector<Elem>> pointed_sections(const Hom& h, const Guards& guards) {
    require_surjective(h, "pointed_sections");
    const std::size_t nb = h.target().size();
    std::vector<std::vector<Elem>> fibres(nb);
    for (Elem e = 0; e < h.source().size(); ++e) fibres[h(e)].push_back(e);
    fibres[0] = {0};
    std::uint64_t count = 1;
    for (const auto& fib : fibres) {
        count = count > UINT64_MAX / fib.size() ? UINT64_MAX : count * fib.size();
    }
    if (count > guards.functions) throw GuardExceeded("set-sections", count, guards.functions);

    std::vector<std::vector<Elem>> out;
    std::vector<std::size_t> pick(nb, 0);
    while (true) {
        std::vector<Elem> s(nb);
        for (Elem b = 0; b < nb; ++b) s[b] = fibres[b][pick[b]];
        out.push_back(std::move(s));
        std::size_t i = nb;
        while (i-- > 0) {
            if (++pick[i] < fibres[i].size()) break;
            pick[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

Hom cofree_map(const CofreeTable& from, const CofreeTable& to, const Hom& k) {
    std::vector<Elem> map(from.elements.size());
    std::vector<Elem> v(from.h.target().size());
    for (Elem i = 0; i < map.size(); ++i) {
        for (Elem b = 0; b < v.size(); ++b) v[b] = k(from.elements[i][b]);
        map[i] = to.index_of(v);
        if (map[i] == kNoElem) throw PreconditionError("cofree_map: k o u leaves the target cofree object");
    }
    return Hom(from.algebra, to.algebra, std::move(map));
}

AdjunctionReport verify_adjunction_mon(const Hom& h, const MonoidAction& g, const MonoidAction& f,
                                       const Guards& guards) {
    AdjunctionReport r;
    const auto c = cofree_mon(h, f, guards);
    const auto restricted = restrict_along(h, g);
    const auto left = equivariant_homs(restricted, f, guards);
    const auto right = equivariant_homs(g, c.action, guards);
    r.left_count = left.size();
    r.right_count = right.size();
    r.adjoint_action_valid = validate_action(c.action).accepted();
    const auto eps = counit_mon(c);
    r.adjoint_action_valid = r.adjoint_action_valid && eps.is_hom && eps.equivariant;

    auto transpose = [&](const Hom& beta) { return mediate_mon(c, g, beta); };

    r.triangle = true;
    r.unique = true;
    bool into_right = true;
    for (const auto& beta : left) {
        const auto gamma = transpose(beta);
        into_right = into_right && contains_map(right, gamma.map());
        r.triangle = r.triangle && compose(eps.map, gamma) == beta;
        std::size_t solutions = 0;
        for (const auto& other : right)
            if (std::ranges::equal(compose(eps.map, other).map(), beta.map())) ++solutions;
        r.unique = r.unique && solutions == 1;
    }
    // gamma -> eps o gamma must be injective and land in the left hom-set.
    bool back_ok = true;
    std::set<std::vector<Elem>> seen;
    for (const auto& gamma : right) {
        const auto beta = compose(eps.map, gamma);
        const std::vector<Elem> key(beta.map().begin(), beta.map().end());
        back_ok = back_ok && contains_map(left, key) && seen.insert(key).second;
    }
    r.bijection = into_right && back_ok && left.size() == right.size();

    // Naturality in both variables: transpose(t o beta o k) = R(t) o transpose(beta) o k.
    const auto endo_g = take_spread(equivariant_homs(g, g, guards), 4);
    const auto endo_f = take_spread(equivariant_homs(f, f, guards), 4);
    r.naturality = true;
    for (const auto& beta : take_spread(left, kNaturalitySamples)) {
        const auto gamma = transpose(beta);
        for (const auto& k : endo_g)
            for (const auto& t : endo_f) {
                const auto lhs = transpose(compose(t, compose(beta, k)));
                const auto rhs = compose(cofree_map(c, c, t), compose(gamma, k));
                r.naturality = r.naturality && lhs == rhs;
                ++r.naturality_checked;
            }
    }

    r.functorial = true;
    const auto id = identity_hom(f.object_ref());
    r.functorial = cofree_map(c, c, id) == identity_hom(c.algebra);
    for (const auto& t1 : endo_f) {
        const auto rt1 = cofree_map(c, c, t1);
        r.functorial = r.functorial && check_hom(rt1).ok && is_equivariant(rt1, c.action, c.action);
        for (const auto& t2 : endo_f)
            r.functorial = r.functorial && cofree_map(c, c, compose(t1, t2)) == compose(rt1, cofree_map(c, c, t2));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Semirings

InvariantSub invariants_srng(const Hom& h, const SemiringAction& f) {
    if (!same_algebra(h.source(), f.acting()))
        throw PreconditionError("invariants_srng: the action is not by the source of h");
    require_hom(h, "invariants_srng");
    require_surjective(h, "invariants_srng");
    const Algebra& E = h.source();
    const Algebra& X = f.object();

    std::vector<Elem> members;
    for (Elem x = 0; x < X.size(); ++x) {
        bool in = true;
        for (Elem e1 = 0; e1 < E.size() && in; ++e1)
            for (Elem e2 = e1 + 1; e2 < E.size() && in; ++e2)
                if (h(e1) == h(e2)) in = f.left(e1, x) == f.left(e2, x) && f.right(x, e1) == f.right(x, e2);
        if (in) members.push_back(x);
    }
    Subset sub(X.size(), std::move(members));
    auto emb = materialize(f.object_ref(), sub);

    const std::size_t nb = h.target().size();
    const std::size_t n = sub.size();
    std::vector<Elem> preimage(nb, kNoElem);
    for (Elem e = 0; e < E.size(); ++e)
        if (preimage[h(e)] == kNoElem) preimage[h(e)] = e;

    bool independent = true;
    std::vector<Elem> left(nb * n), right(n * nb);
    for (Elem b = 0; b < nb; ++b)
        for (Elem i = 0; i < n; ++i) {
            const Elem x = sub.members()[i];
            const Elem l = f.left(preimage[b], x);
            const Elem r = f.right(x, preimage[b]);
            if (!sub.contains(l) || !sub.contains(r)) throw Error("invariants_srng: induced action leaves R_h(X)");
            left[b * n + i] = emb.index_of[l];
            right[i * nb + b] = emb.index_of[r];
            for (Elem e = 0; e < E.size(); ++e)
                if (h(e) == b) independent = independent && f.left(e, x) == l && f.right(x, e) == r;
        }
    SemiringAction action(h.target_ref(), emb.algebra, std::move(left), std::move(right));
    return {h, f, std::move(sub), std::move(emb), std::move(action), independent};
}

Hom invariant_map(const InvariantSub& from, const InvariantSub& to, const Hom& k) {
    std::vector<Elem> map(from.members.size());
    for (Elem i = 0; i < map.size(); ++i) {
        map[i] = to.embedding.index_of[k(from.members.members()[i])];
        if (map[i] == kNoElem) throw PreconditionError("invariant_map: k leaves the target invariants");
    }
    return Hom(from.embedding.algebra, to.embedding.algebra, std::move(map));
}

AdjunctionReport verify_adjunction_srng(const Hom& h, const SemiringAction& g, const SemiringAction& f,
                                        const Guards& guards) {
    AdjunctionReport r;
    const auto inv = invariants_srng(h, f);
    const auto restricted = restrict_along(h, g);
    const auto left = equivariant_homs(restricted, f, guards);
    const auto right = equivariant_homs(g, inv.action, guards);
    r.left_count = left.size();
    r.right_count = right.size();
    r.adjoint_action_valid = inv.choice_independent && validate_action(inv.action).accepted() &&
                             is_equivariant(inv.embedding.inclusion, restrict_along(h, inv.action), f);

    const Hom& incl = inv.embedding.inclusion;
    auto transpose = [&](const Hom& beta) -> std::optional<Hom> {
        std::vector<Elem> map(beta.source().size());
        for (Elem s = 0; s < map.size(); ++s) {
            map[s] = inv.embedding.index_of[beta(s)];
            if (map[s] == kNoElem) return std::nullopt;
        }
        return Hom(beta.source_ref(), inv.embedding.algebra, std::move(map));
    };

    r.triangle = true;
    r.unique = true;
    bool into_right = true;
    for (const auto& beta : left) {
        const auto gamma = transpose(beta);
        if (!gamma) {
            into_right = r.triangle = false;
            continue;
        }
        into_right = into_right && contains_map(right, gamma->map());
        r.triangle = r.triangle && compose(incl, *gamma) == beta;
        std::size_t solutions = 0;
        for (const auto& other : right)
            if (std::ranges::equal(compose(incl, other).map(), beta.map())) ++solutions;
        r.unique = r.unique && solutions == 1;
    }
    bool back_ok = true;
    std::set<std::vector<Elem>> seen;
    for (const auto& gamma : right) {
        const auto beta = compose(incl, gamma);
        const std::vector<Elem> key(beta.map().begin(), beta.map().end());
        back_ok = back_ok && contains_map(left, key) && seen.insert(key).second;
    }
    r.bijection = into_right && back_ok && left.size() == right.size();

    const auto endo_g = take_spread(equivariant_homs(g, g, guards), 4);
    const auto endo_f = take_spread(equivariant_homs(f, f, guards), 4);
    r.naturality = r.triangle;
    for (const auto& beta : take_spread(left, kNaturalitySamples)) {
        const auto gamma = transpose(beta);
        if (!gamma) break;
        for (const auto& k : endo_g)
            for (const auto& t : endo_f) {
                const auto lhs = transpose(compose(t, compose(beta, k)));
                const auto rhs = compose(invariant_map(inv, inv, t), compose(*gamma, k));
                r.naturality = r.naturality && lhs && *lhs == rhs;
                ++r.naturality_checked;
            }
    }

    r.functorial = invariant_map(inv, inv, identity_hom(f.object_ref())) == identity_hom(inv.embedding.algebra);
    for (const auto& t1 : endo_f) {
        const auto rt1 = invariant_map(inv, inv, t1);
        r.functorial = r.functorial && check_hom(rt1).ok && is_equivariant(rt1, inv.action, inv.action);
        for (const auto& t2 : endo_f)
            r.functorial = r.functorial && invariant_map(inv, inv, compose(t1, t2)) ==
                                               compose(rt1, invariant_map(inv, inv, t2));
    }
    return r;
}

}  // namespace schreier
