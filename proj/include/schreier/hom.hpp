#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "schreier/algebra.hpp"

namespace schreier {

/// A map between carriers of two algebras with the same signature. The
/// constructor checks shape only; check_hom decides preservation.
class Hom {
public:
    Hom(AlgebraRef source, AlgebraRef target, std::vector<Elem> map);

    Elem operator()(Elem x) const { return map_[x]; }

    const Algebra& source() const noexcept { return *source_; }
    const Algebra& target() const noexcept { return *target_; }
    const AlgebraRef& source_ref() const noexcept { return source_; }
    const AlgebraRef& target_ref() const noexcept { return target_; }
    std::span<const Elem> map() const noexcept { return map_; }

    bool is_injective() const;
    bool is_surjective() const;
    bool is_bijective() const { return is_injective() && is_surjective(); }
    Subset image() const;

    /// Same map array; source and target compared by value.
    bool operator==(const Hom& other) const;

private:
    AlgebraRef source_;
    AlgebraRef target_;
    std::vector<Elem> map_;
};

struct HomViolation {
    Elem x = 0;
    Elem y = 0;
    std::string op;  // "zero" when map[0] != 0
};

struct HomCheck {
    bool ok = true;
    std::optional<HomViolation> violation;
};

HomCheck check_hom(const Hom& h);

Hom identity_hom(const AlgebraRef& a);
Hom zero_hom(const AlgebraRef& source, const AlgebraRef& target);
/// second after first.
Hom compose(const Hom& second, const Hom& first);

/// All homomorphisms a -> b in lexicographic order of their map arrays.
/// `fixed[x]`, when not kNoElem, prescribes the image of x; the result is
/// exactly the homomorphisms agreeing with those prescriptions.
std::vector<Hom> enumerate_homs(const AlgebraRef& a, const AlgebraRef& b, const Guards& guards = {},
                                std::span<const Elem> fixed = {});

std::optional<Hom> find_isomorphism(const AlgebraRef& a, const AlgebraRef& b,
                                    const Guards& guards = {});

/// A subset materialized as an algebra, renumbered in increasing order.
struct Embedding {
    AlgebraRef algebra;
    Hom inclusion;
    std::vector<Elem> index_of;  // ambient element -> sub index, kNoElem outside

    Elem restrict(Elem ambient) const { return index_of[ambient]; }
};

Embedding materialize(const AlgebraRef& a, const Subset& members);

struct Product {
    AlgebraRef algebra;
    Hom pi1, pi2;
    Hom in1, in2;  // x -> (x, 0), y -> (0, y)
    std::size_t right_size = 1;

    Elem index(Elem x, Elem y) const { return static_cast<Elem>(x * right_size + y); }
    std::pair<Elem, Elem> coords(Elem z) const {
        return {static_cast<Elem>(z / right_size), static_cast<Elem>(z % right_size)};
    }
};

Product product(const AlgebraRef& a, const AlgebraRef& b);

struct Pullback {
    AlgebraRef algebra;
    Hom p1, p2;
    std::vector<std::pair<Elem, Elem>> pairs;  // element -> (a, c)
    std::vector<Elem> lookup;                  // a * |C| + c -> element, kNoElem outside
    std::size_t right_size = 1;

    Elem index_of(Elem a, Elem c) const { return lookup[a * right_size + c]; }
};

/// Carrier {(a, c) | f(a) = g(c)} in lexicographic order, so (0, 0) is 0.
Pullback pullback(const Hom& f, const Hom& g);

/// Checks the universal property of `pb` against every cone from `test`:
/// each pair (u: T -> A, v: T -> C) with f u = g v must factor through
/// exactly one T -> P. Returns the number of cones checked, or nullopt on
/// the first failure.
std::optional<std::size_t> verify_pullback_universal(const Pullback& pb, const Hom& f, const Hom& g,
                                                     const AlgebraRef& test,
                                                     const Guards& guards = {});

}  // namespace schreier
