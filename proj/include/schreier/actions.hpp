#pragma once

#include <variant>
#include <vector>

#include "schreier/points.hpp"

namespace schreier {

/// Action of a monoid B on a monoid X, stored as the full table
/// act[b][x] = b . x. Convention: (b1 + b2) . x = b1 . (b2 . x).
class MonoidAction {
public:
    MonoidAction(AlgebraRef acting, AlgebraRef object, std::vector<Elem> table);

    Elem operator()(Elem b, Elem x) const { return table_[b * object_->size() + x]; }

    const Algebra& acting() const noexcept { return *acting_; }
    const Algebra& object() const noexcept { return *object_; }
    const AlgebraRef& acting_ref() const noexcept { return acting_; }
    const AlgebraRef& object_ref() const noexcept { return object_; }
    std::span<const Elem> table() const noexcept { return table_; }
    std::vector<std::vector<Elem>> rows() const;

    /// Same tables and algebras.
    bool operator==(const MonoidAction& other) const;

private:
    AlgebraRef acting_;
    AlgebraRef object_;
    std::vector<Elem> table_;
};

/// Action of a semiring B on a semiring X: left[b][x] = b . x and
/// right[x][b] = x . b.
class SemiringAction {
public:
    SemiringAction(AlgebraRef acting, AlgebraRef object, std::vector<Elem> left,
                   std::vector<Elem> right);

    Elem left(Elem b, Elem x) const { return left_[b * object_->size() + x]; }
    Elem right(Elem x, Elem b) const { return right_[x * acting_->size() + b]; }

    const Algebra& acting() const noexcept { return *acting_; }
    const Algebra& object() const noexcept { return *object_; }
    const AlgebraRef& acting_ref() const noexcept { return acting_; }
    const AlgebraRef& object_ref() const noexcept { return object_; }
    std::span<const Elem> left_table() const noexcept { return left_; }
    std::span<const Elem> right_table() const noexcept { return right_; }
    std::vector<std::vector<Elem>> left_rows() const;
    std::vector<std::vector<Elem>> right_rows() const;

    bool operator==(const SemiringAction& other) const;

private:
    AlgebraRef acting_;
    AlgebraRef object_;
    std::vector<Elem> left_;
    std::vector<Elem> right_;
};

using AnyAction = std::variant<MonoidAction, SemiringAction>;

/// b . x = x.
MonoidAction trivial_action(const AlgebraRef& acting, const AlgebraRef& object);
/// b . x = x . b = 0.
SemiringAction zero_action(const AlgebraRef& acting, const AlgebraRef& object);

LawReport validate_action(const MonoidAction& a);
LawReport validate_action(const SemiringAction& a);

/// Raised when an operation needs a Schreier point; carries the witness.
class NotSchreier : public PreconditionError {
public:
    explicit NotSchreier(SchreierWitness witness);
    const SchreierWitness& witness() const noexcept { return witness_; }

private:
    SchreierWitness witness_;
};

/// b . x = q(s(b) + k(x)) on the materialized kernel.
MonoidAction point_to_monoid_action(const Point& p);
/// b . x = q(s(b) k(x)) and x . b = q(k(x) s(b)).
SemiringAction point_to_semiring_action(const Point& p);
AnyAction point_to_action(const Point& p);

/// Element (x, b) of a semidirect product X x B.
inline Elem semidirect_index(Elem x, Elem b, std::size_t acting_size) {
    return static_cast<Elem>(x * acting_size + b);
}

/// X x B with (x1, b1) + (x2, b2) = (x1 + b1 . x2, b1 + b2), f = second
/// projection and s(b) = (0, b).
Point semidirect(const MonoidAction& a);
/// X x B with componentwise addition and
/// (x1, b1)(x2, b2) = (x1 x2 + x1 . b2 + b1 . x2, b1 b2).
Point semidirect_srng(const SemiringAction& a);
Point semidirect_any(const AnyAction& a);

/// Homs g: X1 -> X2 with g(b . x) = b . g(x) (and g(x . b) = g(x) . b).
std::vector<Hom> equivariant_homs(const MonoidAction& a1, const MonoidAction& a2,
                                  const Guards& guards = {});
std::vector<Hom> equivariant_homs(const SemiringAction& a1, const SemiringAction& a2,
                                  const Guards& guards = {});

bool is_equivariant(const Hom& g, const MonoidAction& a1, const MonoidAction& a2);
bool is_equivariant(const Hom& g, const SemiringAction& a1, const SemiringAction& a2);

/// g x 1_B on semidirect products; the action-side image of an
/// equivariant map under the equivalence with Schreier points.
Hom semidirect_map(const Hom& g, const Point& from, const Point& to);

/// The endomorphism monoid of X under composition (identity at index 0),
/// with the list of endomorphisms in index order.
struct EndomorphismMonoid {
    AlgebraRef algebra;
    std::vector<Hom> maps;
};
EndomorphismMonoid endomorphism_monoid(const AlgebraRef& x, const Guards& guards = {});

/// Every action of B on X, as homs B -> End(X).
std::vector<MonoidAction> enumerate_monoid_actions(const AlgebraRef& acting, const AlgebraRef& object,
                                                   const Guards& guards = {});
/// Every semiring action of B on X.
std::vector<SemiringAction> enumerate_semiring_actions(const AlgebraRef& acting,
                                                       const AlgebraRef& object,
                                                       const Guards& guards = {});

}  // namespace schreier
