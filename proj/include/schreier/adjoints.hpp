#pragma once

#include <map>
#include <optional>
#include <vector>

#include "schreier/actions.hpp"

namespace schreier {

/// Restriction of a B-action along h: E -> B, i.e. e . x = h(e) . x.
MonoidAction restrict_along(const Hom& h, const MonoidAction& g);
SemiringAction restrict_along(const Hom& h, const SemiringAction& g);

/// The right adjoint of restriction along h: E -> B for monoid actions.
/// Elements are the functions u: B -> M with e . u(b) = u(h(e) + b),
/// ordered lexicographically; B acts by (b0 . u)(b) = u(b + b0).
struct CofreeTable {
    Hom h;
    MonoidAction base_action;                 // the E-action F on M
    std::vector<std::vector<Elem>> elements;  // u as arrays over B
    AlgebraRef algebra;                       // pointwise monoid
    MonoidAction action;                      // B acting on `algebra`

    std::map<std::vector<Elem>, Elem> index;  // u -> position in elements

    /// Index of u among the elements, or kNoElem.
    Elem index_of(const std::vector<Elem>& u) const;
};

CofreeTable cofree_mon(const Hom& h, const MonoidAction& f, const Guards& guards = {});

struct Counit {
    Hom map;  // u -> u(0)
    bool is_hom = false;
    /// Equivariant from the restriction of the B-action along h to F.
    bool equivariant = false;
};

Counit counit_mon(const CofreeTable& c);

/// gamma(s)(b) = beta(b . s) for a B-action G on S and an equivariant
/// beta: restrict_along(h, G) -> F. Throws if beta is not equivariant or
/// gamma leaves the cofree elements.
Hom mediate_mon(const CofreeTable& c, const MonoidAction& g, const Hom& beta);

/// The cofree object along a surjection described inside M:
/// { m | (e + sect(b)) . m = sect(h(e) + b) . m for all b, e }.
Subset displayed_submonoid(const Hom& h, const MonoidAction& f, std::span<const Elem> sect);

struct SimplifiedCofree {
    Subset submonoid;
    Embedding embedding;  // the submonoid as an algebra
    Hom iso;              // m -> (b -> sect(b) . m), into the cofree algebra
    bool iso_verified = false;
};

/// Requires h surjective and sect a right inverse of h with sect(0) = 0.
SimplifiedCofree cofree_mon_surjective(const Hom& h, const MonoidAction& f,
                                       std::span<const Elem> sect, const Guards& guards = {});

/// Every set-theoretic right inverse of a surjection h (sect(0) = 0).
std::vector<std::vector<Elem>> pointed_sections(const Hom& h, const Guards& guards = {});

/// R_h(X) = { x | e1 . x = e2 . x and x . e1 = x . e2 whenever h(e1) = h(e2) }
/// with the induced B-action b . x = e . x for any e over b.
struct InvariantSub {
    Hom h;
    SemiringAction base_action;
    Subset members;
    Embedding embedding;
    SemiringAction action;
    bool choice_independent = false;
};

InvariantSub invariants_srng(const Hom& h, const SemiringAction& f);

struct AdjunctionReport {
    std::size_t left_count = 0;   // equivariant maps h*G -> F
    std::size_t right_count = 0;  // equivariant maps G -> R_h F
    bool bijection = false;       // transposition is a bijection between the two sets
    bool triangle = false;        // counit after transpose(beta) = beta, for every beta
    bool unique = false;          // each beta has exactly one transpose
    bool adjoint_action_valid = false;
    std::size_t naturality_checked = 0;
    bool naturality = false;
    bool functorial = false;      // R_h on sampled maps is equivariant and composes

    bool ok() const {
        return left_count == right_count && bijection && triangle && unique && adjoint_action_valid &&
               naturality && functorial;
    }
};

/// Cap on naturality / functoriality samples per instance.
inline constexpr std::size_t kNaturalitySamples = 16;

AdjunctionReport verify_adjunction_mon(const Hom& h, const MonoidAction& g, const MonoidAction& f,
                                       const Guards& guards = {});
AdjunctionReport verify_adjunction_srng(const Hom& h, const SemiringAction& g,
                                        const SemiringAction& f, const Guards& guards = {});

/// R_h on a morphism of E-actions: u -> k o u for monoids.
Hom cofree_map(const CofreeTable& from, const CofreeTable& to, const Hom& k);
/// R_h on a morphism of E-actions for semirings: the restriction.
Hom invariant_map(const InvariantSub& from, const InvariantSub& to, const Hom& k);

}  // namespace schreier
