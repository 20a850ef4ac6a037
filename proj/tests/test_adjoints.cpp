#include <gtest/gtest.h>

#include "schreier/adjoints.hpp"
#include "support.hpp"

using namespace schreier;
using namespace schreier::testing;

namespace {

const Catalog& cat() { return Catalog::builtin(); }

// Equivariant homs by filtering every map, independent of the library.
std::size_t oracle_equivariant_count(const MonoidAction& a1, const MonoidAction& a2) {
    std::size_t n = 0;
    for (const auto& g : oracle_homs(a1.object(), a2.object())) {
        bool ok = true;
        for (Elem b = 0; b < a1.acting().size() && ok; ++b)
            for (Elem x = 0; x < a1.object().size() && ok; ++x) ok = g[a1(b, x)] == a2(b, g[x]);
        n += ok;
    }
    return n;
}

std::size_t oracle_equivariant_count(const SemiringAction& a1, const SemiringAction& a2) {
    std::size_t n = 0;
    for (const auto& g : oracle_homs(a1.object(), a2.object())) {
        bool ok = true;
        for (Elem b = 0; b < a1.acting().size() && ok; ++b)
            for (Elem x = 0; x < a1.object().size() && ok; ++x)
                ok = g[a1.left(b, x)] == a2.left(b, g[x]) && g[a1.right(x, b)] == a2.right(g[x], b);
        n += ok;
    }
    return n;
}

// L(B, M) by its definition, with no reference to the library's tables.
std::vector<std::vector<Elem>> oracle_cofree(const Hom& h, const MonoidAction& f) {
    std::vector<std::vector<Elem>> out;
    for (auto& u : all_maps(h.target().size(), f.object().size())) {
        bool ok = true;
        for (Elem e = 0; e < h.source().size() && ok; ++e)
            for (Elem b = 0; b < h.target().size() && ok; ++b) ok = f(e, u[b]) == u[h.target().add(h(e), b)];
        if (ok) out.push_back(u);
    }
    return out;
}

}  // namespace

TEST(CofreeMon, AlongIdentity) {
    const auto& f = cat().monoid_actions()[2].action;  // Z2 swapping B2 x B2
    auto c = cofree_mon(identity_hom(f.acting_ref()), f);
    EXPECT_EQ(c.elements.size(), f.object().size());
    auto eps = counit_mon(c);
    EXPECT_TRUE(eps.is_hom);
    EXPECT_TRUE(eps.equivariant);
    EXPECT_TRUE(eps.map.is_bijective());
    // The counit carries the shift action onto F.
    for (Elem b = 0; b < f.acting().size(); ++b)
        for (Elem u = 0; u < c.elements.size(); ++u) EXPECT_EQ(eps.map(c.action(b, u)), f(b, eps.map(u)));
}

TEST(CofreeMon, AlongZeroEveryFunctionQualifies) {
    auto zero = algebras::zero_monoid();
    for (const char* bn : {"B2", "N3", "RZ3"})
        for (const char* mn : {"Z2", "N3"}) {
            auto B = cat().algebra(bn), M = cat().algebra(mn);
            auto c = cofree_mon(zero_hom(zero, B), trivial_action(zero, M));
            std::size_t expected = 1;
            for (std::size_t i = 0; i < B->size(); ++i) expected *= M->size();
            EXPECT_EQ(c.elements.size(), expected);
            EXPECT_TRUE(validate_action(c.action).accepted());
            auto eps = counit_mon(c);
            EXPECT_TRUE(eps.map.is_surjective());
        }
}

TEST(CofreeMon, FixedPointsAlongTheTerminalMap) {
    // B2 acting on Z2 with 1 acting as the zero endomorphism; along B2 -> 0
    // only m with 1 . m = m survives, so L is {0}.
    const auto& f = cat().monoid_actions()[1].action;
    auto c = cofree_mon(zero_hom(f.acting_ref(), algebras::zero_monoid()), f);
    EXPECT_EQ(c.elements, (std::vector<std::vector<Elem>>{{0}}));
}

TEST(CofreeMon, MatchesDefinitionAndInvariants) {
    auto pool = cat().algebras(Kind::Monoid, 4);
    int checked = 0;
    for (const auto& [ne, E] : pool)
        for (const auto& [nb, B] : pool) {
            if (B->size() > 3) continue;
            for (const auto& h : enumerate_homs(E, B))
                for (const char* mn : {"Z2", "N3", "B2xB2"})
                    for (const auto& f : enumerate_monoid_actions(E, cat().algebra(mn))) {
                        auto c = cofree_mon(h, f);
                        ASSERT_EQ(c.elements, oracle_cofree(h, f));
                        EXPECT_EQ(c.elements.front(), std::vector<Elem>(B->size(), 0));
                        EXPECT_TRUE(validate_algebra(*c.algebra).accepted());
                        EXPECT_TRUE(validate_action(c.action).accepted());
                        auto eps = counit_mon(c);
                        EXPECT_TRUE(eps.is_hom && eps.equivariant);
                        EXPECT_EQ(eps.map(0), 0u);
                        ++checked;
                    }
        }
    EXPECT_GT(checked, 100);
}

TEST(CofreeMon, GuardNamesTheBound) {
    auto zero = algebras::zero_monoid();
    auto B = cat().algebra("N3xN3");
    try {
        cofree_mon(zero_hom(zero, B), trivial_action(zero, cat().algebra("N3")), Guards{.homs = 100, .functions = 1000});
        FAIL();
    } catch (const GuardExceeded& e) {
        EXPECT_EQ(e.required(), 19683u);  // 3^9
    }
}

TEST(MediateMon, FromTheZeroAlgebra) {
    const auto& f = cat().monoid_actions()[0].action;
    auto h = identity_hom(f.acting_ref());
    auto c = cofree_mon(h, f);
    auto zero = algebras::zero_monoid();
    auto g = trivial_action(f.acting_ref(), zero);
    auto gamma = mediate_mon(c, g, zero_hom(zero, f.object_ref()));
    EXPECT_EQ(gamma.map().size(), 1u);
    EXPECT_EQ(gamma(0), 0u);
    EXPECT_EQ(equivariant_homs(g, c.action).size(), 1u);
}

TEST(MediateMon, CounitTransposesToIdentity) {
    for (const auto& [name, f] : cat().monoid_actions()) {
        auto h = identity_hom(f.acting_ref());
        auto c = cofree_mon(h, f);
        auto eps = counit_mon(c);
        auto gamma = mediate_mon(c, c.action, eps.map);
        EXPECT_EQ(gamma, identity_hom(c.algebra)) << name;
    }
}

TEST(MediateMon, RejectsNonEquivariant) {
    const auto& f = cat().monoid_actions()[1].action;  // B2 kills Z2
    auto h = identity_hom(f.acting_ref());
    auto c = cofree_mon(h, f);
    auto g = trivial_action(f.acting_ref(), f.object_ref());
    EXPECT_THROW(mediate_mon(c, g, identity_hom(f.object_ref())), PreconditionError);
}

TEST(AdjunctionMon, CountsMatchOracleOnCatalog) {
    auto pool = cat().algebras(Kind::Monoid, 3);
    int checked = 0;
    for (const auto& [ne, E] : pool)
        for (const auto& [nb, B] : pool)
            for (const auto& h : enumerate_homs(E, B))
                for (const char* mn : {"Z2", "N3"})
                    for (const auto& f : enumerate_monoid_actions(E, cat().algebra(mn)))
                        for (const char* sn : {"B2", "Z2"})
                            for (const auto& g : enumerate_monoid_actions(B, cat().algebra(sn))) {
                                auto r = verify_adjunction_mon(h, g, f);
                                EXPECT_TRUE(r.ok()) << ne << "->" << nb;
                                EXPECT_EQ(r.left_count, oracle_equivariant_count(restrict_along(h, g), f));
                                auto c = cofree_mon(h, f);
                                EXPECT_EQ(r.right_count, oracle_equivariant_count(g, c.action));
                                EXPECT_GT(r.naturality_checked, 0u);
                                ++checked;
                            }
    EXPECT_GT(checked, 200);
}

TEST(CofreeMonSurjective, AlongIdentity) {
    const auto& f = cat().monoid_actions()[3].action;
    auto h = identity_hom(f.acting_ref());
    std::vector<Elem> sect(f.acting().size());
    for (Elem b = 0; b < sect.size(); ++b) sect[b] = b;
    auto s = cofree_mon_surjective(h, f, sect);
    EXPECT_TRUE(s.submonoid.is_all());
    EXPECT_TRUE(s.iso_verified);
}

TEST(CofreeMonSurjective, ProjectionWithEverySection) {
    auto bb = product(algebras::b2(), algebras::b2());
    for (const char* mn : {"Z2", "N3", "B2xB2"})
        for (const auto& f : enumerate_monoid_actions(bb.algebra, cat().algebra(mn))) {
            auto sections = pointed_sections(bb.pi1);
            ASSERT_EQ(sections.size(), 2u);
            std::optional<Subset> first;
            for (const auto& sect : sections) {
                auto s = cofree_mon_surjective(bb.pi1, f, sect);
                EXPECT_TRUE(s.iso_verified);
                EXPECT_EQ(s.submonoid.size(), cofree_mon(bb.pi1, f).elements.size());
                if (!first) first = s.submonoid;
                EXPECT_EQ(s.submonoid, *first);
            }
        }
}

TEST(CofreeMonSurjective, UnpointedSectionsAreRejected) {
    // With sect(0) != 0 the displayed condition stops cutting out L(B, M):
    // along B2 -> 0 and sect(0) = 1 it reads (e + 1) . m = 1 . m, which
    // holds for every m since e + 1 = 1 in B2.
    const auto& f = cat().monoid_actions()[1].action;  // 1 acts as zero on Z2
    auto h = zero_hom(f.acting_ref(), algebras::zero_monoid());
    const std::vector<Elem> unpointed{1};
    EXPECT_EQ(displayed_submonoid(h, f, unpointed).size(), 2u);
    EXPECT_EQ(cofree_mon(h, f).elements.size(), 1u);
    EXPECT_THROW(cofree_mon_surjective(h, f, unpointed), PreconditionError);
    EXPECT_TRUE(cofree_mon_surjective(h, f, std::vector<Elem>{0}).iso_verified);
}

TEST(CofreeMonSurjective, RejectsNonSurjective) {
    auto b2 = algebras::b2();
    auto f = trivial_action(algebras::zero_monoid(), algebras::z2());
    EXPECT_THROW(cofree_mon_surjective(zero_hom(algebras::zero_monoid(), b2), f, std::vector<Elem>{0, 0}),
                 PreconditionError);
}

TEST(InvariantsSrng, IdentityAndZeroAction) {
    for (const auto& [name, f] : cat().semiring_actions()) {
        auto inv = invariants_srng(identity_hom(f.acting_ref()), f);
        EXPECT_TRUE(inv.members.is_all()) << name;
        EXPECT_TRUE(inv.choice_independent);
        EXPECT_EQ(inv.action.left_table().size(), f.left_table().size());
        EXPECT_TRUE(std::ranges::equal(inv.action.left_table(), f.left_table()));
        EXPECT_TRUE(std::ranges::equal(inv.action.right_table(), f.right_table()));
    }
    auto bb = product(algebras::boolean(), algebras::boolean());
    auto z = zero_action(bb.algebra, cat().algebra("T3"));
    EXPECT_TRUE(invariants_srng(bb.pi1, z).members.is_all());
}

TEST(InvariantsSrng, CollapsedPairExcludesElement) {
    // E = Bool x Bool acting on Bool through the second coordinate; h = pi1
    // identifies (0,0) and (0,1), which act differently on 1.
    auto bb = product(algebras::boolean(), algebras::boolean());
    const auto& self = cat().semiring_actions()[0].action;
    auto f = restrict_along(bb.pi2, self);
    auto inv = invariants_srng(bb.pi1, f);
    EXPECT_EQ(inv.members, Subset(2, {0}));
    EXPECT_TRUE(validate_action(inv.action).accepted());
}

TEST(InvariantsSrng, RejectsNonSurjective) {
    auto z = algebras::zero_semiring();
    auto b = algebras::boolean();
    EXPECT_THROW(invariants_srng(zero_hom(z, b), zero_action(z, b)), PreconditionError);
}

TEST(AdjunctionSrng, CountsMatchOracleOnCatalog) {
    auto pool = cat().algebras(Kind::Semiring, 4);
    int checked = 0;
    for (const auto& [ne, E] : pool)
        for (const auto& [nb, B] : pool)
            for (const auto& h : enumerate_homs(E, B)) {
                if (!h.is_surjective() || E->size() > 4 || B->size() > 3) continue;
                for (const char* xn : {"Z2ring", "Bool"})
                    for (const auto& f : enumerate_semiring_actions(E, cat().algebra(xn)))
                        for (const char* sn : {"Z2ring", "Bool"})
                            for (const auto& g : enumerate_semiring_actions(B, cat().algebra(sn))) {
                                auto r = verify_adjunction_srng(h, g, f);
                                EXPECT_TRUE(r.ok()) << ne << "->" << nb;
                                EXPECT_EQ(r.left_count, oracle_equivariant_count(restrict_along(h, g), f));
                                EXPECT_EQ(r.right_count, oracle_equivariant_count(g, invariants_srng(h, f).action));
                                ++checked;
                            }
            }
    EXPECT_GT(checked, 50);
}

TEST(AdjunctionSrng, ZeroInvariantsGiveSingletons) {
    auto bb = product(algebras::boolean(), algebras::boolean());
    const auto& self = cat().semiring_actions()[0].action;
    auto f = restrict_along(bb.pi2, self);  // R_h(f) = 0 along pi1
    for (const auto& g : enumerate_semiring_actions(algebras::boolean(), algebras::boolean())) {
        auto r = verify_adjunction_srng(bb.pi1, g, f);
        EXPECT_EQ(r.left_count, 1u);
        EXPECT_EQ(r.right_count, 1u);
        EXPECT_TRUE(r.ok());
    }
}
