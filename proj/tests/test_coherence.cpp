#include <gtest/gtest.h>

#include "schreier/coherence.hpp"
#include "support.hpp"

using namespace schreier;
using namespace schreier::testing;

namespace {

const Catalog& cat() { return Catalog::builtin(); }

std::vector<Point> points_over(const AlgebraRef& b, Kind kind, std::size_t max_size) {
    std::vector<Point> out;
    for (const auto& [na, a] : cat().algebras(kind, max_size))
        for (auto& p : enumerate_points(a, b)) out.push_back(std::move(p));
    return out;
}

std::vector<CoherenceInstance> instances(const char* base, Kind kind, std::size_t max_size, std::size_t limit) {
    return enumerate_coherence_instances(points_over(cat().algebra(base), kind, max_size), limit);
}

// Every pair of fibre morphisms into each middle point, jse or not.
template <class Fn>
void for_each_cospan(const std::vector<Point>& pts, Fn&& fn) {
    for (const auto& d : pts)
        for (const auto& a : pts)
            for (const auto& c : pts) {
                if (a.A().size() + c.A().size() > 6 || !check_schreier(a).is_schreier() ||
                    !check_schreier(c).is_schreier() || !check_schreier(d).is_schreier())
                    continue;
                for (const auto& f : enumerate_fibre_morphisms(a, d))
                    for (const auto& g : enumerate_fibre_morphisms(c, d)) fn(CoherenceInstance(a, d, c, f.g(), g.g()));
            }
}

}  // namespace

TEST(JointlyStronglyEpi, Examples) {
    auto bb = product(algebras::b2(), algebras::b2());
    EXPECT_TRUE(jointly_strongly_epi(bb.in1, bb.in2).holds);
    auto zero_in = zero_hom(algebras::b2(), bb.algebra);
    EXPECT_FALSE(jointly_strongly_epi(zero_in, zero_in).holds);
    auto onto = identity_hom(bb.algebra);
    EXPECT_TRUE(jointly_strongly_epi(onto, zero_hom(algebras::n3(), bb.algebra)).holds);

    // (1,0) + (0,1) = (1,1): element 3 is derived from 2 and 1.
    auto r = jointly_strongly_epi(bb.in1, bb.in2);
    const auto& d = *r.trace.derivation[3];
    EXPECT_EQ(d.source, Derivation::Source::Operation);
    EXPECT_EQ(bb.algebra->add(d.left, d.right), 3u);
}

TEST(JointlyStronglyEpi, FibreRouteAgrees) {
    int positive = 0, negative = 0;
    for (const char* base : {"B2", "Z2"}) {
        for_each_cospan(points_over(cat().algebra(base), Kind::Monoid, 4), [&](const CoherenceInstance& inst) {
            const bool direct = jointly_strongly_epi(inst.f, inst.g).holds;
            EXPECT_EQ(jointly_strongly_epi_in_fibre(inst), direct);
            (direct ? positive : negative)++;
        });
    }
    for_each_cospan(points_over(cat().algebra("Bool"), Kind::Semiring, 4), [&](const CoherenceInstance& inst) {
        const bool direct = jointly_strongly_epi(inst.f, inst.g).holds;
        EXPECT_EQ(jointly_strongly_epi_in_fibre(inst), direct);
        (direct ? positive : negative)++;
    });
    EXPECT_GT(positive, 5);
    EXPECT_GT(negative, 5);
}

TEST(CoherenceAlong, IdentityAndZero) {
    for (const char* base : {"B2", "N3"})
        for (const auto& inst : instances(base, Kind::Monoid, 6, 60)) {
            EXPECT_TRUE(check_coherence_along(identity_hom(inst.middle.B_ref()), inst).holds);
            auto zero = algebras::zero_monoid();
            auto along_zero = check_coherence_along(zero_hom(zero, inst.middle.B_ref()), inst);
            EXPECT_EQ(along_zero.holds, check_kernel_coherence(inst).holds);
        }
}

TEST(CoherenceAlong, RejectsPairsThatDoNotGenerate) {
    const auto& p = cat().point("prod_B2_Z2");
    auto id = Point(identity_hom(p.B_ref()), identity_hom(p.B_ref()));
    auto s = enumerate_fibre_morphisms(id, p).front().g();
    CoherenceInstance inst(id, p, id, s, s);
    EXPECT_FALSE(jointly_strongly_epi(inst.f, inst.g).holds);
    EXPECT_THROW(check_coherence_along(identity_hom(p.B_ref()), inst), PreconditionError);
}

TEST(CoherenceAlong, HoldsOnMonAndSrngCatalog) {
    struct Case {
        const char* base;
        Kind kind;
    };
    std::size_t checked = 0;
    for (const auto& [base, kind] : {Case{"B2", Kind::Monoid}, Case{"Z2", Kind::Monoid}, Case{"N3", Kind::Monoid},
                                     Case{"Bool", Kind::Semiring}, Case{"Z2ring", Kind::Semiring}}) {
        auto B = cat().algebra(base);
        for (const auto& inst : instances(base, kind, 4, 200)) {
            EXPECT_TRUE(check_kernel_coherence(inst).holds);
            for (const auto& [ne, E] : cat().algebras(kind, 4))
                for (const auto& h : enumerate_homs(E, B)) {
                    EXPECT_TRUE(check_coherence_along(h, inst).holds) << base << " along " << ne;
                    ++checked;
                }
        }
    }
    EXPECT_GT(checked, 200u);
}

TEST(KernelCoherence, TrivialBaseReducesToJse) {
    auto zero = algebras::zero_monoid();
    auto point_of = [&](const AlgebraRef& a) { return Point(zero_hom(a, zero), zero_hom(zero, a)); };
    auto bb = product(algebras::b2(), algebras::b2());
    CoherenceInstance inst(point_of(algebras::b2()), point_of(bb.algebra), point_of(algebras::b2()), bb.in1, bb.in2);
    EXPECT_EQ(check_kernel_coherence(inst).holds, jointly_strongly_epi(inst.f, inst.g).holds);
    EXPECT_TRUE(check_kernel_coherence(inst).holds);
}

TEST(DecomposeProduct, KernelArguments) {
    for (const auto& inst : instances("Bool", Kind::Semiring, 4, 100))
        for (Elem a : inst.left.kernel().members())
            for (Elem c : inst.right.kernel().members()) {
                auto r = decompose_product_element(inst, a, c);
                EXPECT_EQ(r.h, a);
                EXPECT_EQ(r.l, c);
                EXPECT_EQ(r.left_correction, 0u);
                EXPECT_EQ(r.right_correction, 0u);
                EXPECT_EQ(r.product, inst.middle.A().mul(inst.f(a), inst.g(c)));
            }
}

TEST(DecomposeProduct, SectionTimesKernel) {
    for (const auto& inst : instances("Bool", Kind::Semiring, 4, 100))
        for (Elem b = 0; b < inst.middle.B().size(); ++b)
            for (Elem c : inst.right.kernel().members()) {
                const Elem a = inst.left.s()(b);
                auto r = decompose_product_element(inst, a, c);
                EXPECT_EQ(r.h, 0u);
                EXPECT_EQ(r.rewritten, inst.g(inst.right.A().mul(inst.right.s()(b), c)));
            }
}

TEST(DecomposeProduct, ExhaustiveOnCatalog) {
    std::size_t checked = 0;
    for (const char* base : {"Bool", "Z2ring", "T3"})
        for (const auto& inst : instances(base, Kind::Semiring, 9, 150))
            for (Elem a = 0; a < inst.left.A().size(); ++a)
                for (Elem c = 0; c < inst.right.A().size(); ++c)
                    for (auto order : {ProductOrder::FG, ProductOrder::GF}) {
                        const auto& D = inst.middle.A();
                        const Elem prod = order == ProductOrder::FG ? D.mul(inst.f(a), inst.g(c))
                                                                    : D.mul(inst.g(c), inst.f(a));
                        if (inst.middle.f()(prod) != 0) {
                            EXPECT_THROW(decompose_product_element(inst, a, c, order), PreconditionError);
                            continue;
                        }
                        EXPECT_TRUE(decompose_product_element(inst, a, c, order).ok());
                        ++checked;
                    }
    EXPECT_GT(checked, 500u);
}

TEST(DecomposeKernel, EveryKernelElementFromItsTrace) {
    std::size_t checked = 0;
    for (const char* base : {"Bool", "Z2ring"})
        for (const auto& inst : instances(base, Kind::Semiring, 9, 80)) {
            auto jse = jointly_strongly_epi(inst.f, inst.g);
            for (Elem k : inst.middle.kernel().members()) {
                auto words = expand_to_words(inst, jse, k);
                ASSERT_TRUE(words.has_value());
                EXPECT_EQ(evaluate_sum(inst, *words), k);
                auto d = decompose_kernel_sum(inst, *words);
                EXPECT_TRUE(d.verified);
                EXPECT_EQ(evaluate_sum(inst, d.terms), k);
                ++checked;
            }
        }
    EXPECT_GT(checked, 50u);
}

TEST(DecomposeKernel, LongWords) {
    std::mt19937 rng(17);
    std::size_t checked = 0;
    for (const auto& inst : instances("Bool", Kind::Semiring, 4, 40))
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Word> words;
            const int n_words = 1 + rng() % 3;
            for (int w = 0; w < n_words; ++w) {
                Word word;
                const int len = 1 + rng() % 4;
                for (int i = 0; i < len; ++i) {
                    if (rng() % 2) word.push_back({Factor::Side::F, Elem(rng() % inst.left.A().size())});
                    else word.push_back({Factor::Side::G, Elem(rng() % inst.right.A().size())});
                }
                words.push_back(word);
            }
            if (inst.middle.f()(evaluate_sum(inst, words)) != 0) continue;
            EXPECT_TRUE(decompose_kernel_sum(inst, words).verified);
            ++checked;
        }
    EXPECT_GT(checked, 100u);
}

TEST(RingBase, Z2RingAndZero) {
    std::vector<AlgebraRef> sources;
    for (const auto& [n, a] : cat().algebras(Kind::Semiring, 8)) sources.push_back(a);
    auto r = check_ring_base_schreier(cat().algebra("Z2ring"), sources, 8);
    EXPECT_TRUE(r.all_schreier());
    EXPECT_GT(r.points, 5u);
    auto z = check_ring_base_schreier(algebras::zero_semiring(), sources, 8);
    EXPECT_TRUE(z.all_schreier());
}

TEST(RingBase, BooleanBaseIsRejected) {
    EXPECT_FALSE(additive_group(*algebras::boolean()));
    EXPECT_THROW(check_ring_base_schreier(algebras::boolean(), {}, 8), PreconditionError);
    EXPECT_FALSE(check_schreier(cat().point("diag_Bool")).is_schreier());
}
