#pragma once

#include <optional>
#include <vector>

#include "schreier/points.hpp"

namespace schreier {

/// A cospan of fibre morphisms f: (A, p', s') -> (D, p, s) <- (C, p'', s''): g
/// over a common base B. Kernels H, K, L are those of p', p, p''.
struct CoherenceInstance {
    Point left;    // (A, p', s')
    Point middle;  // (D, p, s)
    Point right;   // (C, p'', s'')
    Hom f;
    Hom g;

    /// Checks bases, endpoints and that f, g are fibre morphisms.
    CoherenceInstance(Point left, Point middle, Point right, Hom f, Hom g);
};

struct JseResult {
    bool holds = false;
    Generation trace;  // generation of D from image(f) u image(g)
};

/// Whether image(f) and image(g) generate the common codomain.
JseResult jointly_strongly_epi(const Hom& f, const Hom& g);

/// The same question asked in the fibre: no proper subobject of (D, p, s)
/// in Pt_B contains both images, found by exhaustive search over subsets.
/// Requires |D| <= 16.
bool jointly_strongly_epi_in_fibre(const CoherenceInstance& inst);

struct CoherenceCheck {
    bool holds = false;
    Subset generated;  // what the images actually generate
};

/// Pulls the instance back along h: E -> B and tests the pulled-back pair.
/// Requires the input pair jointly strongly epimorphic and all three
/// points Schreier.
CoherenceCheck check_coherence_along(const Hom& h, const CoherenceInstance& inst);
/// The pulled-back instance itself.
CoherenceInstance pullback_instance(const Hom& h, const CoherenceInstance& inst);

/// Whether f(H) u g(L) generates K.
CoherenceCheck check_kernel_coherence(const CoherenceInstance& inst);

enum class ProductOrder { FG, GF };

/// The certified rewrite of f(a)g(c) (or g(c)f(a)) with p of the product 0:
///   f(a)g(c) = f(h)g(l) + f(h s'p''(c)) + g(s''p'(a) l),
///   g(c)f(a) = g(l)f(h) + g(l s''p'(a)) + f(s'p''(c) h),
/// with h = q_{p'}(a) and l = q_{p''}(c).
struct ProductDecomposition {
    ProductOrder order = ProductOrder::FG;
    Elem a = 0, c = 0;
    Elem h = 0, l = 0;
    Elem left_correction = 0;   // in A: h s'p''(c), or s'p''(c) h
    Elem right_correction = 0;  // in C: s''p'(a) l, or l s''p'(a)
    Elem product = 0;           // the left-hand side in D
    Elem rewritten = 0;         // the right-hand side evaluated in D
    bool identity_holds = false;
    bool corrections_in_kernels = false;
    bool vanishing = false;     // p'(a) p''(c) = 0 in B (or p''(c) p'(a))
    bool ok() const { return identity_holds && corrections_in_kernels && vanishing; }
};

/// Semiring instances with Schreier points only. Throws PreconditionError
/// when p of the product is not 0, and Error if any equation fails.
ProductDecomposition decompose_product_element(const CoherenceInstance& inst, Elem a, Elem c,
                                               ProductOrder order = ProductOrder::FG);

/// One factor f(x) (x in A) or g(x) (x in C).
struct Factor {
    enum class Side { F, G };
    Side side = Side::F;
    Elem arg = 0;
    bool operator==(const Factor&) const = default;
};
/// A product of factors, left to right.
using Word = std::vector<Factor>;

/// A kernel element k written as a sum of words over f(H) u g(L).
struct KernelDecomposition {
    Elem k = 0;
    std::vector<Word> terms;
    std::size_t source_words = 0;  // words over f(A) u g(C) that were expanded
    bool verified = false;         // evaluates to k, every leaf in H or L
};

Elem evaluate_word(const CoherenceInstance& inst, const Word& w);
Elem evaluate_sum(const CoherenceInstance& inst, const std::vector<Word>& terms);

/// Rewrites a sum of words over f(A) u g(C) whose value lies in K as a sum
/// of words over f(H) u g(L): each factor splits as kernel part plus base
/// part, base runs are absorbed into a neighbouring kernel factor and the
/// all-base terms add up to s(p(k)) = 0.
KernelDecomposition decompose_kernel_sum(const CoherenceInstance& inst, const std::vector<Word>& words);

/// The sum of words over f(A) u g(C) read off a generation trace of D.
/// Returns nullopt if the expansion exceeds `max_words`.
std::optional<std::vector<Word>> expand_to_words(const CoherenceInstance& inst, const JseResult& jse, Elem d,
                                                 std::size_t max_words = 4096);

struct RingBaseReport {
    std::size_t points = 0;
    std::size_t schreier = 0;
    std::optional<Point> counterexample;
    bool all_schreier() const { return points == schreier; }
};

/// Whether B's addition is a group.
bool additive_group(const Algebra& b);

/// Every split epimorphism onto B from the given semirings (and their
/// binary products, up to max_size) is tested for the Schreier property.
/// Throws PreconditionError if B is not additively a group.
RingBaseReport check_ring_base_schreier(const AlgebraRef& b, const std::vector<AlgebraRef>& sources,
                                        std::size_t max_size = 8, const Guards& guards = {});

/// Coherence instances built from the given points over one base: every
/// triple of Schreier points and every pair of fibre morphisms whose images
/// jointly generate the middle algebra. Stops after `limit` instances.
std::vector<CoherenceInstance> enumerate_coherence_instances(const std::vector<Point>& points,
                                                             std::size_t limit, const Guards& guards = {});

}  // namespace schreier
