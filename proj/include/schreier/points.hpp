#pragma once

#include <optional>
#include <vector>

#include "schreier/hom.hpp"

namespace schreier {

/// A split epimorphism f: A -> B with chosen section s (f s = 1_B).
class Point {
public:
    /// Checks that f and s are homomorphisms and that f s is the identity.
    Point(Hom f, Hom s);

    const Algebra& A() const noexcept { return f_.source(); }
    const Algebra& B() const noexcept { return f_.target(); }
    const AlgebraRef& A_ref() const noexcept { return f_.source_ref(); }
    const AlgebraRef& B_ref() const noexcept { return f_.target_ref(); }
    const Hom& f() const noexcept { return f_; }
    const Hom& s() const noexcept { return s_; }
    /// f^-1(0), a subalgebra of A.
    const Subset& kernel() const noexcept { return kernel_; }
    Embedding kernel_algebra() const { return materialize(A_ref(), kernel_); }

private:
    Hom f_;
    Hom s_;
    Subset kernel_;
};

enum class SchreierStatus { Schreier, ExistenceFails, UniquenessFails };

std::string_view to_string(SchreierStatus status);

struct SchreierFailure {
    SchreierStatus kind = SchreierStatus::ExistenceFails;
    Elem element = 0;
    Elem alpha1 = 0;  // two distinct kernel solutions, for UniquenessFails
    Elem alpha2 = 0;
};

struct SchreierWitness {
    /// Status of the first failing element in carrier order, or Schreier.
    SchreierStatus status = SchreierStatus::Schreier;
    /// The Schreier retraction q (values in the kernel); empty unless Schreier.
    std::vector<Elem> retraction;
    /// Every failing element of A, in carrier order.
    std::vector<SchreierFailure> failures;

    bool is_schreier() const noexcept { return status == SchreierStatus::Schreier; }
};

/// For each a, collects the kernel elements alpha with a = alpha + s f(a).
SchreierWitness check_schreier(const Point& p);

struct StrongPointResult {
    bool strong = false;
    Subset generated;  // subalgebra generated by kernel and s(B)
};

StrongPointResult is_strong_point(const Point& p);

/// Change of base along h: E -> B. The result lives on A x_B E with
/// f' = second projection and s'(e) = (s h(e), e).
Point pullback_point(const Hom& h, const Point& p);

/// Binary product in the fibre over B: A1 x_B A2 with s = <s1, s2>.
Point fibre_product_point(const Point& p1, const Point& p2);

/// Pair (g, h) with h f = f' g and g s = s' h.
class PointMorphism {
public:
    PointMorphism(Point source, Point target, Hom g, Hom h);
    /// Fibre morphism (h is the identity of the common base).
    PointMorphism(Point source, Point target, Hom g);

    const Point& source() const noexcept { return source_; }
    const Point& target() const noexcept { return target_; }
    const Hom& g() const noexcept { return g_; }
    const Hom& h() const noexcept { return h_; }
    bool is_fibre() const;

private:
    Point source_;
    Point target_;
    Hom g_;
    Hom h_;
};

/// Whether the points share a base algebra (by pointer or by value).
bool same_base(const Point& p1, const Point& p2);

/// Every g: A1 -> A2 with f2 g = f1 and g s1 = s2, in lexicographic order.
std::vector<PointMorphism> enumerate_fibre_morphisms(const Point& p1, const Point& p2,
                                                     const Guards& guards = {});

/// The restriction of g to the kernels, as a map on materialized kernels.
Hom kernel_restriction(const PointMorphism& m);

/// "kernel restriction bijective implies g bijective", with no Schreier
/// precondition; false means the implication fails on this morphism.
bool ssfl_implication(const PointMorphism& m);

/// Same implication, restricted to fibre morphisms between Schreier points.
/// Throws PreconditionError otherwise.
bool check_ssfl(const PointMorphism& m);

/// An isomorphism of points (g and h bijective), searched exhaustively.
std::optional<PointMorphism> find_point_isomorphism(const Point& p, const Point& q,
                                                    const Guards& guards = {});

/// Every point with A and B as given (all split epimorphisms A -> B with
/// every section), in lexicographic order of (f, s).
std::vector<Point> enumerate_points(const AlgebraRef& a, const AlgebraRef& b,
                                    const Guards& guards = {});

}  // namespace schreier
