#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schreier/actions.hpp"
#include "schreier/algebra.hpp"
#include "schreier/points.hpp"

namespace schreier {

struct NamedAlgebra {
    std::string name;
    AlgebraRef algebra;
};

struct NamedMonoidAction {
    std::string name;
    MonoidAction action;
};

struct NamedSemiringAction {
    std::string name;
    SemiringAction action;
};

struct NamedPoint {
    std::string name;
    Point point;
};

namespace algebras {

AlgebraRef zero_monoid();
AlgebraRef zero_semiring();
/// ({0,1}, or)
AlgebraRef b2();
/// ({0,1,2}, min(x+y, 2))
AlgebraRef n3();
/// ({0,1}, xor)
AlgebraRef z2();
/// Right-zero band {a, b} with an identity adjoined: x + y = y for x, y != 0.
AlgebraRef rz3();
/// ({0,1}, xor, and)
AlgebraRef z2_ring();
/// ({0,1}, or, and)
AlgebraRef boolean();
/// ({0,1,2}, min(x+y, 2), min(xy, 2))
AlgebraRef t3();

}  // namespace algebras

/// Built-in named algebras, actions and points. Names and their order are
/// stable; products are named "AxB".
class Catalog {
public:
    static const Catalog& builtin();

    /// Loads every *.json algebra file in `dir`; names are file stems.
    static Catalog from_directory(const std::string& dir);

    const std::vector<NamedAlgebra>& algebras() const noexcept { return algebras_; }
    std::vector<NamedAlgebra> algebras(Kind kind, std::size_t max_size) const;
    /// Monoids and semirings up to `max_size`, in catalog order.
    std::vector<NamedAlgebra> variety(std::string_view variety, std::size_t max_size) const;
    AlgebraRef algebra(std::string_view name) const;
    std::optional<std::string> name_of(const Algebra& a) const;

    const std::vector<NamedMonoidAction>& monoid_actions() const noexcept { return monoid_actions_; }
    const std::vector<NamedSemiringAction>& semiring_actions() const noexcept {
        return semiring_actions_;
    }
    const std::vector<NamedPoint>& points() const noexcept { return points_; }
    const Point& point(std::string_view name) const;

    std::vector<std::string> names() const;

private:
    std::vector<NamedAlgebra> algebras_;
    std::vector<NamedMonoidAction> monoid_actions_;
    std::vector<NamedSemiringAction> semiring_actions_;
    std::vector<NamedPoint> points_;
};

}  // namespace schreier
