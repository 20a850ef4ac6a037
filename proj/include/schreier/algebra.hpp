#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "schreier/errors.hpp"

namespace schreier {

/// Carrier elements are indices 0..n-1; index 0 is always the constant 0.
using Elem = std::uint32_t;

inline constexpr Elem kNoElem = static_cast<Elem>(-1);

enum class Kind { Monoid, CommutativeMonoid, Semiring, JTGeneric };

enum class Law { Assoc, Comm, LeftDist, RightDist, Absorb };

std::string_view to_string(Kind kind);
std::string_view to_string(Law law);
Kind kind_from_string(std::string_view text);
Law law_from_string(std::string_view text);

/// A total n x n table with entries in 0..n-1.
class Table {
public:
    Table() = default;
    Table(std::size_t n, std::vector<Elem> cells);

    static Table from_rows(const std::vector<std::vector<Elem>>& rows, std::size_t n);
    static Table from_function(std::size_t n, auto&& fn) {
        std::vector<Elem> cells(n * n);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                cells[x * n + y] = static_cast<Elem>(fn(static_cast<Elem>(x), static_cast<Elem>(y)));
        return Table(n, std::move(cells));
    }

    Elem operator()(Elem x, Elem y) const { return cells_[x * n_ + y]; }
    std::size_t size() const noexcept { return n_; }
    std::span<const Elem> cells() const noexcept { return cells_; }
    std::vector<std::vector<Elem>> rows() const;

    bool operator==(const Table&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<Elem> cells_;
};

struct Operation {
    std::string name;
    Table table;
    std::set<Law> laws;  // declared laws, enforced on top of the kind's own

    bool operator==(const Operation&) const = default;
};

/// A finite Jonsson-Tarski algebra given by Cayley tables. Operation 0 is
/// always "add"; any further binary operations follow in declaration order.
/// Construction checks structure only; laws are checked by validate_algebra.
class Algebra {
public:
    Algebra(Kind kind, Table add, std::vector<Operation> extra_ops = {},
            std::set<Law> add_laws = {});

    Kind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return ops_.front().table.size(); }

    /// All operations, "add" first.
    std::span<const Operation> operations() const noexcept { return ops_; }
    std::span<const Operation> extra_ops() const noexcept {
        return std::span<const Operation>(ops_).subspan(1);
    }
    std::size_t op_count() const noexcept { return ops_.size(); }
    Elem apply(std::size_t op, Elem x, Elem y) const { return ops_[op].table(x, y); }

    Elem add(Elem x, Elem y) const { return ops_.front().table(x, y); }
    /// Multiplication of a semiring; the first extra op for other kinds.
    Elem mul(Elem x, Elem y) const;
    bool has_mul() const noexcept { return ops_.size() > 1; }

    const Operation* find_op(std::string_view name) const;

    /// Same kind and same extra-op names in the same order.
    bool same_signature(const Algebra& other) const;

    bool operator==(const Algebra&) const = default;

private:
    Kind kind_;
    std::vector<Operation> ops_;
};

using AlgebraRef = std::shared_ptr<const Algebra>;

template <class... Args>
AlgebraRef make_algebra(Args&&... args) {
    return std::make_shared<const Algebra>(std::forward<Args>(args)...);
}

/// Algebra with the same tables as `like` but a different carrier; used by
/// product-style constructions that keep the signature.
AlgebraRef with_tables(const Algebra& like, std::vector<Table> tables,
                       std::vector<std::set<Law>> laws);

/// The additive reduct (a commutative monoid or JT algebra with only +).
AlgebraRef additive_reduct(const Algebra& a);

/// A set of elements of a carrier of known size; sorted and distinct.
class Subset {
public:
    Subset() = default;
    Subset(std::size_t universe, std::vector<Elem> members);

    static Subset all(std::size_t universe);

    std::size_t universe() const noexcept { return universe_; }
    std::span<const Elem> members() const& noexcept { return members_; }
    std::vector<Elem> members() && { return std::move(members_); }
    std::size_t size() const noexcept { return members_.size(); }
    bool contains(Elem x) const { return x < universe_ && mask_[x]; }
    bool is_all() const noexcept { return members_.size() == universe_; }
    bool subset_of(const Subset& other) const;

    bool operator==(const Subset& other) const {
        return universe_ == other.universe_ && members_ == other.members_;
    }

private:
    std::size_t universe_ = 0;
    std::vector<Elem> members_;
    std::vector<bool> mask_;
};

struct LawCheck {
    std::string op;
    std::string law;
    bool holds = true;
    std::vector<Elem> witness;  // the offending x (, y (, z)) when !holds
};

struct LawReport {
    std::vector<LawCheck> checks;

    bool accepted() const;
    const LawCheck* first_violation() const;
    std::string summary() const;
};

/// Checks every law enforced for the algebra's kind plus every declared law.
LawReport validate_algebra(const Algebra& a);

/// Throws PreconditionError naming the first violated law.
void require_valid(const Algebra& a, std::string_view what);

struct Derivation {
    enum class Source { Zero, Generator, Operation };
    Source source = Source::Zero;
    std::size_t op = 0;
    Elem left = 0;
    Elem right = 0;
};

/// Result of saturating a generating set: the members plus, for each
/// member, how it was first reached.
struct Generation {
    Subset members;
    std::vector<std::optional<Derivation>> derivation;  // indexed by element
};

Generation generate_traced(const Algebra& a, std::span<const Elem> gens);
Subset generated_subalgebra(const Algebra& a, const Subset& gens);
Subset generated_subalgebra(const Algebra& a, std::span<const Elem> gens);
bool is_closed(const Algebra& a, const Subset& s);

/// Greedy generating set: the seeds' closure is extended by the smallest
/// missing element until everything is generated. Seeds are not included.
std::vector<Elem> complete_generators(const Algebra& a, std::span<const Elem> seeds);

}  // namespace schreier
