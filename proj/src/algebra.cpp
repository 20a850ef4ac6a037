#include "schreier/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace schreier {

std::string_view to_string(Kind kind) {
    switch (kind) {
        case Kind::Monoid: return "monoid";
        case Kind::CommutativeMonoid: return "cmon";
        case Kind::Semiring: return "semiring";
        case Kind::JTGeneric: return "jt";
    }
    return "?";
}

std::string_view to_string(Law law) {
    switch (law) {
        case Law::Assoc: return "assoc";
        case Law::Comm: return "comm";
        case Law::LeftDist: return "ldist";
        case Law::RightDist: return "rdist";
        case Law::Absorb: return "absorb";
    }
    return "?";
}

Kind kind_from_string(std::string_view text) {
    if (text == "monoid") return Kind::Monoid;
    if (text == "cmon") return Kind::CommutativeMonoid;
    if (text == "semiring") return Kind::Semiring;
    if (text == "jt") return Kind::JTGeneric;
    throw StructuralError("unknown algebra kind '" + std::string(text) + "'");
}

Law law_from_string(std::string_view text) {
    for (Law law : {Law::Assoc, Law::Comm, Law::LeftDist, Law::RightDist, Law::Absorb})
        if (to_string(law) == text) return law;
    throw StructuralError("unknown law '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Table

Table::Table(std::size_t n, std::vector<Elem> cells) : n_(n), cells_(std::move(cells)) {
    if (n_ == 0) throw StructuralError("table over an empty carrier");
    if (cells_.size() != n_ * n_)
        throw StructuralError("table has " + std::to_string(cells_.size()) + " cells, expected " +
                              std::to_string(n_ * n_));
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (cells_[i] >= n_)
            throw StructuralError("table entry (" + std::to_string(i / n_) + "," +
                                  std::to_string(i % n_) + ") = " + std::to_string(cells_[i]) +
                                  " is out of range for size " + std::to_string(n_));
}

Table Table::from_rows(const std::vector<std::vector<Elem>>& rows, std::size_t n) {
    if (rows.size() != n)
        throw StructuralError("table has " + std::to_string(rows.size()) + " rows, expected " +
                              std::to_string(n));
    std::vector<Elem> cells;
    cells.reserve(n * n);
    for (const auto& row : rows) {
        if (row.size() != n)
            throw StructuralError("table row has " + std::to_string(row.size()) +
                                  " entries, expected " + std::to_string(n));
        cells.insert(cells.end(), row.begin(), row.end());
    }
    return Table(n, std::move(cells));
}

std::vector<std::vector<Elem>> Table::rows() const {
    std::vector<std::vector<Elem>> out(n_);
    for (std::size_t x = 0; x < n_; ++x)
        out[x].assign(cells_.begin() + static_cast<std::ptrdiff_t>(x * n_),
                      cells_.begin() + static_cast<std::ptrdiff_t>((x + 1) * n_));
    return out;
}

// ---------------------------------------------------------------------------
// Algebra

Algebra::Algebra(Kind kind, Table add, std::vector<Operation> extra_ops, std::set<Law> add_laws)
    : kind_(kind) {
    if (add.size() == 0) throw StructuralError("algebra needs a non-empty carrier");
    ops_.push_back(Operation{"add", std::move(add), std::move(add_laws)});
    for (auto& op : extra_ops) {
        if (op.table.size() != size())
            throw StructuralError("operation '" + op.name + "' has size " +
                                  std::to_string(op.table.size()) + ", carrier has " +
                                  std::to_string(size()));
        if (op.name.empty() || op.name == "add")
            throw StructuralError("invalid operation name '" + op.name + "'");
        if (find_op(op.name)) throw StructuralError("duplicate operation '" + op.name + "'");
        ops_.push_back(std::move(op));
    }
    if (kind_ == Kind::Semiring && (ops_.size() != 2 || ops_[1].name != "mul"))
        throw StructuralError("a semiring has exactly one extra operation, named 'mul'");
    if ((kind_ == Kind::Monoid || kind_ == Kind::CommutativeMonoid) && ops_.size() != 1)
        throw StructuralError("monoids carry no extra operations");
}

Elem Algebra::mul(Elem x, Elem y) const {
    if (ops_.size() < 2) throw PreconditionError("algebra has no multiplication");
    return ops_[1].table(x, y);
}

const Operation* Algebra::find_op(std::string_view name) const {
    for (const auto& op : ops_)
        if (op.name == name) return &op;
    return nullptr;
}

bool Algebra::same_signature(const Algebra& other) const {
    if (kind_ != other.kind_ || ops_.size() != other.ops_.size()) return false;
    for (std::size_t i = 0; i < ops_.size(); ++i)
        if (ops_[i].name != other.ops_[i].name) return false;
    return true;
}

AlgebraRef with_tables(const Algebra& like, std::vector<Table> tables,
                       std::vector<std::set<Law>> laws) {
    if (tables.size() != like.op_count() || laws.size() != like.op_count())
        throw StructuralError("with_tables: operation count mismatch");
    std::vector<Operation> extra;
    for (std::size_t i = 1; i < tables.size(); ++i)
        extra.push_back(Operation{like.operations()[i].name, std::move(tables[i]), std::move(laws[i])});
    return make_algebra(like.kind(), std::move(tables[0]), std::move(extra), std::move(laws[0]));
}

AlgebraRef additive_reduct(const Algebra& a) {
    Kind kind = Kind::JTGeneric;
    if (a.kind() == Kind::Semiring || a.kind() == Kind::CommutativeMonoid)
        kind = Kind::CommutativeMonoid;
    else if (a.kind() == Kind::Monoid)
        kind = Kind::Monoid;
    return make_algebra(kind, a.operations()[0].table, std::vector<Operation>{},
                        a.operations()[0].laws);
}

// ---------------------------------------------------------------------------
// Subset

Subset::Subset(std::size_t universe, std::vector<Elem> members)
    : universe_(universe), members_(std::move(members)), mask_(universe, false) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
        throw StructuralError("subset has repeated members");
    for (Elem x : members_) {
        if (x >= universe_)
            throw StructuralError("subset member " + std::to_string(x) + " out of range");
        mask_[x] = true;
    }
}

Subset Subset::all(std::size_t universe) {
    std::vector<Elem> members(universe);
    for (std::size_t i = 0; i < universe; ++i) members[i] = static_cast<Elem>(i);
    return Subset(universe, std::move(members));
}

bool Subset::subset_of(const Subset& other) const {
    return std::all_of(members_.begin(), members_.end(),
                       [&](Elem x) { return other.contains(x); });
}

// ---------------------------------------------------------------------------
// Law checking

namespace {

LawCheck check_unit(const Operation& op, std::size_t n) {
    LawCheck c{op.name, "unit", true, {}};
    for (Elem x = 0; x < n; ++x)
        if (op.table(0, x) != x || op.table(x, 0) != x) return {op.name, "unit", false, {x}};
    return c;
}

LawCheck check_law(const Operation& op, const Operation& add, Law law, std::size_t n) {
    const auto& t = op.table;
    const auto& p = add.table;
    std::string name(to_string(law));
    for (Elem x = 0; x < n; ++x) {
        if (law == Law::Absorb) {
            if (t(0, x) != 0 || t(x, 0) != 0) return {op.name, name, false, {x}};
            continue;
        }
        for (Elem y = 0; y < n; ++y) {
            if (law == Law::Comm) {
                if (t(x, y) != t(y, x)) return {op.name, name, false, {x, y}};
                continue;
            }
            for (Elem z = 0; z < n; ++z) {
                bool ok = true;
                switch (law) {
                    case Law::Assoc: ok = t(t(x, y), z) == t(x, t(y, z)); break;
                    case Law::LeftDist: ok = t(x, p(y, z)) == p(t(x, y), t(x, z)); break;
                    case Law::RightDist: ok = t(p(y, z), x) == p(t(y, x), t(z, x)); break;
                    default: break;
                }
                if (!ok) return {op.name, name, false, {x, y, z}};
            }
        }
    }
    return {op.name, name, true, {}};
}

std::set<Law> enforced_laws(const Algebra& a, std::size_t op) {
    std::set<Law> laws = a.operations()[op].laws;
    if (op == 0) {
        if (a.kind() != Kind::JTGeneric) laws.insert(Law::Assoc);
        if (a.kind() == Kind::CommutativeMonoid || a.kind() == Kind::Semiring)
            laws.insert(Law::Comm);
    } else if (a.kind() == Kind::Semiring) {
        laws.insert({Law::Assoc, Law::LeftDist, Law::RightDist, Law::Absorb});
    }
    return laws;
}

}  // namespace

bool LawReport::accepted() const {
    return std::all_of(checks.begin(), checks.end(), [](const LawCheck& c) { return c.holds; });
}

const LawCheck* LawReport::first_violation() const {
    for (const auto& c : checks)
        if (!c.holds) return &c;
    return nullptr;
}

std::string LawReport::summary() const {
    std::ostringstream out;
    for (const auto& c : checks) {
        out << c.op << "." << c.law << ": " << (c.holds ? "ok" : "VIOLATED");
        if (!c.holds) {
            out << " at (";
            for (std::size_t i = 0; i < c.witness.size(); ++i)
                out << (i ? "," : "") << c.witness[i];
            out << ")";
        }
        out << "\n";
    }
    return out.str();
}

LawReport validate_algebra(const Algebra& a) {
    LawReport report;
    const auto ops = a.operations();
    report.checks.push_back(check_unit(ops[0], a.size()));
    for (std::size_t i = 0; i < ops.size(); ++i)
        for (Law law : enforced_laws(a, i))
            report.checks.push_back(check_law(ops[i], ops[0], law, a.size()));
    return report;
}

void require_valid(const Algebra& a, std::string_view what) {
    auto report = validate_algebra(a);
    if (const auto* bad = report.first_violation()) {
        std::string w;
        for (std::size_t i = 0; i < bad->witness.size(); ++i)
            w += (i ? "," : "") + std::to_string(bad->witness[i]);
        throw PreconditionError(std::string(what) + ": law " + bad->op + "." + bad->law +
                                " fails at (" + w + ")");
    }
}

// ---------------------------------------------------------------------------
// Generation

Generation generate_traced(const Algebra& a, std::span<const Elem> gens) {
    const std::size_t n = a.size();
    std::vector<std::optional<Derivation>> how(n);
    std::vector<Elem> order;
    auto admit = [&](Elem x, Derivation d) {
        if (how[x]) return;
        how[x] = d;
        order.push_back(x);
    };
    admit(0, Derivation{});
    for (Elem g : gens) {
        if (g >= n) throw StructuralError("generator " + std::to_string(g) + " out of range");
        admit(g, Derivation{Derivation::Source::Generator, 0, 0, 0});
    }
    // Each newly admitted element is combined with every element admitted
    // before it (both orders) and with itself.
    for (std::size_t next = 0; next < order.size(); ++next) {
        const Elem x = order[next];
        for (std::size_t j = 0; j <= next; ++j) {
            const Elem y = order[j];
            for (std::size_t op = 0; op < a.op_count(); ++op) {
                admit(a.apply(op, x, y), Derivation{Derivation::Source::Operation, op, x, y});
                admit(a.apply(op, y, x), Derivation{Derivation::Source::Operation, op, y, x});
            }
        }
    }
    return Generation{Subset(n, order), std::move(how)};
}

Subset generated_subalgebra(const Algebra& a, std::span<const Elem> gens) {
    return generate_traced(a, gens).members;
}

Subset generated_subalgebra(const Algebra& a, const Subset& gens) {
    return generated_subalgebra(a, gens.members());
}

bool is_closed(const Algebra& a, const Subset& s) {
    if (!s.contains(0)) return false;
    for (Elem x : s.members())
        for (Elem y : s.members())
            for (std::size_t op = 0; op < a.op_count(); ++op)
                if (!s.contains(a.apply(op, x, y))) return false;
    return true;
}

std::vector<Elem> complete_generators(const Algebra& a, std::span<const Elem> seeds) {
    std::vector<Elem> all(seeds.begin(), seeds.end());
    std::vector<Elem> extra;
    Subset closure = generated_subalgebra(a, all);
    for (Elem x = 0; x < a.size(); ++x) {
        if (closure.contains(x)) continue;
        extra.push_back(x);
        all.push_back(x);
        closure = generated_subalgebra(a, all);
    }
    return extra;
}

}  // namespace schreier
