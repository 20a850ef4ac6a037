#pragma once

// Brute-force oracles and random generators shared by the unit tests. The
// oracles deliberately avoid the library's own enumeration and closure code.

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "schreier/algebra.hpp"
#include "schreier/catalog.hpp"
#include "schreier/hom.hpp"

namespace schreier::testing {

using Maps = std::vector<std::vector<Elem>>;

/// Every function {0..n-1} -> {0..m-1}, lexicographic.
inline Maps all_maps(std::size_t n, std::size_t m) {
    Maps out;
    std::vector<Elem> u(n, 0);
    while (true) {
        out.push_back(u);
        std::size_t i = n;
        while (i-- > 0) {
            if (++u[i] < m) break;
            u[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

inline bool oracle_is_hom(const Algebra& a, const Algebra& b, const std::vector<Elem>& map) {
    if (map[0] != 0) return false;
    for (std::size_t op = 0; op < a.op_count(); ++op)
        for (Elem x = 0; x < a.size(); ++x)
            for (Elem y = 0; y < a.size(); ++y)
                if (map[a.apply(op, x, y)] != b.apply(op, map[x], map[y])) return false;
    return true;
}

inline Maps oracle_homs(const Algebra& a, const Algebra& b) {
    Maps out;
    for (auto& m : all_maps(a.size(), b.size()))
        if (oracle_is_hom(a, b, m)) out.push_back(m);
    return out;
}

inline Maps maps_of(const std::vector<Hom>& homs) {
    Maps out;
    for (const auto& h : homs) out.emplace_back(h.map().begin(), h.map().end());
    return out;
}

inline bool oracle_law(const Algebra& a, std::size_t op, Law law) {
    const std::size_t n = a.size();
    auto f = [&](Elem x, Elem y) { return a.apply(op, x, y); };
    auto add = [&](Elem x, Elem y) { return a.add(x, y); };
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            if (law == Law::Comm && f(x, y) != f(y, x)) return false;
            if (law == Law::Absorb && (f(0, x) != 0 || f(x, 0) != 0)) return false;
            for (Elem z = 0; z < n; ++z) {
                if (law == Law::Assoc && f(f(x, y), z) != f(x, f(y, z))) return false;
                if (law == Law::LeftDist && f(x, add(y, z)) != add(f(x, y), f(x, z))) return false;
                if (law == Law::RightDist && f(add(x, y), z) != add(f(x, z), f(y, z))) return false;
            }
        }
    return true;
}

inline bool oracle_unit(const Algebra& a) {
    for (Elem x = 0; x < a.size(); ++x)
        if (a.add(0, x) != x || a.add(x, 0) != x) return false;
    return true;
}

/// Naive fixed point of one-step closure.
inline std::vector<Elem> oracle_closure(const Algebra& a, std::vector<Elem> gens) {
    std::vector<bool> in(a.size(), false);
    in[0] = true;
    for (Elem g : gens) in[g] = true;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t op = 0; op < a.op_count(); ++op)
            for (Elem x = 0; x < a.size(); ++x)
                for (Elem y = 0; y < a.size(); ++y)
                    if (in[x] && in[y] && !in[a.apply(op, x, y)]) in[a.apply(op, x, y)] = changed = true;
    }
    std::vector<Elem> out;
    for (Elem x = 0; x < a.size(); ++x)
        if (in[x]) out.push_back(x);
    return out;
}

/// The monoid generated by random self-maps of {0..degree-1} under
/// composition (x + y = x after y), identity at 0. Returns nullptr when
/// the generated monoid exceeds max_size.
inline AlgebraRef random_transformation_monoid(std::mt19937& rng, std::size_t degree, std::size_t gens,
                                               std::size_t max_size) {
    using Map = std::vector<Elem>;
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(degree - 1));
    Map id(degree);
    for (Elem i = 0; i < degree; ++i) id[i] = i;
    std::vector<Map> elems{id};
    std::map<Map, Elem> index{{id, 0}};
    std::vector<Map> generators;
    for (std::size_t g = 0; g < gens; ++g) {
        Map m(degree);
        for (auto& v : m) v = pick(rng);
        generators.push_back(m);
    }
    auto compose = [&](const Map& p, const Map& q) {
        Map r(degree);
        for (Elem i = 0; i < degree; ++i) r[i] = p[q[i]];
        return r;
    };
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& g : generators) {
            auto m = compose(elems[i], g);
            if (!index.count(m)) {
                index.emplace(m, static_cast<Elem>(elems.size()));
                elems.push_back(m);
                if (elems.size() > max_size) return nullptr;
            }
        }
    }
    const std::size_t n = elems.size();
    return make_algebra(Kind::Monoid,
                        Table::from_function(n, [&](Elem x, Elem y) { return index.at(compose(elems[x], elems[y])); }));
}

/// A random unital magma: the unit law is fixed, every other cell random.
inline AlgebraRef random_jt(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
    return make_algebra(Kind::JTGeneric, Table::from_function(n, [&](Elem x, Elem y) {
                            if (x == 0) return y;
                            if (y == 0) return x;
                            return pick(rng);
                        }));
}

/// Random subalgebra of a random catalog algebra of the given kind.
inline AlgebraRef random_catalog_subalgebra(std::mt19937& rng, Kind kind) {
    auto pool = Catalog::builtin().algebras(kind, 16);
    const auto& a = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)].algebra;
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(a->size() - 1));
    std::vector<Elem> gens{pick(rng), pick(rng)};
    return materialize(a, Subset(a->size(), oracle_closure(*a, gens))).algebra;
}

}  // namespace schreier::testing
