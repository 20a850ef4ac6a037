#include "schreier/hom.hpp"

#include <algorithm>

namespace schreier {

namespace {

void require_signature(const Algebra& a, const Algebra& b, std::string_view what) {
    if (!a.same_signature(b))
        throw SignatureMismatch(std::string(what) + ": signatures differ (" +
                                std::string(to_string(a.kind())) + " vs " +
                                std::string(to_string(b.kind())) + ")");
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
        r *= base;
    }
    return r;
}

// Extends a partial map by closing it under every operation; returns false
// on a conflict. `known` lists the elements with an image, `from` is the
// first index of `known` whose pairs have not been processed yet.
bool propagate(const Algebra& a, const Algebra& b, std::vector<Elem>& img, std::vector<Elem>& known,
               std::size_t from) {
    for (std::size_t next = from; next < known.size(); ++next) {
        const Elem x = known[next];
        for (std::size_t j = 0; j <= next; ++j) {
            const Elem y = known[j];
            for (std::size_t op = 0; op < a.op_count(); ++op) {
                for (int flip = 0; flip < 2; ++flip) {
                    const Elem l = flip ? y : x;
                    const Elem r = flip ? x : y;
                    const Elem z = a.apply(op, l, r);
                    const Elem v = b.apply(op, img[l], img[r]);
                    if (img[z] == kNoElem) {
                        img[z] = v;
                        known.push_back(z);
                    } else if (img[z] != v) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Hom

Hom::Hom(AlgebraRef source, AlgebraRef target, std::vector<Elem> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    if (!source_ || !target_) throw StructuralError("hom with a null endpoint");
    require_signature(*source_, *target_, "hom");
    if (map_.size() != source_->size())
        throw StructuralError("hom map has length " + std::to_string(map_.size()) +
                              ", source has size " + std::to_string(source_->size()));
    for (Elem v : map_)
        if (v >= target_->size())
            throw StructuralError("hom value " + std::to_string(v) + " out of range for target size " +
                                  std::to_string(target_->size()));
}

bool Hom::is_injective() const {
    std::vector<bool> seen(target_->size(), false);
    for (Elem v : map_) {
        if (seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

bool Hom::is_surjective() const { return image().is_all(); }

Subset Hom::image() const {
    std::vector<Elem> vals(map_.begin(), map_.end());
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return Subset(target_->size(), std::move(vals));
}

bool Hom::operator==(const Hom& other) const {
    return map_ == other.map_ && (source_ == other.source_ || *source_ == *other.source_) &&
           (target_ == other.target_ || *target_ == *other.target_);
}

HomCheck check_hom(const Hom& h) {
    const auto& a = h.source();
    const auto& b = h.target();
    if (h(0) != 0) return {false, HomViolation{0, 0, "zero"}};
    for (std::size_t op = 0; op < a.op_count(); ++op)
        for (Elem x = 0; x < a.size(); ++x)
            for (Elem y = 0; y < a.size(); ++y)
                if (h(a.apply(op, x, y)) != b.apply(op, h(x), h(y)))
                    return {false, HomViolation{x, y, a.operations()[op].name}};
    return {};
}

Hom identity_hom(const AlgebraRef& a) {
    std::vector<Elem> map(a->size());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = static_cast<Elem>(i);
    return Hom(a, a, std::move(map));
}

Hom zero_hom(const AlgebraRef& source, const AlgebraRef& target) {
    return Hom(source, target, std::vector<Elem>(source->size(), 0));
}

Hom compose(const Hom& second, const Hom& first) {
    if (first.target_ref() != second.source_ref() && !(first.target() == second.source()))
        throw PreconditionError("compose: codomain of first differs from domain of second");
    std::vector<Elem> map(first.source().size());
    for (Elem x = 0; x < map.size(); ++x) map[x] = second(first(x));
    return Hom(first.source_ref(), second.target_ref(), std::move(map));
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Hom> enumerate_homs(const AlgebraRef& a, const AlgebraRef& b, const Guards& guards,
                                std::span<const Elem> fixed) {
    require_signature(*a, *b, "enumerate_homs");
    const std::size_t n = a->size();
    if (!fixed.empty() && fixed.size() != n)
        throw StructuralError("enumerate_homs: prescription has wrong length");

    std::vector<Elem> img(n, kNoElem);
    std::vector<Elem> known{0};
    img[0] = 0;
    std::vector<Elem> seeds;
    for (Elem x = 0; x < fixed.size(); ++x) {
        if (fixed[x] == kNoElem) continue;
        if (fixed[x] >= b->size()) throw StructuralError("enumerate_homs: prescribed image out of range");
        seeds.push_back(x);
        if (img[x] == kNoElem) {
            img[x] = fixed[x];
            known.push_back(x);
        } else if (img[x] != fixed[x]) {
            return {};
        }
    }

    const auto gens = complete_generators(*a, seeds);
    const std::uint64_t required = saturating_pow(b->size(), gens.size());
    if (required > guards.homs) throw GuardExceeded("enumerate_homs", required, guards.homs);

    std::vector<Hom> out;
    if (!propagate(*a, *b, img, known, 0)) return out;

    // Depth-first over generator images; each level works on its own copy.
    auto search = [&](auto&& self, std::size_t depth, const std::vector<Elem>& cur,
                      const std::vector<Elem>& cur_known) -> void {
        if (depth == gens.size()) {
            out.emplace_back(a, b, cur);
            return;
        }
        const Elem g = gens[depth];
        if (cur[g] != kNoElem) {
            self(self, depth + 1, cur, cur_known);
            return;
        }
        for (Elem v = 0; v < b->size(); ++v) {
            auto next = cur;
            auto next_known = cur_known;
            next[g] = v;
            next_known.push_back(g);
            if (propagate(*a, *b, next, next_known, next_known.size() - 1))
                self(self, depth + 1, next, next_known);
        }
    };
    search(search, 0, img, known);

    std::sort(out.begin(), out.end(), [](const Hom& l, const Hom& r) {
        return std::lexicographical_compare(l.map().begin(), l.map().end(), r.map().begin(),
                                            r.map().end());
    });
    return out;
}

std::optional<Hom> find_isomorphism(const AlgebraRef& a, const AlgebraRef& b, const Guards& guards) {
    if (a->size() != b->size() || !a->same_signature(*b)) return std::nullopt;
    for (auto& h : enumerate_homs(a, b, guards))
        if (h.is_bijective()) return h;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constructions

Embedding materialize(const AlgebraRef& a, const Subset& members) {
    if (members.universe() != a->size())
        throw StructuralError("materialize: subset universe does not match the algebra");
    if (!is_closed(*a, members)) throw PreconditionError("materialize: subset is not a subalgebra");
    const auto elems = members.members();
    std::vector<Elem> index_of(a->size(), kNoElem);
    for (std::size_t i = 0; i < elems.size(); ++i) index_of[elems[i]] = static_cast<Elem>(i);

    std::vector<Table> tables;
    std::vector<std::set<Law>> laws;
    const std::size_t m = elems.size();
    for (const auto& op : a->operations()) {
        tables.push_back(Table::from_function(m, [&](Elem x, Elem y) {
            return index_of[op.table(elems[x], elems[y])];
        }));
        laws.push_back(op.laws);
    }
    auto sub = with_tables(*a, std::move(tables), std::move(laws));
    Hom inclusion(sub, a, std::vector<Elem>(elems.begin(), elems.end()));
    return Embedding{sub, std::move(inclusion), std::move(index_of)};
}

namespace {

std::set<Law> common(const std::set<Law>& l, const std::set<Law>& r) {
    std::set<Law> out;
    std::set_intersection(l.begin(), l.end(), r.begin(), r.end(), std::inserter(out, out.begin()));
    return out;
}

}  // namespace

Product product(const AlgebraRef& a, const AlgebraRef& b) {
    require_signature(*a, *b, "product");
    const std::size_t na = a->size();
    const std::size_t nb = b->size();
    const std::size_t n = na * nb;
    std::vector<Table> tables;
    std::vector<std::set<Law>> laws;
    for (std::size_t op = 0; op < a->op_count(); ++op) {
        tables.push_back(Table::from_function(n, [&](Elem z, Elem w) {
            const Elem x = a->apply(op, z / nb, w / nb);
            const Elem y = b->apply(op, z % nb, w % nb);
            return x * nb + y;
        }));
        laws.push_back(common(a->operations()[op].laws, b->operations()[op].laws));
    }
    auto p = with_tables(*a, std::move(tables), std::move(laws));
    std::vector<Elem> m1(n), m2(n), i1(na), i2(nb);
    for (Elem z = 0; z < n; ++z) {
        m1[z] = static_cast<Elem>(z / nb);
        m2[z] = static_cast<Elem>(z % nb);
    }
    for (Elem x = 0; x < na; ++x) i1[x] = static_cast<Elem>(x * nb);
    for (Elem y = 0; y < nb; ++y) i2[y] = y;
    return Product{p,
                   Hom(p, a, std::move(m1)),
                   Hom(p, b, std::move(m2)),
                   Hom(a, p, std::move(i1)),
                   Hom(b, p, std::move(i2)),
                   nb};
}

Pullback pullback(const Hom& f, const Hom& g) {
    if (f.target_ref() != g.target_ref() && !(f.target() == g.target()))
        throw PreconditionError("pullback: homs have different codomains");
    const auto& A = f.source_ref();
    const auto& C = g.source_ref();
    const std::size_t nc = C->size();
    std::vector<std::pair<Elem, Elem>> pairs;
    std::vector<Elem> lookup(A->size() * nc, kNoElem);
    for (Elem x = 0; x < A->size(); ++x)
        for (Elem y = 0; y < nc; ++y)
            if (f(x) == g(y)) {
                lookup[x * nc + y] = static_cast<Elem>(pairs.size());
                pairs.emplace_back(x, y);
            }
    const std::size_t n = pairs.size();
    std::vector<Table> tables;
    std::vector<std::set<Law>> laws;
    for (std::size_t op = 0; op < A->op_count(); ++op) {
        tables.push_back(Table::from_function(n, [&](Elem z, Elem w) {
            const Elem x = A->apply(op, pairs[z].first, pairs[w].first);
            const Elem y = C->apply(op, pairs[z].second, pairs[w].second);
            return lookup[x * nc + y];
        }));
        laws.push_back(common(A->operations()[op].laws, C->operations()[op].laws));
    }
    auto P = with_tables(*A, std::move(tables), std::move(laws));
    std::vector<Elem> m1(n), m2(n);
    for (Elem z = 0; z < n; ++z) {
        m1[z] = pairs[z].first;
        m2[z] = pairs[z].second;
    }
    return Pullback{P, Hom(P, A, std::move(m1)), Hom(P, C, std::move(m2)), std::move(pairs),
                    std::move(lookup), nc};
}

std::optional<std::size_t> verify_pullback_universal(const Pullback& pb, const Hom& f, const Hom& g,
                                                     const AlgebraRef& test, const Guards& guards) {
    const auto to_a = enumerate_homs(test, f.source_ref(), guards);
    const auto to_c = enumerate_homs(test, g.source_ref(), guards);
    const auto to_p = enumerate_homs(test, pb.algebra, guards);
    std::size_t cones = 0;
    for (const auto& u : to_a) {
        for (const auto& v : to_c) {
            bool commutes = true;
            for (Elem t = 0; t < test->size() && commutes; ++t) commutes = f(u(t)) == g(v(t));
            if (!commutes) continue;
            ++cones;
            std::size_t mediating = 0;
            for (const auto& m : to_p) {
                bool ok = true;
                for (Elem t = 0; t < test->size() && ok; ++t)
                    ok = pb.p1(m(t)) == u(t) && pb.p2(m(t)) == v(t);
                if (ok) ++mediating;
            }
            if (mediating != 1) return std::nullopt;
        }
    }
    return cones;
}

}  // namespace schreier
