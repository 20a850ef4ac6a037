#include "schreier/coherence.hpp"

#include <algorithm>
#include <map>

namespace schreier {

namespace {

void require_schreier(const CoherenceInstance& inst, std::string_view what) {
    for (const Point* p : {&inst.left, &inst.middle, &inst.right})
        if (!check_schreier(*p).is_schreier())
            throw PreconditionError(std::string(what) + ": every point must be Schreier");
}

void require_semiring(const CoherenceInstance& inst, std::string_view what) {
    if (inst.middle.A().kind() != Kind::Semiring)
        throw PreconditionError(std::string(what) + ": needs a semiring instance");
}

Elem apply_factor(const CoherenceInstance& inst, const Factor& x) {
    return x.side == Factor::Side::F ? inst.f(x.arg) : inst.g(x.arg);
}

// Lifts a map between pullbacks: (x, e) -> (m(x), e).
Hom lift(const Hom& m, const Pullback& from, const Pullback& to) {
    std::vector<Elem> map(from.pairs.size());
    for (Elem z = 0; z < map.size(); ++z) {
        const auto [x, e] = from.pairs[z];
        map[z] = to.index_of(m(x), e);
    }
    return Hom(from.algebra, to.algebra, std::move(map));
}

}  // namespace

CoherenceInstance::CoherenceInstance(Point left_point, Point middle_point, Point right_point, Hom f_map,
                                     Hom g_map)
    : left(std::move(left_point)),
      middle(std::move(middle_point)),
      right(std::move(right_point)),
      f(std::move(f_map)),
      g(std::move(g_map)) {
    if (!same_base(left, middle) || !same_base(right, middle))
        throw PreconditionError("coherence instance: points over different bases");
    // PointMorphism validates both squares.
    PointMorphism(left, middle, f);
    PointMorphism(right, middle, g);
}

JseResult jointly_strongly_epi(const Hom& f, const Hom& g) {
    if (!(f.target() == g.target())) throw PreconditionError("jointly_strongly_epi: different codomains");
    std::vector<Elem> gens;
    for (Elem x : f.image().members()) gens.push_back(x);
    for (Elem x : g.image().members()) gens.push_back(x);
    JseResult r;
    r.trace = generate_traced(f.target(), gens);
    r.holds = r.trace.members.is_all();
    return r;
}

bool jointly_strongly_epi_in_fibre(const CoherenceInstance& inst) {
    const Algebra& D = inst.middle.A();
    if (D.size() > 16) throw PreconditionError("jointly_strongly_epi_in_fibre: |D| > 16");
    std::vector<bool> required(D.size(), false);
    required[0] = true;
    for (Elem a = 0; a < inst.left.A().size(); ++a) required[inst.f(a)] = true;
    for (Elem c = 0; c < inst.right.A().size(); ++c) required[inst.g(c)] = true;
    for (Elem b = 0; b < inst.middle.B().size(); ++b) required[inst.middle.s()(b)] = true;
    std::vector<Elem> free;
    for (Elem x = 0; x < D.size(); ++x)
        if (!required[x]) free.push_back(x);
    // A proper subalgebra containing s(B) is a proper subobject in Pt_B.
    const std::uint32_t subsets = 1u << free.size();
    for (std::uint32_t mask = 0; mask + 1 < subsets; ++mask) {
        std::vector<Elem> members;
        for (Elem x = 0; x < D.size(); ++x)
            if (required[x]) members.push_back(x);
        for (std::size_t i = 0; i < free.size(); ++i)
            if (mask >> i & 1) members.push_back(free[i]);
        std::sort(members.begin(), members.end());
        if (is_closed(D, Subset(D.size(), std::move(members)))) return false;
    }
    return true;
}

CoherenceInstance pullback_instance(const Hom& h, const CoherenceInstance& inst) {
    const auto pa = pullback(inst.left.f(), h);
    const auto pd = pullback(inst.middle.f(), h);
    const auto pc = pullback(inst.right.f(), h);
    return CoherenceInstance(pullback_point(h, inst.left), pullback_point(h, inst.middle),
                             pullback_point(h, inst.right), lift(inst.f, pa, pd), lift(inst.g, pc, pd));
}

CoherenceCheck check_coherence_along(const Hom& h, const CoherenceInstance& inst) {
    if (!jointly_strongly_epi(inst.f, inst.g).holds)
        throw PreconditionError("check_coherence_along: the pair is not jointly strongly epimorphic");
    require_schreier(inst, "check_coherence_along");
    const auto pulled = pullback_instance(h, inst);
    auto r = jointly_strongly_epi(pulled.f, pulled.g);
    return {r.holds, r.trace.members};
}

CoherenceCheck check_kernel_coherence(const CoherenceInstance& inst) {
    std::vector<Elem> gens;
    for (Elem x : inst.left.kernel().members()) gens.push_back(inst.f(x));
    for (Elem x : inst.right.kernel().members()) gens.push_back(inst.g(x));
    auto generated = generated_subalgebra(inst.middle.A(), gens);
    const bool holds = generated == inst.middle.kernel();
    return {holds, std::move(generated)};
}

ProductDecomposition decompose_product_element(const CoherenceInstance& inst, Elem a, Elem c, ProductOrder order) {
    require_semiring(inst, "decompose_product_element");
    const auto qa = check_schreier(inst.left);
    const auto qc = check_schreier(inst.right);
    if (!qa.is_schreier() || !qc.is_schreier() || !check_schreier(inst.middle).is_schreier())
        throw PreconditionError("decompose_product_element: every point must be Schreier");
    const Algebra& A = inst.left.A();
    const Algebra& C = inst.right.A();
    const Algebra& D = inst.middle.A();
    const Algebra& B = inst.middle.B();
    const Hom& s1 = inst.left.s();
    const Hom& s2 = inst.right.s();

    ProductDecomposition r;
    r.order = order;
    r.a = a;
    r.c = c;
    r.h = qa.retraction[a];
    r.l = qc.retraction[c];
    const Elem b1 = inst.left.f()(a);
    const Elem b2 = inst.right.f()(c);
    const auto& f = inst.f;
    const auto& g = inst.g;

    if (order == ProductOrder::FG) {
        r.product = D.mul(f(a), g(c));
        if (inst.middle.f()(r.product) != 0)
            throw PreconditionError("decompose_product_element: p(f(a)g(c)) is not 0");
        r.left_correction = A.mul(r.h, s1(b2));
        r.right_correction = C.mul(s2(b1), r.l);
        r.rewritten = D.add(D.add(D.mul(f(r.h), g(r.l)), f(r.left_correction)), g(r.right_correction));
        r.vanishing = B.mul(b1, b2) == 0;
    } else {
        r.product = D.mul(g(c), f(a));
        if (inst.middle.f()(r.product) != 0)
            throw PreconditionError("decompose_product_element: p(g(c)f(a)) is not 0");
        r.left_correction = A.mul(s1(b2), r.h);
        r.right_correction = C.mul(r.l, s2(b1));
        r.rewritten = D.add(D.add(D.mul(g(r.l), f(r.h)), g(r.right_correction)), f(r.left_correction));
        r.vanishing = B.mul(b2, b1) == 0;
    }
    r.identity_holds = r.product == r.rewritten;
    r.corrections_in_kernels =
        inst.left.kernel().contains(r.left_correction) && inst.right.kernel().contains(r.right_correction);
    if (!r.ok()) throw Error("decompose_product_element: rewrite failed to verify at a=" + std::to_string(a) +
                             ", c=" + std::to_string(c));
    return r;
}

Elem evaluate_word(const CoherenceInstance& inst, const Word& w) {
    if (w.empty()) throw PreconditionError("evaluate_word: empty word");
    const Algebra& D = inst.middle.A();
    Elem v = apply_factor(inst, w.front());
    for (std::size_t i = 1; i < w.size(); ++i) v = D.mul(v, apply_factor(inst, w[i]));
    return v;
}

Elem evaluate_sum(const CoherenceInstance& inst, const std::vector<Word>& terms) {
    Elem v = 0;
    for (const auto& w : terms) v = inst.middle.A().add(v, evaluate_word(inst, w));
    return v;
}

KernelDecomposition decompose_kernel_sum(const CoherenceInstance& inst, const std::vector<Word>& words) {
    require_semiring(inst, "decompose_kernel_sum");
    const auto qa = check_schreier(inst.left);
    const auto qc = check_schreier(inst.right);
    if (!qa.is_schreier() || !qc.is_schreier())
        throw PreconditionError("decompose_kernel_sum: the outer points must be Schreier");
    const Algebra& A = inst.left.A();
    const Algebra& C = inst.right.A();
    const Algebra& B = inst.middle.B();

    KernelDecomposition r;
    r.k = evaluate_sum(inst, words);
    r.source_words = words.size();
    if (inst.middle.f()(r.k) != 0) throw PreconditionError("decompose_kernel_sum: the sum is not in K");

    // absorb(x, b, on_left): s(b) x or x s(b), pulled back through f or g.
    auto absorb = [&](Factor x, Elem b, bool base_on_left) {
        if (x.side == Factor::Side::F) {
            const Elem sb = inst.left.s()(b);
            x.arg = base_on_left ? A.mul(sb, x.arg) : A.mul(x.arg, sb);
        } else {
            const Elem sb = inst.right.s()(b);
            x.arg = base_on_left ? C.mul(sb, x.arg) : C.mul(x.arg, sb);
        }
        return x;
    };

    Elem base_total = 0;
    for (const auto& w : words) {
        const std::size_t n = w.size();
        if (n > 16) throw PreconditionError("decompose_kernel_sum: word too long");
        std::vector<Factor> kernel_part(n);
        std::vector<Elem> base_part(n);
        for (std::size_t i = 0; i < n; ++i) {
            const bool is_f = w[i].side == Factor::Side::F;
            const auto& q = is_f ? qa.retraction : qc.retraction;
            kernel_part[i] = {w[i].side, q[w[i].arg]};
            base_part[i] = is_f ? inst.left.f()(w[i].arg) : inst.right.f()(w[i].arg);
        }
        Elem all_base = base_part[0];
        for (std::size_t i = 1; i < n; ++i) all_base = B.mul(all_base, base_part[i]);
        base_total = B.add(base_total, all_base);

        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            Word term;
            std::optional<Elem> run;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask >> i & 1) {
                    Factor x = kernel_part[i];
                    if (run && term.empty()) x = absorb(x, *run, true);
                    else if (run) term.back() = absorb(term.back(), *run, false);
                    run.reset();
                    term.push_back(x);
                } else {
                    run = run ? B.mul(*run, base_part[i]) : base_part[i];
                }
            }
            if (run) term.back() = absorb(term.back(), *run, false);
            r.terms.push_back(std::move(term));
        }
    }

    bool leaves_in_kernels = true;
    for (const auto& t : r.terms)
        for (const auto& x : t)
            leaves_in_kernels = leaves_in_kernels && (x.side == Factor::Side::F ? inst.left.kernel().contains(x.arg)
                                                                                 : inst.right.kernel().contains(x.arg));
    r.verified = leaves_in_kernels && base_total == 0 && evaluate_sum(inst, r.terms) == r.k;
    return r;
}

std::optional<std::vector<Word>> expand_to_words(const CoherenceInstance& inst, const JseResult& jse, Elem d,
                                                 std::size_t max_words) {
    require_semiring(inst, "expand_to_words");
    if (!jse.trace.members.contains(d)) throw PreconditionError("expand_to_words: element not generated");
    const Algebra& D = inst.middle.A();
    std::vector<Factor> preimage(D.size(), Factor{Factor::Side::F, kNoElem});
    for (Elem c = inst.right.A().size(); c-- > 0;) preimage[inst.g(c)] = {Factor::Side::G, c};
    for (Elem a = inst.left.A().size(); a-- > 0;) preimage[inst.f(a)] = {Factor::Side::F, a};

    std::map<Elem, std::vector<Word>> memo;
    bool overflow = false;
    auto expand = [&](auto&& self, Elem x) -> const std::vector<Word>& {
        if (auto it = memo.find(x); it != memo.end()) return it->second;
        std::vector<Word> out;
        const auto& der = *jse.trace.derivation[x];
        switch (der.source) {
            case Derivation::Source::Zero: break;
            case Derivation::Source::Generator: out.push_back({preimage[x]}); break;
            case Derivation::Source::Operation: {
                const auto left = self(self, der.left);
                const auto& right = self(self, der.right);
                if (der.op == 0) {
                    out = left;
                    out.insert(out.end(), right.begin(), right.end());
                } else {
                    for (const auto& wl : left)
                        for (const auto& wr : right) {
                            Word w = wl;
                            w.insert(w.end(), wr.begin(), wr.end());
                            out.push_back(std::move(w));
                        }
                }
                break;
            }
        }
        if (out.size() > max_words) {
            overflow = true;
            out.resize(max_words);
        }
        return memo.emplace(x, std::move(out)).first->second;
    };
    auto words = expand(expand, d);
    if (overflow) return std::nullopt;
    return words;
}

bool additive_group(const Algebra& b) {
    for (Elem x = 0; x < b.size(); ++x) {
        bool has_inverse = false;
        for (Elem y = 0; y < b.size() && !has_inverse; ++y) has_inverse = b.add(x, y) == 0 && b.add(y, x) == 0;
        if (!has_inverse) return false;
    }
    return true;
}

RingBaseReport check_ring_base_schreier(const AlgebraRef& b, const std::vector<AlgebraRef>& sources,
                                        std::size_t max_size, const Guards& guards) {
    if (b->kind() != Kind::Semiring) throw PreconditionError("check_ring_base_schreier: B is not a semiring");
    if (!additive_group(*b)) throw PreconditionError("check_ring_base_schreier: B is not additively a group");
    std::vector<AlgebraRef> candidates;
    auto add_candidate = [&](const AlgebraRef& a) {
        if (a->size() > max_size || !a->same_signature(*b)) return;
        for (const auto& c : candidates)
            if (*c == *a) return;
        candidates.push_back(a);
    };
    for (const auto& a : sources) add_candidate(a);
    for (std::size_t i = 0; i < sources.size(); ++i)
        for (std::size_t j = i; j < sources.size(); ++j)
            if (sources[i]->size() * sources[j]->size() <= max_size)
                add_candidate(product(sources[i], sources[j]).algebra);

    RingBaseReport r;
    for (const auto& a : candidates)
        for (auto& p : enumerate_points(a, b, guards)) {
            ++r.points;
            if (check_schreier(p).is_schreier())
                ++r.schreier;
            else if (!r.counterexample)
                r.counterexample = std::move(p);
        }
    return r;
}

std::vector<CoherenceInstance> enumerate_coherence_instances(const std::vector<Point>& points, std::size_t limit,
                                                             const Guards& guards) {
    std::vector<const Point*> schreier;
    for (const auto& p : points)
        if (check_schreier(p).is_schreier()) schreier.push_back(&p);
    std::vector<CoherenceInstance> out;
    for (const Point* d : schreier)
        for (const Point* a : schreier) {
            if (!same_base(*a, *d)) continue;
            const auto fs = enumerate_fibre_morphisms(*a, *d, guards);
            for (const Point* c : schreier) {
                if (!same_base(*c, *d)) continue;
                const auto gs = enumerate_fibre_morphisms(*c, *d, guards);
                for (const auto& f : fs)
                    for (const auto& g : gs) {
                        if (!jointly_strongly_epi(f.g(), g.g()).holds) continue;
                        out.emplace_back(*a, *d, *c, f.g(), g.g());
                        if (out.size() >= limit) return out;
                    }
            }
        }
    return out;
}

}  // namespace schreier
