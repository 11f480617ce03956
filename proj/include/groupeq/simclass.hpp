#pragma once

#include "groupeq/eqlang.hpp"
#include "groupeq/errors.hpp"
#include "groupeq/fingroup.hpp"
#include "groupeq/solvecount.hpp"
#include "groupeq/zlinalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace groupeq {

// A homomorphism out of the free product, given by the unknown images
// (aligned with the unknown list); the coefficient atoms stay bound.
using Hom = std::vector<int>;

// Everything the similarity-class machinery needs: an indexing (degree-zero
// equations, coprime degrees), a degree-one word t, and a subgroup H inside
// the centralizer of the coefficients.
struct IndexedHomContext {
    EquationSystem sys;
    const FiniteGroup* group = nullptr;
    Subgroup h;
    CoefficientBinding binding;
    std::vector<Int> degrees;  // per unknown
    Word t;
    std::map<std::string, int> unknown_index;
};

inline IndexedHomContext make_context(const EquationSystem& sys, const FiniteGroup& g,
                                      const CoefficientBinding& binding, Subgroup h) {
    IndexedHomContext ctx;
    ctx.sys = sys;
    ctx.group = &g;
    ctx.binding = binding;

    for (const std::string& a : sys.coefficient_atoms) {
        int val = binding.atom_values.at(a);
        for (int x : h.members)
            if (g.mul(x, val) != g.mul(val, x))
                throw Error("subgroup is not contained in the centralizer of coefficient @" + a);
    }
    ctx.h = std::move(h);

    ctx.degrees = make_indexing(exponent_matrix(sys)).degrees;
    std::vector<Int> bez = bezout(ctx.degrees);
    Int check = 0;
    for (std::size_t j = 0; j < bez.size(); ++j) check += bez[j] * ctx.degrees[j];
    if (check != 1) throw Error("indexing degrees are not coprime");
    std::vector<Letter> t_letters;
    for (std::size_t j = 0; j < bez.size(); ++j)
        if (bez[j] != 0) t_letters.push_back({sys.unknowns[j], LetterKind::unknown, bez[j]});
    ctx.t = Word(std::move(t_letters));

    for (std::size_t j = 0; j < sys.unknowns.size(); ++j)
        ctx.unknown_index[sys.unknowns[j]] = static_cast<int>(j);
    return ctx;
}

inline Int word_degree(const IndexedHomContext& ctx, const Word& w) {
    Int d = 0;
    for (std::size_t j = 0; j < ctx.sys.unknowns.size(); ++j)
        d += ctx.degrees[j] * exponent_sum(w, ctx.sys.unknowns[j]);
    return d;
}

inline int eval_hom(const IndexedHomContext& ctx, const Word& w, const Hom& phi) {
    const FiniteGroup& g = *ctx.group;
    int acc = g.identity();
    for (const Letter& l : w.letters()) {
        int base = l.kind == LetterKind::unknown ? phi[ctx.unknown_index.at(l.symbol)]
                                                 : ctx.binding.atom_values.at(l.symbol);
        acc = g.mul(acc, g.pow(base, l.exponent));
    }
    return acc;
}

inline bool is_solution(const IndexedHomContext& ctx, const Hom& phi) {
    for (const Word& w : ctx.sys.equations)
        if (eval_hom(ctx, w, phi) != ctx.group->identity()) return false;
    return true;
}

// phi(ker deg) as a subgroup: Reidemeister-Schreier generators over the
// transversal {t^n} are t^n s t^-(n + deg s) for every generator s; their
// phi-images for n up to ord(phi(t)) generate the whole image of the kernel.
inline Subgroup kernel_image(const IndexedHomContext& ctx, const Hom& phi) {
    const FiniteGroup& g = *ctx.group;
    int tval = eval_hom(ctx, ctx.t, phi);
    int ord = g.element_order(tval);
    std::vector<int> gens;
    auto add_generator = [&](int image, const Int& deg) {
        int base = g.mul(image, g.pow(tval, -deg));
        int tn = g.identity();
        for (int n = 0; n < ord; ++n) {
            gens.push_back(g.mul(tn, g.mul(base, g.inv(tn))));
            tn = g.mul(tn, tval);
        }
    };
    for (std::size_t j = 0; j < ctx.sys.unknowns.size(); ++j) add_generator(phi[j], ctx.degrees[j]);
    for (const std::string& a : ctx.sys.coefficient_atoms)
        add_generator(ctx.binding.atom_values.at(a), 0);
    return closure(g, gens);
}

// The core of phi inside H: elements h whose conjugation by anything in the
// image of phi stays in H and which centralize phi(ker deg).
inline Subgroup phi_core(const IndexedHomContext& ctx, const Hom& phi) {
    const FiniteGroup& g = *ctx.group;
    std::vector<int> image_gens(phi);
    for (const std::string& a : ctx.sys.coefficient_atoms)
        image_gens.push_back(ctx.binding.atom_values.at(a));
    Subgroup image = closure(g, image_gens);
    Subgroup ker = kernel_image(ctx, phi);

    std::vector<int> members;
    for (int h : ctx.h.members) {
        bool ok = true;
        for (int q : image.members) {
            if (!ctx.h.contains(g.mul(q, g.mul(h, g.inv(q))))) {
                ok = false;
                break;
            }
        }
        if (ok)
            for (int k : ker.members)
                if (g.mul(h, k) != g.mul(k, h)) {
                    ok = false;
                    break;
                }
        if (ok) members.push_back(h);
    }
    return make_subgroup(g, std::move(members));
}

// Conjugation acts on the unknown images only; for h in H (which centralizes
// the coefficients) this is conjugation of the whole homomorphism.
inline Hom conjugate_hom(const IndexedHomContext& ctx, const Hom& phi, int h) {
    const FiniteGroup& g = *ctx.group;
    Hom out(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j) out[j] = g.mul(g.inv(h), g.mul(phi[j], h));
    return out;
}

// The twist of phi by h: x_j maps to phi(x_j) T^-d_j (T h)^d_j with T = phi(t).
// Requires h in the core of phi.
inline Hom twist(const IndexedHomContext& ctx, const Hom& phi, int h) {
    const FiniteGroup& g = *ctx.group;
    if (!phi_core(ctx, phi).contains(h))
        throw Error("twist requires an element of the core of the homomorphism");
    int tval = eval_hom(ctx, ctx.t, phi);
    int th = g.mul(tval, h);
    Hom out(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j)
        out[j] = g.mul(phi[j], g.mul(g.pow(tval, -ctx.degrees[j]), g.pow(th, ctx.degrees[j])));
    return out;
}

namespace detail {

// Values of the Reidemeister-Schreier generator for (s, n) under phi.
inline int rs_value(const FiniteGroup& g, int tval, int image, const Int& deg, int n) {
    int tn = g.pow(tval, n);
    return g.mul(tn, g.mul(g.mul(image, g.pow(tval, -deg)), g.inv(tn)));
}

struct TailCache {
    std::map<Hom, Subgroup> cores;

    const Subgroup& core(const IndexedHomContext& ctx, const Hom& phi) {
        auto it = cores.find(phi);
        if (it == cores.end()) it = cores.emplace(phi, phi_core(ctx, phi)).first;
        return it->second;
    }
};

inline bool same_tail_impl(const IndexedHomContext& ctx, const Hom& phi, const Hom& psi,
                           const Subgroup& phi_core_sub) {
    const FiniteGroup& g = *ctx.group;
    int tp = eval_hom(ctx, ctx.t, phi);
    int tq = eval_hom(ctx, ctx.t, psi);
    if (!phi_core_sub.contains(g.mul(g.inv(tp), tq))) return false;
    long lcm_ord = std::lcm<long>(g.element_order(tp), g.element_order(tq));
    for (std::size_t j = 0; j < ctx.sys.unknowns.size(); ++j)
        for (long n = 0; n < lcm_ord; ++n)
            if (rs_value(g, tp, phi[j], ctx.degrees[j], static_cast<int>(n)) !=
                rs_value(g, tq, psi[j], ctx.degrees[j], static_cast<int>(n)))
                return false;
    for (const std::string& a : ctx.sys.coefficient_atoms) {
        int image = ctx.binding.atom_values.at(a);
        for (long n = 0; n < lcm_ord; ++n)
            if (rs_value(g, tp, image, 0, static_cast<int>(n)) !=
                rs_value(g, tq, image, 0, static_cast<int>(n)))
                return false;
    }
    return true;
}

}  // namespace detail

// Same tail: equal Reidemeister-Schreier generator values over a full period
// and phi(t)^-1 psi(t) in the core of phi.
inline bool same_tail(const IndexedHomContext& ctx, const Hom& phi, const Hom& psi) {
    return detail::same_tail_impl(ctx, phi, psi, phi_core(ctx, phi));
}

inline bool similar(const IndexedHomContext& ctx, const Hom& phi, const Hom& psi) {
    for (int h : ctx.h.members)
        if (same_tail(ctx, conjugate_hom(ctx, phi, h), psi)) return true;
    return false;
}

struct ConditionReport {
    bool closed_under_conjugation = true;
    bool closed_under_twists = true;
    std::optional<std::pair<Hom, int>> conjugation_witness;  // (phi, h) with conjugate missing
    std::optional<std::pair<Hom, int>> twist_witness;        // (phi, h) with twist missing

    bool ok() const { return closed_under_conjugation && closed_under_twists; }
};

// Condition I: Phi closed under conjugation by H.  Condition II: Phi closed
// under twists by core elements.
inline ConditionReport check_conditions(const IndexedHomContext& ctx, const std::vector<Hom>& homs) {
    ConditionReport rep;
    std::set<Hom> member(homs.begin(), homs.end());
    for (const Hom& phi : homs) {
        for (int h : ctx.h.members)
            if (!member.count(conjugate_hom(ctx, phi, h))) {
                rep.closed_under_conjugation = false;
                rep.conjugation_witness = {phi, h};
                break;
            }
        if (!rep.closed_under_conjugation) break;
    }
    for (const Hom& phi : homs) {
        for (int h : phi_core(ctx, phi).members)
            if (!member.count(twist(ctx, phi, h))) {
                rep.closed_under_twists = false;
                rep.twist_witness = {phi, h};
                break;
            }
        if (!rep.closed_under_twists) break;
    }
    return rep;
}

struct SimilarityClass {
    std::vector<Hom> members;  // sorted
    int tail_count = 0;
    int core_order = 0;  // |H_phi| of the members (equal across the class)
};

struct SimilarityPartition {
    std::vector<SimilarityClass> classes;
    ConditionReport conditions;
};

// Partition Phi into similarity classes by union-find over pairwise
// similarity (pairs already joined are skipped).  Phi must consist of
// solutions and satisfy Conditions I and II.
inline SimilarityPartition partition_classes(const IndexedHomContext& ctx, const std::vector<Hom>& homs) {
    const FiniteGroup& g = *ctx.group;
    for (const Hom& phi : homs) {
        if (static_cast<int>(phi.size()) != static_cast<int>(ctx.sys.unknowns.size()))
            throw Error("homomorphism arity does not match the unknown list");
        if (!is_solution(ctx, phi)) throw Error("partition input contains a non-solution");
    }

    SimilarityPartition out;
    out.conditions = check_conditions(ctx, homs);
    if (!out.conditions.ok()) {
        auto describe = [&](const std::pair<Hom, int>& w) {
            std::string s = "(";
            for (std::size_t j = 0; j < w.first.size(); ++j)
                s += (j ? ", " : "") + g.label(w.first[j]);
            return s + ") with h = " + g.label(w.second);
        };
        if (!out.conditions.closed_under_conjugation)
            throw Error("solution set is not closed under conjugation; witness " +
                        describe(*out.conditions.conjugation_witness));
        throw Error("solution set is not closed under twists; witness " +
                    describe(*out.conditions.twist_witness));
    }

    detail::TailCache cache;
    auto cached_similar = [&](const Hom& phi, const Hom& psi) {
        for (int h : ctx.h.members) {
            Hom conj = conjugate_hom(ctx, phi, h);
            if (detail::same_tail_impl(ctx, conj, psi, cache.core(ctx, conj))) return true;
        }
        return false;
    };

    std::vector<int> parent(homs.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (std::size_t i = 0; i < homs.size(); ++i)
        for (std::size_t j = i + 1; j < homs.size(); ++j) {
            if (find(static_cast<int>(i)) == find(static_cast<int>(j))) continue;
            if (cached_similar(homs[i], homs[j])) parent[find(static_cast<int>(j))] = find(static_cast<int>(i));
        }

    std::map<int, std::vector<Hom>> grouped;
    for (std::size_t i = 0; i < homs.size(); ++i) grouped[find(static_cast<int>(i))].push_back(homs[i]);

    for (auto& [root, members] : grouped) {
        SimilarityClass cls;
        std::sort(members.begin(), members.end());
        cls.members = std::move(members);
        cls.core_order = cache.core(ctx, cls.members.front()).order();
        for (const Hom& phi : cls.members)
            if (cache.core(ctx, phi).order() != cls.core_order)
                throw Error("core order is not constant on a similarity class");

        // Distinct tails inside the class, again via union-find.
        std::vector<int> tp(cls.members.size());
        for (std::size_t i = 0; i < tp.size(); ++i) tp[i] = static_cast<int>(i);
        std::function<int(int)> tfind = [&](int x) { return tp[x] == x ? x : tp[x] = tfind(tp[x]); };
        for (std::size_t i = 0; i < cls.members.size(); ++i)
            for (std::size_t j = i + 1; j < cls.members.size(); ++j) {
                if (tfind(static_cast<int>(i)) == tfind(static_cast<int>(j))) continue;
                if (detail::same_tail_impl(ctx, cls.members[i], cls.members[j],
                                           cache.core(ctx, cls.members[i])))
                    tp[tfind(static_cast<int>(j))] = tfind(static_cast<int>(i));
            }
        std::set<int> roots;
        for (std::size_t i = 0; i < tp.size(); ++i) roots.insert(tfind(static_cast<int>(i)));
        cls.tail_count = static_cast<int>(roots.size());
        out.classes.push_back(std::move(cls));
    }
    std::sort(out.classes.begin(), out.classes.end(),
              [](const SimilarityClass& a, const SimilarityClass& b) {
                  return a.members.front() < b.members.front();
              });
    return out;
}

}  // namespace groupeq
