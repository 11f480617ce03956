#pragma once

#include "groupeq/eqlang.hpp"
#include "groupeq/errors.hpp"
#include "groupeq/fingroup.hpp"
#include "groupeq/zlinalg.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace groupeq {

// Values for the coefficient atoms, as elements of the ambient group.
struct CoefficientBinding {
    std::map<std::string, int> atom_values;
};

// Resolve declared permutation coefficients to elements of g.  Every atom the
// system uses must be declared and must name an element of g.
inline CoefficientBinding bind_coefficients(const GeqFile& file, const FiniteGroup& g) {
    CoefficientBinding b;
    for (const std::string& atom : file.system.coefficient_atoms) {
        const CoeffValue* val = nullptr;
        for (const auto& [n, v] : file.coefficients)
            if (n == atom) val = &v;
        if (!val) throw Error("coefficient @" + atom + " has no declared value");
        if (val->kind != CoeffValue::Kind::perm)
            throw Error("coefficient @" + atom + " is a matrix; a permutation is needed for finite groups");
        if (!g.has_perms())
            throw Error("group '" + g.name() + "' has no permutation labels to bind @" + atom + " against");
        auto idx = g.find_perm(val->perm);
        if (!idx)
            throw Error("coefficient @" + atom + " = " + cycle_string(val->perm) +
                        " is not an element of " + g.name());
        b.atom_values[atom] = *idx;
    }
    return b;
}

struct SolveOptions {
    unsigned long long eval_budget = 100000000ULL;  // word evaluations
};

struct SolutionSet {
    std::vector<std::vector<int>> solutions;  // tuples aligned with the unknowns
    unsigned long long count = 0;
    unsigned long long assignments_scanned = 0;
};

namespace detail {

// Equations compiled against a fixed group and binding: each item is either a
// constant element or a power-table lookup of one unknown.
struct CompiledItem {
    int slot;   // unknown index, or -1 for a constant
    int index;  // power-table id, or the constant element
};

struct CompiledSystem {
    std::vector<std::vector<CompiledItem>> equations;
    std::vector<std::vector<int>> pow_tables;
};

inline CompiledSystem compile_system(const EquationSystem& sys, const FiniteGroup& g,
                                     const CoefficientBinding& binding) {
    CompiledSystem out;
    std::map<std::string, int> unknown_index;
    for (std::size_t j = 0; j < sys.unknowns.size(); ++j) unknown_index[sys.unknowns[j]] = static_cast<int>(j);
    std::map<Int, int> table_of_exp;
    for (const Word& w : sys.equations) {
        std::vector<CompiledItem> items;
        for (const Letter& l : w.letters()) {
            if (l.kind == LetterKind::coefficient) {
                auto it = binding.atom_values.find(l.symbol);
                if (it == binding.atom_values.end())
                    throw Error("coefficient @" + l.symbol + " has no bound value");
                items.push_back({-1, g.pow(it->second, l.exponent)});
            } else {
                auto [it, fresh] = table_of_exp.emplace(l.exponent, static_cast<int>(out.pow_tables.size()));
                if (fresh) {
                    std::vector<int> table(g.order());
                    for (int x = 0; x < g.order(); ++x) table[x] = g.pow(x, l.exponent);
                    out.pow_tables.push_back(std::move(table));
                }
                items.push_back({unknown_index.at(l.symbol), it->second});
            }
        }
        out.equations.push_back(std::move(items));
    }
    return out;
}

inline bool satisfied(const CompiledSystem& cs, const FiniteGroup& g, const std::vector<int>& assign) {
    for (const auto& eq : cs.equations) {
        int acc = g.identity();
        for (const auto& item : eq)
            acc = g.mul(acc, item.slot < 0 ? item.index : cs.pow_tables[item.index][assign[item.slot]]);
        if (acc != g.identity()) return false;
    }
    return true;
}

}  // namespace detail

// Exhaustive enumeration over all |G|^m assignments in lexicographic order.
// The budget is checked up front against the worst case (every equation
// evaluated on every assignment).
inline SolutionSet enumerate_solutions(const EquationSystem& sys, const FiniteGroup& g,
                                       const CoefficientBinding& binding, const SolveOptions& opts = {}) {
    const int m = static_cast<int>(sys.unknowns.size());
    Int worst = 1;
    for (int j = 0; j < m; ++j) worst *= g.order();
    Int evals = worst * static_cast<long>(sys.equations.size());
    if (evals > Int(opts.eval_budget))
        throw BudgetError("enumeration needs " + evals.str() + " word evaluations; budget is " +
                          std::to_string(opts.eval_budget) + " (raise --budget to proceed)");

    auto cs = detail::compile_system(sys, g, binding);
    SolutionSet out;
    std::vector<int> assign(m, 0);
    for (;;) {
        ++out.assignments_scanned;
        if (detail::satisfied(cs, g, assign)) out.solutions.push_back(assign);
        int pos = m - 1;
        while (pos >= 0 && assign[pos] == g.order() - 1) assign[pos--] = 0;
        if (pos < 0) break;
        ++assign[pos];
    }
    out.count = out.solutions.size();
    return out;
}

struct DivisibilityVerdict {
    std::string theorem;  // Solomon, GRV, KM, KM17-epi
    bool applicable = false;
    std::string reason;
    unsigned long long divisor = 1;
    bool divides = false;
};

inline std::vector<int> bound_atom_values(const EquationSystem& sys, const CoefficientBinding& binding) {
    std::vector<int> vals;
    for (const std::string& a : sys.coefficient_atoms) vals.push_back(binding.atom_values.at(a));
    return vals;
}

// The three count-divisibility statements, evaluated against a known count.
inline std::vector<DivisibilityVerdict> divisibility_verdicts(const EquationSystem& sys,
                                                              const FiniteGroup& g,
                                                              const CoefficientBinding& binding,
                                                              unsigned long long count) {
    const int n = static_cast<int>(sys.equations.size());
    const int m = static_cast<int>(sys.unknowns.size());
    const bool coeff_free = sys.coefficient_atoms.empty();
    const int r = rank(exponent_matrix(sys));

    std::vector<DivisibilityVerdict> out;
    auto finish = [&](DivisibilityVerdict v) {
        if (v.applicable) v.divides = count % v.divisor == 0;
        out.push_back(std::move(v));
    };

    {
        DivisibilityVerdict v{"Solomon"};
        v.divisor = static_cast<unsigned long long>(g.order());
        if (!coeff_free)
            v.reason = "system has coefficient atoms";
        else if (n >= m)
            v.reason = "equations (" + std::to_string(n) + ") >= unknowns (" + std::to_string(m) + ")";
        else {
            v.applicable = true;
            v.reason = "coefficient-free with equations (" + std::to_string(n) + ") < unknowns (" +
                       std::to_string(m) + ")";
        }
        finish(v);
    }
    {
        DivisibilityVerdict v{"GRV"};
        v.divisor = static_cast<unsigned long long>(g.order());
        if (!coeff_free)
            v.reason = "system has coefficient atoms";
        else if (r >= m)
            v.reason = "exponent matrix rank (" + std::to_string(r) + ") >= unknowns (" + std::to_string(m) + ")";
        else {
            v.applicable = true;
            v.reason = "coefficient-free with exponent matrix rank (" + std::to_string(r) + ") < unknowns (" +
                       std::to_string(m) + ")";
        }
        finish(v);
    }
    {
        DivisibilityVerdict v{"KM"};
        v.divisor = static_cast<unsigned long long>(centralizer(g, bound_atom_values(sys, binding)).order());
        if (r >= m)
            v.reason = "exponent matrix rank (" + std::to_string(r) + ") >= unknowns (" + std::to_string(m) + ")";
        else {
            v.applicable = true;
            v.reason = "exponent matrix rank (" + std::to_string(r) + ") < unknowns (" + std::to_string(m) +
                       "); divisor is the order of the centralizer of the coefficients";
        }
        finish(v);
    }
    return out;
}

struct CountReport {
    SolutionSet set;
    std::vector<DivisibilityVerdict> verdicts;
    int rank = 0;
    bool coefficient_free = true;
};

inline CountReport count_and_verdicts(const EquationSystem& sys, const FiniteGroup& g,
                                      const CoefficientBinding& binding, const SolveOptions& opts = {}) {
    CountReport r;
    r.set = enumerate_solutions(sys, g, binding, opts);
    r.verdicts = divisibility_verdicts(sys, g, binding, r.set.count);
    r.rank = rank(exponent_matrix(sys));
    r.coefficient_free = sys.coefficient_atoms.empty();
    return r;
}

struct EpiResult {
    unsigned long long count = 0;
    unsigned long long tuples_scanned = 0;
    DivisibilityVerdict verdict;
};

// Number of surjections F_r -> G by brute force over generating r-tuples.
inline EpiResult epimorphism_count(const FiniteGroup& g, int r, const SolveOptions& opts = {}) {
    if (r < 1) throw Error("epimorphism counting needs rank >= 1");
    Int tuples = 1;
    for (int i = 0; i < r; ++i) tuples *= g.order();
    if (tuples > Int(opts.eval_budget))
        throw BudgetError("epimorphism count needs " + tuples.str() + " tuples; budget is " +
                          std::to_string(opts.eval_budget) + " (raise --budget to proceed)");

    EpiResult out;
    std::vector<int> tup(r, 0);
    for (;;) {
        ++out.tuples_scanned;
        if (closure(g, tup).order() == g.order()) ++out.count;
        int pos = r - 1;
        while (pos >= 0 && tup[pos] == g.order() - 1) tup[pos--] = 0;
        if (pos < 0) break;
        ++tup[pos];
    }
    out.verdict.theorem = "KM17-epi";
    out.verdict.applicable = true;
    out.verdict.divisor = static_cast<unsigned long long>(commutator_subgroup(g).order());
    out.verdict.reason = "epimorphism counts are divisible by the commutator subgroup order";
    out.verdict.divides = out.count % out.verdict.divisor == 0;
    return out;
}

}  // namespace groupeq
