#pragma once

#include "groupeq/eqlang.hpp"
#include "groupeq/errors.hpp"
#include "groupeq/poly.hpp"
#include "groupeq/zlinalg.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace groupeq {

enum class FactorKind { sl2, gl2, torus1 };

inline int factor_dim(FactorKind k) { return k == FactorKind::sl2 ? 3 : k == FactorKind::gl2 ? 4 : 1; }
inline int factor_main_vars(FactorKind k) {
    return k == FactorKind::sl2 ? 4 : k == FactorKind::gl2 ? 5 : 2;
}
inline int factor_aux_vars(FactorKind k) { return k == FactorKind::torus1 ? 1 : 4; }
inline int factor_mat_size(FactorKind k) { return k == FactorKind::torus1 ? 1 : 2; }

// Flattened product of matrix-group factors.  SL2 is cut out by ad - bc = 1,
// GL2 carries an inverse-of-determinant variable e with e(ad - bc) = 1, and a
// torus factor is (t, s) with ts = 1.
struct VarietyModel {
    std::string spec;
    std::vector<FactorKind> factors;

    int group_dim() const {
        int d = 0;
        for (FactorKind k : factors) d += factor_dim(k);
        return d;
    }
    bool pure_torus() const {
        return std::all_of(factors.begin(), factors.end(),
                           [](FactorKind k) { return k == FactorKind::torus1; });
    }
    bool single_matrix_factor() const {
        return factors.size() == 1 && factors[0] != FactorKind::torus1;
    }
};

namespace detail {

inline std::vector<std::string> split_model_args(const std::string& s) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

inline std::string trim_spaces(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

inline void parse_model_into(const std::string& spec, std::vector<FactorKind>& out) {
    std::string t = trim_spaces(spec);
    if (t == "SL2") {
        out.push_back(FactorKind::sl2);
        return;
    }
    if (t == "GL2") {
        out.push_back(FactorKind::gl2);
        return;
    }
    if (t.rfind("torus(", 0) == 0 && t.back() == ')') {
        std::string inner = trim_spaces(t.substr(6, t.size() - 7));
        if (inner.empty() || !std::all_of(inner.begin(), inner.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c));
            }))
            throw Error("torus(k) needs a positive integer rank");
        int k = std::stoi(inner);
        if (k < 1) throw Error("torus(k) needs k >= 1");
        for (int i = 0; i < k; ++i) out.push_back(FactorKind::torus1);
        return;
    }
    if (t.rfind("product(", 0) == 0 && t.back() == ')') {
        auto parts = split_model_args(t.substr(8, t.size() - 9));
        if (parts.size() < 2) throw Error("product(...) needs at least two factors");
        for (const std::string& p : parts) parse_model_into(p, out);
        return;
    }
    throw Error("unrecognized model '" + t + "' (expected SL2, GL2, torus(k), or product(...))");
}

// Variable-name suffixes for factor i of the model.
inline std::vector<std::string> factor_suffixes(const VarietyModel& model, int i) {
    FactorKind k = model.factors[i];
    std::vector<std::string> base;
    if (k == FactorKind::sl2) base = {"a", "b", "c", "d"};
    else if (k == FactorKind::gl2) base = {"a", "b", "c", "d", "e"};
    else base = {"t", "s"};
    if (model.factors.size() == 1 && k != FactorKind::torus1) return base;
    if (model.pure_torus())
        return {"t" + std::to_string(i + 1), "s" + std::to_string(i + 1)};
    for (std::string& s : base) s = "f" + std::to_string(i + 1) + "_" + s;
    return base;
}

}  // namespace detail

inline VarietyModel parse_model(const std::string& spec);  // defined after the engine; self-checks dim

// Rational matrix values for the coefficient atoms (2x2, single-factor
// SL2/GL2 models only).
struct MatrixBinding {
    std::map<std::string, std::vector<std::vector<Rat>>> atoms;
};

inline Rat det2(const std::vector<std::vector<Rat>>& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

inline MatrixBinding bind_matrix_coefficients(const GeqFile& file, const VarietyModel& model) {
    MatrixBinding b;
    if (file.system.coefficient_atoms.empty()) return b;
    if (!model.single_matrix_factor())
        throw Error("coefficient atoms are supported for single-factor SL2/GL2 models only");
    for (const std::string& atom : file.system.coefficient_atoms) {
        const CoeffValue* val = nullptr;
        for (const auto& [n, v] : file.coefficients)
            if (n == atom) val = &v;
        if (!val) throw Error("coefficient @" + atom + " has no declared value");
        if (val->kind != CoeffValue::Kind::matrix)
            throw Error("coefficient @" + atom + " must be a 2x2 rational matrix for this model");
        if (val->matrix.size() != 2)
            throw Error("coefficient @" + atom + " must be 2x2");
        Rat d = det2(val->matrix);
        if (model.factors[0] == FactorKind::sl2 && d != 1)
            throw Error("coefficient @" + atom + " has determinant " + to_string(d) + "; SL2 needs 1");
        if (d == 0) throw Error("coefficient @" + atom + " is singular");
        b.atoms[atom] = val->matrix;
    }
    return b;
}

enum class Encoding { automatic, direct, slp };

struct DimOptions {
    Encoding encoding = Encoding::automatic;
    bool crosscheck = true;  // repeat the computation over F_32003
    int direct_budget = 8;   // unit letters per equation for the direct encoding
    BuchbergerOptions buch{};
};

namespace detail {

struct UnitLetter {
    bool is_atom = false;
    int slot = -1;        // unknown index
    std::string atom;     // atom symbol
    int sign = 1;
};

inline std::vector<UnitLetter> expand_units(const EquationSystem& sys, const Word& w) {
    std::map<std::string, int> unknown_index;
    for (std::size_t j = 0; j < sys.unknowns.size(); ++j) unknown_index[sys.unknowns[j]] = static_cast<int>(j);
    std::vector<UnitLetter> out;
    for (const Letter& l : w.letters()) {
        Int reps = abs(l.exponent);
        if (reps > 1000000) throw Error("word too long to encode");
        int sign = l.exponent > 0 ? 1 : -1;
        for (Int r = 0; r < reps; ++r) {
            UnitLetter u;
            u.sign = sign;
            if (l.kind == LetterKind::coefficient)
                u.is_atom = true, u.atom = l.symbol;
            else
                u.slot = unknown_index.at(l.symbol);
            out.push_back(u);
        }
    }
    return out;
}

// Square polynomial matrix of size 1 or 2.
template <class F>
struct PMat {
    int n = 2;
    std::vector<Polynomial<F>> m;

    static PMat identity(int n, unsigned nvars, MonOrder ord) {
        PMat r;
        r.n = n;
        r.m.assign(static_cast<std::size_t>(n) * n, Polynomial<F>(nvars, ord));
        for (int i = 0; i < n; ++i)
            r.m[static_cast<std::size_t>(i) * n + i] = Polynomial<F>::constant(nvars, ord, F::one());
        return r;
    }
    Polynomial<F>& at(int i, int j) { return m[static_cast<std::size_t>(i) * n + j]; }
    const Polynomial<F>& at(int i, int j) const { return m[static_cast<std::size_t>(i) * n + j]; }
};

template <class F>
PMat<F> pmat_mul(const PMat<F>& a, const PMat<F>& b) {
    PMat<F> r;
    r.n = a.n;
    r.m.assign(a.m.size(), Polynomial<F>(a.m[0].nvars(), a.m[0].order()));
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            Polynomial<F> acc(a.m[0].nvars(), a.m[0].order());
            for (int k = 0; k < a.n; ++k) acc = acc + a.at(i, k) * b.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

template <class F>
void append_entry_diff(std::vector<Polynomial<F>>& gens, const PMat<F>& x, const PMat<F>& y) {
    for (std::size_t i = 0; i < x.m.size(); ++i) {
        Polynomial<F> d = x.m[i] - y.m[i];
        if (!d.is_zero()) gens.push_back(std::move(d));
    }
}

inline std::vector<std::vector<Rat>> rat_mat_mul(const std::vector<std::vector<Rat>>& a,
                                                 const std::vector<std::vector<Rat>>& b) {
    std::vector<std::vector<Rat>> r(2, std::vector<Rat>(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

inline std::vector<std::vector<Rat>> rat_mat_inv(const std::vector<std::vector<Rat>>& m) {
    Rat d = det2(m);
    if (d == 0) throw Error("coefficient matrix is singular");
    return {{m[1][1] / d, -m[0][1] / d}, {-m[1][0] / d, m[0][0] / d}};
}

// The whole encoding state for one field.
template <class F>
struct Encoder {
    const EquationSystem& sys;
    const VarietyModel& model;
    const MatrixBinding& binding;
    MonOrder ord = MonOrder::degrevlex;

    unsigned nvars = 0;
    std::vector<std::string> names;
    std::vector<std::vector<int>> main_offset;  // [unknown][factor]
    std::vector<std::vector<int>> aux_offset;   // [aux block][factor]
    std::vector<Polynomial<F>> gens;

    Encoder(const EquationSystem& s, const VarietyModel& mo, const MatrixBinding& bi)
        : sys(s), model(mo), binding(bi) {}

    Polynomial<F> var(int idx) const { return Polynomial<F>::variable(nvars, ord, static_cast<unsigned>(idx)); }
    Polynomial<F> cons(const Rat& v) const { return Polynomial<F>::constant(nvars, ord, F::from_rat(v)); }

    void allocate(int aux_blocks) {
        main_offset.assign(sys.unknowns.size(), {});
        for (std::size_t j = 0; j < sys.unknowns.size(); ++j)
            for (std::size_t i = 0; i < model.factors.size(); ++i) {
                main_offset[j].push_back(static_cast<int>(names.size()));
                for (const std::string& sfx : factor_suffixes(model, static_cast<int>(i)))
                    names.push_back(sys.unknowns[j] + "_" + sfx);
            }
        aux_offset.assign(aux_blocks, {});
        for (int k = 0; k < aux_blocks; ++k)
            for (std::size_t i = 0; i < model.factors.size(); ++i) {
                aux_offset[k].push_back(static_cast<int>(names.size()));
                auto sfx = factor_suffixes(model, static_cast<int>(i));
                sfx.resize(factor_aux_vars(model.factors[i]));  // drop e for GL2, s for torus
                for (const std::string& s : sfx) names.push_back("u" + std::to_string(k + 1) + "_" + s);
            }
        nvars = static_cast<unsigned>(names.size());
        if (nvars > 64)
            throw Error("encoding needs " + std::to_string(nvars) +
                        " variables; at most 64 are supported (shorten the system)");
    }

    void group_constraints() {
        for (std::size_t j = 0; j < sys.unknowns.size(); ++j)
            for (std::size_t i = 0; i < model.factors.size(); ++i) {
                int o = main_offset[j][i];
                Polynomial<F> one = cons(1);
                switch (model.factors[i]) {
                    case FactorKind::sl2:
                        gens.push_back(var(o) * var(o + 3) - var(o + 1) * var(o + 2) - one);
                        break;
                    case FactorKind::gl2:
                        gens.push_back(var(o + 4) * (var(o) * var(o + 3) - var(o + 1) * var(o + 2)) - one);
                        break;
                    case FactorKind::torus1:
                        gens.push_back(var(o) * var(o + 1) - one);
                        break;
                }
            }
    }

    // Matrix of one unknown block: the group element or its inverse.
    PMat<F> unknown_mat(int slot, int factor, bool inverse) const {
        int o = main_offset[slot][factor];
        FactorKind k = model.factors[factor];
        PMat<F> r;
        r.n = factor_mat_size(k);
        if (k == FactorKind::torus1) {
            r.m = {var(inverse ? o + 1 : o)};
            return r;
        }
        if (!inverse) {
            r.m = {var(o), var(o + 1), var(o + 2), var(o + 3)};
            return r;
        }
        if (k == FactorKind::sl2) {
            r.m = {var(o + 3), cons(-1) * var(o + 1), cons(-1) * var(o + 2), var(o)};
            return r;
        }
        Polynomial<F> e = var(o + 4);
        r.m = {e * var(o + 3), cons(-1) * e * var(o + 1), cons(-1) * e * var(o + 2), e * var(o)};
        return r;
    }

    PMat<F> aux_mat(int block, int factor) const {
        int o = aux_offset[block][factor];
        FactorKind k = model.factors[factor];
        PMat<F> r;
        r.n = factor_mat_size(k);
        if (k == FactorKind::torus1) {
            r.m = {var(o)};
            return r;
        }
        r.m = {var(o), var(o + 1), var(o + 2), var(o + 3)};
        return r;
    }

    PMat<F> const_mat(const std::vector<std::vector<Rat>>& m) const {
        PMat<F> r;
        r.n = 2;
        r.m = {cons(m[0][0]), cons(m[0][1]), cons(m[1][0]), cons(m[1][1])};
        return r;
    }

    // Letter matrix for a unit: atoms become constants (sign folded in).
    PMat<F> unit_mat(const UnitLetter& u, int factor) const {
        if (u.is_atom) {
            auto m = binding.atoms.at(u.atom);
            if (u.sign < 0) m = rat_mat_inv(m);
            return const_mat(m);
        }
        return unknown_mat(u.slot, factor, u.sign < 0);
    }

    // Positive-form matrix used by the multiply-through rules: for a negative
    // unknown letter this is the letter's base matrix; atoms stay constants.
    PMat<F> unit_pos_mat(const UnitLetter& u, int factor) const {
        if (u.is_atom) return unit_mat(u, factor);
        return unknown_mat(u.slot, factor, false);
    }

    void encode_direct(const std::vector<UnitLetter>& units) {
        if (units.empty()) return;
        // Longest cyclic run of negative unknown letters goes up front as N.
        int len = static_cast<int>(units.size());
        auto negative = [&](int idx) { return !units[idx].is_atom && units[idx].sign < 0; };
        int best_start = 0, best_len = 0;
        for (int s = 0; s < len; ++s) {
            if (!negative(s) || negative((s + len - 1) % len)) continue;  // runs start after a non-negative
            int l = 0;
            while (l < len && negative((s + l) % len)) ++l;
            if (l > best_len) {
                best_len = l;
                best_start = s;
            }
        }
        bool all_negative = best_len == 0 && negative(0);
        if (all_negative) {
            best_start = 0;
            best_len = len;
        }
        std::vector<UnitLetter> rotated;
        for (int i = 0; i < len; ++i) rotated.push_back(units[(best_start + i) % len]);
        for (std::size_t i = 0; i < model.factors.size(); ++i) {
            int fi = static_cast<int>(i);
            int msize = factor_mat_size(model.factors[i]);
            PMat<F> mp = PMat<F>::identity(msize, nvars, ord);
            for (int k = best_len; k < len; ++k) mp = pmat_mul(mp, unit_mat(rotated[k], fi));
            PMat<F> mn = PMat<F>::identity(msize, nvars, ord);
            for (int k = best_len - 1; k >= 0; --k) {
                UnitLetter inv = rotated[k];
                inv.sign = -inv.sign;
                mn = pmat_mul(mn, unit_mat(inv, fi));
            }
            append_entry_diff(gens, mp, mn);
        }
    }

    // Straight-line chain: U_1 = L_1 L_2, U_k = U_{k-1} L_{k+1}, U_{l-1} = I,
    // with negative unknown letters multiplied through to keep degrees at 2.
    void encode_slp(const std::vector<UnitLetter>& units, int first_block) {
        int len = static_cast<int>(units.size());
        if (len == 0) return;
        for (std::size_t i = 0; i < model.factors.size(); ++i) {
            int fi = static_cast<int>(i);
            int msize = factor_mat_size(model.factors[i]);
            PMat<F> ident = PMat<F>::identity(msize, nvars, ord);
            if (len == 1) {
                append_entry_diff(gens, unit_pos_mat(units[0], fi), ident);
                continue;
            }
            bool neg1 = !units[0].is_atom && units[0].sign < 0;
            bool neg2 = !units[1].is_atom && units[1].sign < 0;
            PMat<F> u1 = aux_mat(first_block, fi);
            if (neg1)  // L1 U1 = L2^(sign), both degree <= 2
                append_entry_diff(gens, pmat_mul(unit_pos_mat(units[0], fi), u1), unit_mat(units[1], fi));
            else if (neg2)  // U1 L2 = L1
                append_entry_diff(gens, pmat_mul(u1, unit_pos_mat(units[1], fi)), unit_mat(units[0], fi));
            else
                append_entry_diff(gens, u1, pmat_mul(unit_mat(units[0], fi), unit_mat(units[1], fi)));
            for (int k = 2; k < len; ++k) {
                PMat<F> prev = aux_mat(first_block + k - 2, fi);
                PMat<F> cur = aux_mat(first_block + k - 1, fi);
                bool neg = !units[k].is_atom && units[k].sign < 0;
                if (!neg)
                    append_entry_diff(gens, cur, pmat_mul(prev, unit_mat(units[k], fi)));
                else
                    append_entry_diff(gens, pmat_mul(cur, unit_pos_mat(units[k], fi)), prev);
            }
            append_entry_diff(gens, aux_mat(first_block + len - 2, fi), ident);
        }
    }
};

}  // namespace detail

struct IdealDescription {
    unsigned nvars = 0;
    std::vector<std::string> var_names;
    Encoding encoding = Encoding::direct;
};

template <class F>
struct BuiltIdeal {
    IdealDescription desc;
    std::vector<Polynomial<F>> gens;
};

// Build the solution-variety ideal for the system over the model.
template <class F>
BuiltIdeal<F> build_ideal(const EquationSystem& sys, const VarietyModel& model,
                          const MatrixBinding& binding, Encoding encoding, int direct_budget = 8) {
    std::vector<std::vector<detail::UnitLetter>> units;
    for (const Word& w : sys.equations) units.push_back(detail::expand_units(sys, w));

    Encoding enc = encoding;
    if (enc == Encoding::automatic) {
        enc = Encoding::direct;
        for (const auto& u : units)
            if (static_cast<int>(u.size()) > direct_budget) enc = Encoding::slp;
    }
    if (enc == Encoding::direct) {
        for (const auto& u : units)
            if (static_cast<int>(u.size()) > direct_budget)
                throw Error("equation has length " + std::to_string(u.size()) +
                            " which exceeds the direct encoding budget of " +
                            std::to_string(direct_budget) + "; use the slp encoding");
    }

    int aux_blocks = 0;
    std::vector<int> first_block;
    for (const auto& u : units) {
        first_block.push_back(aux_blocks);
        if (enc == Encoding::slp && u.size() >= 2) aux_blocks += static_cast<int>(u.size()) - 1;
    }

    detail::Encoder<F> enc_state(sys, model, binding);
    enc_state.allocate(aux_blocks);
    enc_state.group_constraints();
    for (std::size_t i = 0; i < units.size(); ++i) {
        if (enc == Encoding::direct)
            enc_state.encode_direct(units[i]);
        else
            enc_state.encode_slp(units[i], first_block[i]);
    }

    BuiltIdeal<F> out;
    out.desc.nvars = enc_state.nvars;
    out.desc.var_names = std::move(enc_state.names);
    out.desc.encoding = enc;
    out.gens = std::move(enc_state.gens);
    return out;
}

struct DimResult {
    std::optional<int> dimension;  // nullopt: the variety is empty
    Encoding encoding_used = Encoding::direct;
    unsigned nvars = 0;
    unsigned long long reductions = 0;
    bool crosscheck_ran = false;
    bool crosscheck_agrees = true;
    std::optional<int> dimension_modp;
};

// Exact dimension over QQ with an optional independent pass over F_32003.
// A disagreement is reported in the result, never silently dropped.
inline DimResult solution_dimension(const EquationSystem& sys, const VarietyModel& model,
                                    const MatrixBinding& binding, const DimOptions& opts = {}) {
    DimResult out;
    auto built = build_ideal<RationalField>(sys, model, binding, opts.encoding, opts.direct_budget);
    auto gb = buchberger(built.gens, opts.buch);
    out.dimension = ideal_dimension(gb, built.desc.nvars);
    out.encoding_used = built.desc.encoding;
    out.nvars = built.desc.nvars;
    out.reductions = gb.reductions;
    if (opts.crosscheck) {
        auto built_p = build_ideal<F32003>(sys, model, binding, opts.encoding, opts.direct_budget);
        auto gb_p = buchberger(built_p.gens, opts.buch);
        out.dimension_modp = ideal_dimension(gb_p, built_p.desc.nvars);
        out.crosscheck_ran = true;
        out.crosscheck_agrees = out.dimension_modp == out.dimension;
    }
    return out;
}

// Dimension of the centralizer of the given matrices inside the model group.
inline int centralizer_dimension(const VarietyModel& model,
                                 const std::vector<std::vector<std::vector<Rat>>>& mats,
                                 const BuchbergerOptions& buch = {}) {
    if (!mats.empty() && !model.single_matrix_factor())
        throw Error("matrix centralizers need a single-factor SL2/GL2 model");
    EquationSystem sys;
    sys.unknowns = {"x"};
    MatrixBinding binding;
    detail::Encoder<RationalField> enc(sys, model, binding);
    enc.allocate(0);
    enc.group_constraints();
    for (const auto& c : mats) {
        auto x = enc.unknown_mat(0, 0, false);
        auto cm = enc.const_mat(c);
        detail::append_entry_diff(enc.gens, detail::pmat_mul(x, cm), detail::pmat_mul(cm, x));
    }
    auto gb = buchberger(enc.gens, buch);
    auto dim = ideal_dimension(gb, enc.nvars);
    if (!dim) throw Error("centralizer variety came out empty; encoding bug");
    return *dim;
}

inline VarietyModel parse_model(const std::string& spec) {
    VarietyModel m;
    m.spec = detail::trim_spaces(spec);
    detail::parse_model_into(spec, m.factors);
    // Self-check: the group itself must come out at its known dimension.
    int d = centralizer_dimension(m, {});
    if (d != m.group_dim())
        throw Error("model self-check failed: engine reports dim " + std::to_string(d) +
                    ", expected " + std::to_string(m.group_dim()));
    return m;
}

struct TheoremVerdicts {
    DimResult dim;
    int rank = 0;
    int equations = 0;
    int unknowns = 0;
    bool coefficient_free = true;

    int thm0_bound = 0;  // (m - n) dim G, unconditionally
    bool thm0_passed = true;
    bool thm1_applicable = false;  // rank < m
    int thm1_bound = 0;            // dim of the coefficient centralizer
    bool thm1_passed = true;
    bool corollary_applicable = false;  // coefficient-free and rank < m
    int corollary_bound = 0;            // dim G
    bool corollary_passed = true;

    bool all_passed = true;
};

inline TheoremVerdicts theorem_verdicts(const EquationSystem& sys, const VarietyModel& model,
                                        const MatrixBinding& binding, const DimOptions& opts = {}) {
    TheoremVerdicts v;
    v.dim = solution_dimension(sys, model, binding, opts);
    v.equations = static_cast<int>(sys.equations.size());
    v.unknowns = static_cast<int>(sys.unknowns.size());
    v.rank = rank(exponent_matrix(sys));
    v.coefficient_free = sys.coefficient_atoms.empty();

    bool empty = !v.dim.dimension.has_value();
    v.thm0_bound = (v.unknowns - v.equations) * model.group_dim();
    v.thm0_passed = empty || *v.dim.dimension >= v.thm0_bound;

    v.thm1_applicable = v.rank < v.unknowns;
    if (v.thm1_applicable) {
        std::vector<std::vector<std::vector<Rat>>> mats;
        for (const std::string& a : sys.coefficient_atoms) mats.push_back(binding.atoms.at(a));
        v.thm1_bound = centralizer_dimension(model, mats, opts.buch);
        v.thm1_passed = empty || *v.dim.dimension >= v.thm1_bound;
    }

    v.corollary_applicable = v.coefficient_free && v.rank < v.unknowns;
    if (v.corollary_applicable) {
        v.corollary_bound = model.group_dim();
        v.corollary_passed = empty || *v.dim.dimension >= v.corollary_bound;
    }

    v.all_passed = v.thm0_passed && (!v.thm1_applicable || v.thm1_passed) &&
                   (!v.corollary_applicable || v.corollary_passed);
    return v;
}

}  // namespace groupeq
