#pragma once

#include "groupeq/bigint.hpp"
#include "groupeq/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace groupeq {

enum class MonOrder { degrevlex, lex };

struct Monomial {
    std::vector<unsigned> e;

    unsigned degree() const {
        unsigned d = 0;
        for (unsigned x : e) d += x;
        return d;
    }
    bool is_one() const {
        return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
};

// +1 when a > b in the order, 0 on equality, -1 otherwise.
inline int mon_cmp(const Monomial& a, const Monomial& b, MonOrder order) {
    if (order == MonOrder::lex) {
        for (std::size_t i = 0; i < a.e.size(); ++i) {
            if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
        }
        return 0;
    }
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = a.e.size(); i-- > 0;) {
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    }
    return 0;
}

inline bool mon_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

inline Monomial mon_mul(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
    return r;
}

inline Monomial mon_div(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i) {
        if (r.e[i] < b.e[i]) throw Error("monomial division is not exact");
        r.e[i] -= b.e[i];
    }
    return r;
}

inline Monomial mon_lcm(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(r.e[i], b.e[i]);
    return r;
}

struct RationalField {
    using Elem = Rat;
    static Elem zero() { return Rat(0); }
    static Elem one() { return Rat(1); }
    static bool is_zero(const Elem& x) { return x == 0; }
    static Elem add(const Elem& a, const Elem& b) { return a + b; }
    static Elem sub(const Elem& a, const Elem& b) { return a - b; }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static Elem neg(const Elem& a) { return -a; }
    static Elem div(const Elem& a, const Elem& b) {
        if (b == 0) throw Error("division by zero in QQ");
        return a / b;
    }
    static Elem from_int(long v) { return Rat(v); }
    static Elem from_rat(const Rat& v) { return v; }
    static std::string str(const Elem& v) { return to_string(v); }
    static constexpr const char* name = "QQ";
};

template <unsigned P>
struct PrimeField {
    using Elem = unsigned;
    static Elem zero() { return 0; }
    static Elem one() { return 1 % P; }
    static bool is_zero(Elem x) { return x == 0; }
    static Elem add(Elem a, Elem b) { return (a + b) % P; }
    static Elem sub(Elem a, Elem b) { return (a + P - b) % P; }
    static Elem mul(Elem a, Elem b) {
        return static_cast<Elem>((static_cast<unsigned long long>(a) * b) % P);
    }
    static Elem neg(Elem a) { return (P - a) % P; }
    static Elem inverse(Elem a) {
        if (a == 0) throw Error("division by zero in F" + std::to_string(P));
        long t = 0, nt = 1;
        long r = P, nr = a;
        while (nr != 0) {
            long q = r / nr;
            t -= q * nt;
            std::swap(t, nt);
            r -= q * nr;
            std::swap(r, nr);
        }
        return static_cast<Elem>(t < 0 ? t + P : t);
    }
    static Elem div(Elem a, Elem b) { return mul(a, inverse(b)); }
    static Elem from_int(long v) {
        long m = v % static_cast<long>(P);
        return static_cast<Elem>(m < 0 ? m + P : m);
    }
    static Elem from_rat(const Rat& v) {
        Int num = boost::multiprecision::numerator(v);
        Int den = boost::multiprecision::denominator(v);
        Elem d = static_cast<Elem>(static_cast<unsigned long>(pos_mod(den, P)));
        if (d == 0)
            throw Error("rational coefficient has denominator divisible by " + std::to_string(P));
        Elem n = static_cast<Elem>(static_cast<unsigned long>(pos_mod(num, P)));
        return div(n, d);
    }
    static std::string str(Elem v) { return std::to_string(v); }
    static constexpr const char* name = P == 2 ? "F2" : "Fp";
};

using F32003 = PrimeField<32003>;
using F2 = PrimeField<2>;

// Terms are kept strictly descending in the monomial order; no zero
// coefficients, no duplicate monomials.
template <class F>
class Polynomial {
public:
    using Coeff = typename F::Elem;
    using Term = std::pair<Monomial, Coeff>;

    Polynomial() = default;
    Polynomial(unsigned nvars, MonOrder order) : nvars_(nvars), order_(order) {}

    static Polynomial constant(unsigned nvars, MonOrder order, const Coeff& c) {
        Polynomial p(nvars, order);
        if (!F::is_zero(c)) p.terms_.push_back({Monomial{std::vector<unsigned>(nvars, 0)}, c});
        return p;
    }
    static Polynomial variable(unsigned nvars, MonOrder order, unsigned i) {
        if (i >= nvars) throw Error("variable index out of range");
        Polynomial p(nvars, order);
        Monomial m{std::vector<unsigned>(nvars, 0)};
        m.e[i] = 1;
        p.terms_.push_back({std::move(m), F::one()});
        return p;
    }
    static Polynomial from_terms(unsigned nvars, MonOrder order, std::vector<Term> raw) {
        Polynomial p(nvars, order);
        std::sort(raw.begin(), raw.end(), [order](const Term& a, const Term& b) {
            return mon_cmp(a.first, b.first, order) > 0;
        });
        for (Term& t : raw) {
            if (t.first.e.size() != nvars) throw Error("monomial arity mismatch");
            if (!p.terms_.empty() && p.terms_.back().first == t.first) {
                p.terms_.back().second = F::add(p.terms_.back().second, t.second);
                if (F::is_zero(p.terms_.back().second)) p.terms_.pop_back();
            } else if (!F::is_zero(t.second)) {
                p.terms_.push_back(std::move(t));
            }
        }
        return p;
    }

    unsigned nvars() const { return nvars_; }
    MonOrder order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Monomial& leading_monomial() const {
        if (terms_.empty()) throw Error("leading monomial of zero polynomial");
        return terms_.front().first;
    }
    const Coeff& leading_coeff() const {
        if (terms_.empty()) throw Error("leading coefficient of zero polynomial");
        return terms_.front().second;
    }
    unsigned total_degree() const {
        unsigned d = 0;
        for (const Term& t : terms_) d = std::max(d, t.first.degree());
        return d;
    }

    void check_compatible(const Polynomial& o) const {
        if (nvars_ != o.nvars_) throw Error("polynomials live in different variable counts");
        if (order_ != o.order_) throw Error("polynomials use different monomial orders");
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_compatible(b);
        std::vector<Term> raw;
        raw.reserve(a.terms_.size() * b.terms_.size());
        for (const Term& s : a.terms_)
            for (const Term& t : b.terms_)
                raw.push_back({mon_mul(s.first, t.first), F::mul(s.second, t.second)});
        return from_terms(a.nvars_, a.order_, std::move(raw));
    }

    Polynomial scaled(const Coeff& c) const {
        Polynomial p(nvars_, order_);
        if (F::is_zero(c)) return p;
        p.terms_ = terms_;
        for (Term& t : p.terms_) t.second = F::mul(t.second, c);
        return p;
    }

    // this -= c * m * g, the reduction step of normal_form.
    void sub_mult(const Coeff& c, const Monomial& m, const Polynomial& g) {
        std::vector<Term> shifted;
        shifted.reserve(g.terms_.size());
        for (const Term& t : g.terms_)
            shifted.push_back({mon_mul(t.first, m), F::mul(t.second, c)});
        Polynomial rhs(nvars_, order_);
        rhs.terms_ = std::move(shifted);
        *this = merge(*this, rhs, true);
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.nvars_ != b.nvars_ || a.order_ != b.order_ || a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (!(a.terms_[i].first == b.terms_[i].first)) return false;
            if (!F::is_zero(F::sub(a.terms_[i].second, b.terms_[i].second))) return false;
        }
        return true;
    }

private:
    unsigned nvars_ = 0;
    MonOrder order_ = MonOrder::degrevlex;
    std::vector<Term> terms_;

    static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
        a.check_compatible(b);
        Polynomial r(a.nvars_, a.order_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            int c;
            if (i == a.terms_.size())
                c = -1;
            else if (j == b.terms_.size())
                c = 1;
            else
                c = mon_cmp(a.terms_[i].first, b.terms_[j].first, a.order_);
            if (c > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (c < 0) {
                const auto& t = b.terms_[j++];
                r.terms_.push_back({t.first, subtract ? F::neg(t.second) : t.second});
            } else {
                Coeff v = subtract ? F::sub(a.terms_[i].second, b.terms_[j].second)
                                   : F::add(a.terms_[i].second, b.terms_[j].second);
                if (!F::is_zero(v)) r.terms_.push_back({a.terms_[i].first, v});
                ++i;
                ++j;
            }
        }
        return r;
    }
};

template <class F>
std::string print_poly(const Polynomial<F>& p, const std::vector<std::string>& var_names) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : p.terms()) {
        if (!s.empty()) s += " + ";
        std::string cs = F::str(c);
        bool printed = false;
        if (!m.is_one() && cs == "1") {
            // coefficient 1 elided
        } else {
            s += cs;
            printed = true;
        }
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] == 0) continue;
            if (printed) s += "*";
            s += var_names[i];
            if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
            printed = true;
        }
    }
    return s;
}

// Full normal form: every monomial of the result is reducible by no basis
// element.  Exact: p minus the result lies in the ideal of the basis, and no
// rescaling is applied.
template <class F>
Polynomial<F> normal_form(const Polynomial<F>& p, const std::vector<Polynomial<F>>& basis) {
    Polynomial<F> h = p;
    std::vector<typename Polynomial<F>::Term> out;
    while (!h.is_zero()) {
        const Polynomial<F>* reducer = nullptr;
        for (const auto& b : basis) {
            if (!b.is_zero() && mon_divides(b.leading_monomial(), h.leading_monomial())) {
                reducer = &b;
                break;
            }
        }
        if (reducer) {
            typename F::Elem c = F::div(h.leading_coeff(), reducer->leading_coeff());
            Monomial m = mon_div(h.leading_monomial(), reducer->leading_monomial());
            h.sub_mult(c, m, *reducer);
        } else {
            out.push_back(h.terms().front());
            h.sub_mult(h.leading_coeff(), h.leading_monomial(),
                       Polynomial<F>::constant(h.nvars(), h.order(), F::one()));
        }
    }
    return Polynomial<F>::from_terms(p.nvars(), p.order(), std::move(out));
}

template <class F>
Polynomial<F> spolynomial(const Polynomial<F>& f, const Polynomial<F>& g) {
    f.check_compatible(g);
    if (f.is_zero() || g.is_zero()) throw Error("s-polynomial of zero polynomial");
    Monomial l = mon_lcm(f.leading_monomial(), g.leading_monomial());
    Polynomial<F> lhs(f.nvars(), f.order());
    lhs.sub_mult(F::neg(F::div(F::one(), f.leading_coeff())), mon_div(l, f.leading_monomial()), f);
    Polynomial<F> rhs(f.nvars(), f.order());
    rhs.sub_mult(F::neg(F::div(F::one(), g.leading_coeff())), mon_div(l, g.leading_monomial()), g);
    return lhs - rhs;
}

// Make the polynomial canonical for basis storage: primitive with positive
// leading coefficient over QQ, monic over a finite field.
template <class F>
void normalize_poly(Polynomial<F>& p) {
    if (p.is_zero()) return;
    p = p.scaled(F::div(F::one(), p.leading_coeff()));
}

inline void normalize_poly(Polynomial<RationalField>& p) {
    if (p.is_zero()) return;
    Int denom_lcm = 1, numer_gcd = 0;
    for (const auto& [m, c] : p.terms())
        denom_lcm = lcm_int(denom_lcm, boost::multiprecision::denominator(c));
    for (const auto& [m, c] : p.terms())
        numer_gcd = gcd_int(numer_gcd, boost::multiprecision::numerator(c) * (denom_lcm / boost::multiprecision::denominator(c)));
    Rat scale(denom_lcm, numer_gcd);
    if (p.leading_coeff() < 0) scale = -scale;
    p = p.scaled(scale);
}

struct BuchbergerOptions {
    unsigned long long reduction_budget = 100000;  // S-polynomial reductions
};

template <class F>
struct GroebnerBasis {
    unsigned nvars = 0;
    MonOrder order = MonOrder::degrevlex;
    std::vector<Polynomial<F>> polys;  // reduced basis, ascending by leading monomial
    unsigned long long reductions = 0;
};

// Buchberger with the normal selection strategy (minimal lcm degree, ties by
// the monomial order then pair indices) and the coprime and chain criteria.
template <class F>
GroebnerBasis<F> buchberger(const std::vector<Polynomial<F>>& gens, const BuchbergerOptions& opts = {}) {
    GroebnerBasis<F> out;
    std::vector<Polynomial<F>> g;
    for (const auto& p : gens) {
        if (p.is_zero()) continue;
        if (!g.empty()) g.front().check_compatible(p);
        Polynomial<F> q = p;
        normalize_poly(q);
        g.push_back(std::move(q));
    }
    if (g.empty()) return out;
    out.nvars = g.front().nvars();
    out.order = g.front().order();
    const MonOrder ord = out.order;

    struct PairKey {
        unsigned degree;
        Monomial lcm;
        int i, j;
    };
    auto key_less = [ord](const PairKey& a, const PairKey& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        int c = mon_cmp(a.lcm, b.lcm, ord);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };
    std::set<PairKey, decltype(key_less)> pending(key_less);
    std::set<std::pair<int, int>> pending_idx;
    auto push_pair = [&](int i, int j) {
        Monomial l = mon_lcm(g[i].leading_monomial(), g[j].leading_monomial());
        pending.insert({l.degree(), l, i, j});
        pending_idx.insert({i, j});
    };
    for (int i = 0; i < static_cast<int>(g.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(g.size()); ++j) push_pair(i, j);

    while (!pending.empty()) {
        PairKey k = *pending.begin();
        pending.erase(pending.begin());
        pending_idx.erase({k.i, k.j});

        const Monomial& li = g[k.i].leading_monomial();
        const Monomial& lj = g[k.j].leading_monomial();
        if (mon_mul(li, lj) == k.lcm) continue;  // coprime leading monomials
        bool chained = false;
        for (int t = 0; t < static_cast<int>(g.size()) && !chained; ++t) {
            if (t == k.i || t == k.j) continue;
            if (!mon_divides(g[t].leading_monomial(), k.lcm)) continue;
            auto mm = std::minmax(k.i, t);
            auto nn = std::minmax(k.j, t);
            if (!pending_idx.count({mm.first, mm.second}) && !pending_idx.count({nn.first, nn.second}))
                chained = true;
        }
        if (chained) continue;

        if (++out.reductions > opts.reduction_budget)
            throw BudgetError("Buchberger exceeded its budget of " + std::to_string(opts.reduction_budget) +
                              " S-polynomial reductions; the ideal is too heavy for this configuration");
        Polynomial<F> r = normal_form(spolynomial(g[k.i], g[k.j]), g);
        if (r.is_zero()) continue;
        normalize_poly(r);
        int idx = static_cast<int>(g.size());
        g.push_back(std::move(r));
        for (int i = 0; i < idx; ++i) push_pair(i, idx);
    }

    // Minimal basis: drop elements whose leading monomial is divisible by
    // another kept one; then reduce every tail against the rest.
    std::sort(g.begin(), g.end(), [ord](const Polynomial<F>& a, const Polynomial<F>& b) {
        return mon_cmp(a.leading_monomial(), b.leading_monomial(), ord) < 0;
    });
    std::vector<Polynomial<F>> minimal;
    for (const auto& p : g) {
        bool divisible = false;
        for (const auto& q : minimal)
            if (mon_divides(q.leading_monomial(), p.leading_monomial())) {
                divisible = true;
                break;
            }
        if (!divisible) minimal.push_back(p);
    }
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial<F>> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        minimal[i] = normal_form(minimal[i], others);
        normalize_poly(minimal[i]);
    }
    out.polys = std::move(minimal);
    return out;
}

template <class F>
bool is_groebner(const GroebnerBasis<F>& gb) {
    for (std::size_t i = 0; i < gb.polys.size(); ++i)
        for (std::size_t j = i + 1; j < gb.polys.size(); ++j)
            if (!normal_form(spolynomial(gb.polys[i], gb.polys[j]), gb.polys).is_zero()) return false;
    return true;
}

// Membership of p in the ideal generated by the (Groebner) basis.
template <class F>
bool reduces_to_zero(const Polynomial<F>& p, const GroebnerBasis<F>& gb) {
    return normal_form(p, gb.polys).is_zero();
}

// Krull dimension of the quotient by the staircase criterion: the largest
// subset S of variables such that no leading monomial is supported inside S.
// nullopt means the variety is empty (the basis contains a nonzero constant).
template <class F>
std::optional<int> ideal_dimension(const GroebnerBasis<F>& gb, unsigned nvars) {
    if (nvars > 64) throw Error("dimension search supports at most 64 variables");
    for (const auto& p : gb.polys)
        if (!p.is_zero() && p.leading_monomial().is_one()) return std::nullopt;

    std::vector<std::uint64_t> masks;
    for (const auto& p : gb.polys) {
        if (p.is_zero()) continue;
        std::uint64_t m = 0;
        const Monomial& lm = p.leading_monomial();
        for (unsigned v = 0; v < nvars; ++v)
            if (lm.e[v] > 0) m |= std::uint64_t(1) << v;
        masks.push_back(m);
    }
    std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
        return std::popcount(a) < std::popcount(b);
    });
    std::vector<std::uint64_t> minimal;
    for (std::uint64_t m : masks) {
        bool redundant = false;
        for (std::uint64_t k : minimal)
            if ((k & m) == k) {
                redundant = true;
                break;
            }
        if (!redundant) minimal.push_back(m);
    }

    int best = -1;
    std::unordered_set<std::uint64_t> visited;
    std::function<void(std::uint64_t)> search = [&](std::uint64_t allowed) {
        if (std::popcount(allowed) <= best) return;
        if (visited.size() < (1u << 20) && !visited.insert(allowed).second) return;
        const std::uint64_t* blocker = nullptr;
        for (const std::uint64_t& m : minimal)
            if ((m & allowed) == m) {
                blocker = &m;
                break;
            }
        if (!blocker) {
            best = std::popcount(allowed);
            return;
        }
        std::uint64_t bits = *blocker;
        while (bits) {
            std::uint64_t low = bits & (~bits + 1);
            search(allowed & ~low);
            bits ^= low;
        }
    };
    std::uint64_t full = nvars == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << nvars) - 1);
    search(full);
    return best;
}

}  // namespace groupeq
