#pragma once

#include "groupeq/bigint.hpp"
#include "groupeq/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace groupeq {

// Permutations are one-line vectors over 0-based points.  Composition is
// left to right: (p * q)(i) = q(p(i)).
using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

inline Perm perm_pad(Perm p, int n) {
    int old = static_cast<int>(p.size());
    p.resize(n);
    for (int i = old; i < n; ++i) p[i] = i;
    return p;
}

inline Perm perm_compose(const Perm& p, const Perm& q) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
    return r;
}

inline Perm perm_inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
    return r;
}

// Trailing fixed points are irrelevant; trim to compare across degrees.
inline Perm perm_trim(Perm p) {
    while (!p.empty() && p.back() == static_cast<int>(p.size()) - 1) p.pop_back();
    return p;
}

inline std::string cycle_string(const Perm& p) {
    std::string s;
    std::vector<bool> done(p.size(), false);
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
        if (done[i] || p[i] == i) continue;
        s += "(";
        int q = i;
        bool first = true;
        do {
            if (!first) s += ' ';
            first = false;
            s += std::to_string(q + 1);
            done[q] = true;
            q = p[q];
        } while (q != i);
        s += ")";
    }
    return s.empty() ? "id" : s;
}

// Cycle notation with 1-based points, e.g. "(1 2 3)(4 5)"; "id" or "()" is
// the identity.  Commas inside a cycle are tolerated.
inline Perm parse_cycles(const std::string& text) {
    std::vector<std::vector<int>> cycles;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
            ++i;
    };
    skip();
    if (text.substr(i, 2) == "id") {
        i += 2;
        skip();
        if (i != text.size()) throw Error("trailing text after 'id' in permutation");
        return {};
    }
    while (i < text.size()) {
        if (text[i] != '(') throw Error("expected '(' in permutation '" + text + "'");
        ++i;
        std::vector<int> cyc;
        skip();
        while (i < text.size() && text[i] != ')') {
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw Error("expected point in permutation '" + text + "'");
            int v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                v = v * 10 + (text[i++] - '0');
            if (v < 1) throw Error("permutation points are 1-based");
            cyc.push_back(v - 1);
            skip();
        }
        if (i == text.size()) throw Error("unterminated cycle in permutation '" + text + "'");
        ++i;
        cycles.push_back(std::move(cyc));
        skip();
    }
    int degree = 0;
    for (const auto& c : cycles)
        for (int v : c) degree = std::max(degree, v + 1);
    Perm p = perm_identity(degree);
    std::vector<bool> used(degree, false);
    for (const auto& c : cycles)
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (used[c[k]])
                throw Error("point " + std::to_string(c[k] + 1) + " appears twice in permutation");
            used[c[k]] = true;
            p[c[k]] = c[(k + 1) % c.size()];
        }
    return perm_trim(p);
}

struct BuildOptions {
    int size_cap = 10000;
    unsigned seed = 0;  // for the sampled associativity check on large tables
};

// Finite group as a validated multiplication table.  Element labels and, when
// the group was built from permutations, the permutations themselves ride
// along for printing and coefficient binding.
class FiniteGroup {
public:
    using Elem = int;

    int order() const { return n_; }
    int identity() const { return id_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int element_order(int a) const { return elem_order_[a]; }
    const std::string& label(int a) const { return labels_[a]; }
    const std::string& name() const { return name_; }
    bool has_perms() const { return !perms_.empty(); }
    const Perm& perm(int a) const { return perms_[a]; }
    int degree() const { return degree_; }

    int conjugate(int g, int by) const { return mul(inv(by), mul(g, by)); }
    int commutator(int g, int h) const { return mul(mul(inv(g), inv(h)), mul(g, h)); }

    int pow(int g, const Int& k) const {
        int ord = elem_order_[g];
        long e = static_cast<long>(pos_mod(k, ord));
        int acc = id_, base = g;
        while (e > 0) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    std::optional<int> find_perm(const Perm& p) const {
        Perm key = perm_trim(p);
        auto it = perm_index_.find(key);
        if (it == perm_index_.end()) return std::nullopt;
        return it->second;
    }

    static FiniteGroup from_table(std::vector<int> table, int n, std::vector<std::string> labels,
                                  std::vector<Perm> perms, std::string name, const BuildOptions& opts) {
        if (n < 1) throw Error("group order must be positive");
        if (n > opts.size_cap)
            throw Error("group order " + std::to_string(n) + " exceeds size cap " +
                        std::to_string(opts.size_cap));
        if (static_cast<int>(table.size()) != n * n) throw Error("multiplication table has wrong size");
        for (int v : table)
            if (v < 0 || v >= n) throw Error("multiplication table entry out of range");

        FiniteGroup g;
        g.n_ = n;
        g.table_ = std::move(table);
        g.name_ = std::move(name);

        // Latin square: rows and columns are permutations.
        for (int i = 0; i < n; ++i) {
            std::vector<bool> row(n, false), col(n, false);
            for (int j = 0; j < n; ++j) {
                if (row[g.mul(i, j)]) throw Error("row " + std::to_string(i) + " of table is not a permutation");
                row[g.mul(i, j)] = true;
                if (col[g.mul(j, i)]) throw Error("column " + std::to_string(i) + " of table is not a permutation");
                col[g.mul(j, i)] = true;
            }
        }
        // Two-sided identity.
        g.id_ = -1;
        for (int e = 0; e < n; ++e) {
            bool ok = true;
            for (int x = 0; x < n && ok; ++x) ok = g.mul(e, x) == x && g.mul(x, e) == x;
            if (ok) {
                g.id_ = e;
                break;
            }
        }
        if (g.id_ < 0) throw Error("table has no identity element");
        // Associativity: exhaustive for small orders, seeded sampling beyond.
        if (n <= 64) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c)
                        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                            throw Error("table is not associative");
        } else {
            std::mt19937 rng(opts.seed);
            std::uniform_int_distribution<int> pick(0, n - 1);
            for (int t = 0; t < 10000; ++t) {
                int a = pick(rng), b = pick(rng), c = pick(rng);
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    throw Error("table is not associative");
            }
        }
        g.inv_.assign(n, -1);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (g.mul(a, b) == g.id_) g.inv_[a] = b;
        for (int a = 0; a < n; ++a)
            if (g.inv_[a] < 0 || g.mul(g.inv_[a], a) != g.id_)
                throw Error("element " + std::to_string(a) + " has no two-sided inverse");

        g.elem_order_.assign(n, 0);
        for (int a = 0; a < n; ++a) {
            int x = a, ord = 1;
            while (x != g.id_) {
                x = g.mul(x, a);
                ++ord;
            }
            g.elem_order_[a] = ord;
        }

        if (!perms.empty()) {
            if (static_cast<int>(perms.size()) != n) throw Error("permutation list has wrong size");
            g.perms_ = std::move(perms);
            for (const Perm& p : g.perms_) g.degree_ = std::max(g.degree_, static_cast<int>(p.size()));
            for (Perm& p : g.perms_) p = perm_pad(std::move(p), g.degree_);
            for (int a = 0; a < n; ++a) g.perm_index_[perm_trim(g.perms_[a])] = a;
        }
        if (labels.empty()) {
            for (int a = 0; a < n; ++a)
                labels.push_back(g.has_perms() ? cycle_string(g.perms_[a]) : "g" + std::to_string(a));
        }
        if (static_cast<int>(labels.size()) != n) throw Error("label list has wrong size");
        g.labels_ = std::move(labels);
        return g;
    }

    // Closure of the generators under composition, breadth first from the
    // identity; element order is the discovery order, so it is deterministic.
    static FiniteGroup from_perms(std::vector<Perm> gens, std::string name, const BuildOptions& opts) {
        int degree = 1;
        for (const Perm& p : gens) degree = std::max(degree, static_cast<int>(p.size()));
        for (Perm& p : gens) p = perm_pad(std::move(p), degree);

        std::vector<Perm> elems{perm_identity(degree)};
        std::map<Perm, int> index{{elems[0], 0}};
        for (std::size_t head = 0; head < elems.size(); ++head) {
            for (const Perm& gperm : gens) {
                Perm next = perm_compose(elems[head], gperm);
                if (index.emplace(next, static_cast<int>(elems.size())).second) {
                    elems.push_back(next);
                    if (static_cast<int>(elems.size()) > opts.size_cap)
                        throw Error("group closure exceeds size cap " + std::to_string(opts.size_cap));
                }
            }
        }
        int n = static_cast<int>(elems.size());
        std::vector<int> table(static_cast<std::size_t>(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                table[static_cast<std::size_t>(a) * n + b] = index.at(perm_compose(elems[a], elems[b]));
        return from_table(std::move(table), n, {}, std::move(elems), std::move(name), opts);
    }

private:
    int n_ = 0;
    int id_ = 0;
    int degree_ = 0;
    std::vector<int> table_;
    std::vector<int> inv_;
    std::vector<int> elem_order_;
    std::vector<std::string> labels_;
    std::vector<Perm> perms_;
    std::map<Perm, int> perm_index_;
    std::string name_;
};

namespace detail {

inline std::vector<Perm> all_perms_lex(int n, bool even_only) {
    Perm p = perm_identity(n);
    std::vector<Perm> out;
    do {
        if (even_only) {
            int inversions = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (p[i] > p[j]) ++inversions;
            if (inversions % 2) continue;
        }
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline long factorial_capped(int n, long cap) {
    long f = 1;
    for (int i = 2; i <= n; ++i) {
        f *= i;
        if (f > cap) return cap + 1;
    }
    return f;
}

}  // namespace detail

inline FiniteGroup symmetric_group(int n, const BuildOptions& opts = {}) {
    if (n < 1) throw Error("S<n> needs n >= 1");
    if (detail::factorial_capped(n, opts.size_cap) > opts.size_cap)
        throw Error("S" + std::to_string(n) + " exceeds size cap " + std::to_string(opts.size_cap));
    auto elems = detail::all_perms_lex(n, false);
    int count = static_cast<int>(elems.size());
    std::map<Perm, int> index;
    for (int i = 0; i < count; ++i) index[elems[i]] = i;
    std::vector<int> table(static_cast<std::size_t>(count) * count);
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b)
            table[static_cast<std::size_t>(a) * count + b] = index.at(perm_compose(elems[a], elems[b]));
    return FiniteGroup::from_table(std::move(table), count, {}, std::move(elems), "S" + std::to_string(n),
                                   opts);
}

inline FiniteGroup alternating_group(int n, const BuildOptions& opts = {}) {
    if (n < 1) throw Error("A<n> needs n >= 1");
    if (detail::factorial_capped(n, opts.size_cap * 2L) > opts.size_cap * 2L)
        throw Error("A" + std::to_string(n) + " exceeds size cap " + std::to_string(opts.size_cap));
    auto elems = detail::all_perms_lex(n, true);
    int count = static_cast<int>(elems.size());
    if (count > opts.size_cap)
        throw Error("A" + std::to_string(n) + " exceeds size cap " + std::to_string(opts.size_cap));
    std::map<Perm, int> index;
    for (int i = 0; i < count; ++i) index[elems[i]] = i;
    std::vector<int> table(static_cast<std::size_t>(count) * count);
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b)
            table[static_cast<std::size_t>(a) * count + b] = index.at(perm_compose(elems[a], elems[b]));
    return FiniteGroup::from_table(std::move(table), count, {}, std::move(elems), "A" + std::to_string(n),
                                   opts);
}

inline FiniteGroup cyclic_group(int n, const BuildOptions& opts = {}) {
    if (n < 1) throw Error("C<n> needs n >= 1");
    if (n > opts.size_cap) throw Error("C" + std::to_string(n) + " exceeds size cap");
    Perm rot(n);
    for (int i = 0; i < n; ++i) rot[i] = (i + 1) % n;
    std::vector<Perm> elems;
    Perm cur = perm_identity(n);
    for (int k = 0; k < n; ++k) {
        elems.push_back(cur);
        cur = perm_compose(cur, rot);
    }
    std::map<Perm, int> index;
    for (int i = 0; i < n; ++i) index[elems[i]] = i;
    std::vector<int> table(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            table[static_cast<std::size_t>(a) * n + b] = index.at(perm_compose(elems[a], elems[b]));
    return FiniteGroup::from_table(std::move(table), n, {}, std::move(elems), "C" + std::to_string(n), opts);
}

inline FiniteGroup dihedral_group(int n, const BuildOptions& opts = {}) {
    if (n < 3) throw Error("D<n> needs n >= 3");
    Perm rot(n), refl(n);
    for (int i = 0; i < n; ++i) {
        rot[i] = (i + 1) % n;
        refl[i] = (n - i) % n;
    }
    return FiniteGroup::from_perms({rot, refl}, "D" + std::to_string(n), opts);
}

inline FiniteGroup product_group(const FiniteGroup& a, const FiniteGroup& b, const BuildOptions& opts = {}) {
    long n = static_cast<long>(a.order()) * b.order();
    if (n > opts.size_cap) throw Error("product group exceeds size cap " + std::to_string(opts.size_cap));
    int na = a.order(), nb = b.order(), nn = static_cast<int>(n);
    auto idx = [nb](int x, int y) { return x * nb + y; };
    std::vector<int> table(static_cast<std::size_t>(nn) * nn);
    for (int x1 = 0; x1 < na; ++x1)
        for (int y1 = 0; y1 < nb; ++y1)
            for (int x2 = 0; x2 < na; ++x2)
                for (int y2 = 0; y2 < nb; ++y2)
                    table[static_cast<std::size_t>(idx(x1, y1)) * nn + idx(x2, y2)] =
                        idx(a.mul(x1, x2), b.mul(y1, y2));
    std::vector<Perm> perms;
    std::vector<std::string> labels;
    if (a.has_perms() && b.has_perms()) {
        int da = a.degree(), db = b.degree();
        for (int x = 0; x < na; ++x)
            for (int y = 0; y < nb; ++y) {
                Perm p(da + db);
                for (int i = 0; i < da; ++i) p[i] = a.perm(x)[i];
                for (int j = 0; j < db; ++j) p[da + j] = da + b.perm(y)[j];
                perms.push_back(std::move(p));
            }
    } else {
        for (int x = 0; x < na; ++x)
            for (int y = 0; y < nb; ++y) labels.push_back("(" + a.label(x) + "," + b.label(y) + ")");
    }
    return FiniteGroup::from_table(std::move(table), nn, std::move(labels), std::move(perms),
                                   "product(" + a.name() + "," + b.name() + ")", opts);
}

inline FiniteGroup group_from_table_file(const std::string& path, const BuildOptions& opts = {}) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open table file '" + path + "'");
    int n = 0;
    if (!(in >> n)) throw Error("table file '" + path + "': missing order");
    if (n < 1 || n > opts.size_cap) throw Error("table file '" + path + "': bad order");
    std::vector<int> table;
    table.reserve(static_cast<std::size_t>(n) * n);
    int v = 0;
    while (static_cast<int>(table.size()) < n * n && in >> v) table.push_back(v);
    if (static_cast<int>(table.size()) != n * n)
        throw Error("table file '" + path + "': expected " + std::to_string(n * n) + " entries");
    return FiniteGroup::from_table(std::move(table), n, {}, {}, "table{" + path + "}", opts);
}

namespace detail {

// Split on top-level commas (depth counts (), [], {}).
inline std::vector<std::string> split_top_commas(const std::string& s) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(' || ch == '[' || ch == '{') ++depth;
        if (ch == ')' || ch == ']' || ch == '}') --depth;
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

inline std::string trim_copy(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

// Group specs: S<n>, A<n>, C<n>, D<n>, perm{cycles, cycles, ...},
// product(spec, spec), table{file}.
inline FiniteGroup build_group(const std::string& spec_in, const BuildOptions& opts = {}) {
    std::string spec = detail::trim_copy(spec_in);
    auto all_digits = [](const std::string& s) {
        return !s.empty() && std::all_of(s.begin(), s.end(),
                                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    if (spec.size() >= 2 && all_digits(spec.substr(1))) {
        int n = std::stoi(spec.substr(1));
        switch (spec[0]) {
            case 'S': return symmetric_group(n, opts);
            case 'A': return alternating_group(n, opts);
            case 'C': return cyclic_group(n, opts);
            case 'D': return dihedral_group(n, opts);
            default: break;
        }
    }
    if (spec.rfind("perm{", 0) == 0 && spec.back() == '}') {
        std::string inner = spec.substr(5, spec.size() - 6);
        std::vector<Perm> gens;
        for (const std::string& part : detail::split_top_commas(inner)) {
            std::string t = detail::trim_copy(part);
            if (!t.empty()) gens.push_back(parse_cycles(t));
        }
        if (gens.empty()) throw Error("perm{} needs at least one generator");
        return FiniteGroup::from_perms(std::move(gens), spec, opts);
    }
    if (spec.rfind("product(", 0) == 0 && spec.back() == ')') {
        std::string inner = spec.substr(8, spec.size() - 9);
        auto parts = detail::split_top_commas(inner);
        if (parts.size() != 2) throw Error("product(...) takes exactly two group specs");
        FiniteGroup a = build_group(parts[0], opts);
        FiniteGroup b = build_group(parts[1], opts);
        return product_group(a, b, opts);
    }
    if (spec.rfind("table{", 0) == 0 && spec.back() == '}') {
        return group_from_table_file(detail::trim_copy(spec.substr(6, spec.size() - 7)), opts);
    }
    throw Error("unrecognized group spec '" + spec + "'");
}

// Subgroup as a sorted member list plus a membership mask over the parent.
struct Subgroup {
    std::vector<int> members;
    std::vector<char> mask;

    int order() const { return static_cast<int>(members.size()); }
    bool contains(int g) const { return mask[g] != 0; }

    friend bool operator==(const Subgroup& x, const Subgroup& y) { return x.members == y.members; }
};

inline Subgroup make_subgroup(const FiniteGroup& g, std::vector<int> members) {
    Subgroup s;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    s.members = std::move(members);
    s.mask.assign(g.order(), 0);
    for (int x : s.members) s.mask[x] = 1;
    return s;
}

inline Subgroup full_subgroup(const FiniteGroup& g) {
    std::vector<int> all(g.order());
    for (int i = 0; i < g.order(); ++i) all[i] = i;
    return make_subgroup(g, std::move(all));
}

inline Subgroup closure(const FiniteGroup& g, const std::vector<int>& gens) {
    std::vector<char> seen(g.order(), 0);
    std::vector<int> queue{g.identity()};
    seen[g.identity()] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (int x : gens) {
            int next = g.mul(queue[head], x);
            if (!seen[next]) {
                seen[next] = 1;
                queue.push_back(next);
            }
        }
    return make_subgroup(g, std::move(queue));
}

inline Subgroup centralizer(const FiniteGroup& g, const std::vector<int>& elems) {
    std::vector<int> members;
    for (int x = 0; x < g.order(); ++x) {
        bool ok = true;
        for (int c : elems) ok = ok && g.mul(x, c) == g.mul(c, x);
        if (ok) members.push_back(x);
    }
    return make_subgroup(g, std::move(members));
}

inline Subgroup commutator_subgroup(const FiniteGroup& g) {
    std::vector<int> comms;
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) comms.push_back(g.commutator(a, b));
    return closure(g, comms);
}

}  // namespace groupeq
