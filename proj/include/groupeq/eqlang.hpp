#pragma once

#include "groupeq/errors.hpp"
#include "groupeq/intmat.hpp"
#include "groupeq/word.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace groupeq {

// A parsed system of equations w_i = 1 over the free product of the unknowns
// and the coefficient atoms.  Symbol lists are in first-appearance order.
struct EquationSystem {
    std::vector<std::string> unknowns;
    std::vector<std::string> coefficient_atoms;
    std::vector<Word> equations;

    friend bool operator==(const EquationSystem& a, const EquationSystem& b) {
        return a.unknowns == b.unknowns && a.coefficient_atoms == b.coefficient_atoms &&
               a.equations == b.equations;
    }
};

// Declared value of one coefficient: a permutation (one-line, 0-based, trailing
// fixed points trimmed) or a rational matrix.
struct CoeffValue {
    enum class Kind { perm, matrix };
    Kind kind = Kind::perm;
    std::vector<int> perm;
    std::vector<std::vector<Rat>> matrix;

    friend bool operator==(const CoeffValue& a, const CoeffValue& b) {
        return a.kind == b.kind && a.perm == b.perm && a.matrix == b.matrix;
    }
};

struct GeqFile {
    EquationSystem system;
    std::vector<std::pair<std::string, CoeffValue>> coefficients;  // declaration order
    bool has_coefficients_section = false;

    friend bool operator==(const GeqFile& a, const GeqFile& b) {
        return a.system == b.system && a.coefficients == b.coefficients;
    }
};

namespace detail {

constexpr long kExpansionBudget = 1000000;  // unit letters per equation after desugaring

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    int line;
    int col_base;  // 1-based column of s[0] in the original line

    int col() const { return col_base + static_cast<int>(i); }
    bool done() const { return i >= s.size(); }
    char peek() const { return i < s.size() ? s[i] : '\0'; }
    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col()); }
};

struct SymbolTable {
    std::vector<std::string> unknowns;
    std::vector<std::string> atoms;
    std::map<std::string, LetterKind> seen;

    void note(const std::string& sym, LetterKind kind, const Cursor& at) {
        auto it = seen.find(sym);
        if (it != seen.end()) {
            if (it->second != kind)
                throw ParseError("symbol '" + sym + "' used both as unknown and as coefficient @" + sym,
                                 at.line, at.col());
            return;
        }
        seen.emplace(sym, kind);
        (kind == LetterKind::unknown ? unknowns : atoms).push_back(sym);
    }
};

inline std::string parse_ident(Cursor& c) {
    if (!ident_start(c.peek())) c.fail("expected identifier");
    std::size_t start = c.i;
    while (!c.done() && ident_char(c.peek())) ++c.i;
    return c.s.substr(start, c.i - start);
}

inline Int parse_integer(Cursor& c) {
    std::size_t start = c.i;
    if (c.peek() == '-') ++c.i;
    if (!std::isdigit(static_cast<unsigned char>(c.peek()))) c.fail("expected integer");
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.i;
    return Int(c.s.substr(start, c.i - start));
}

inline Word word_power(const Word& w, const Int& k, const Cursor& at) {
    if (k == 0) at.fail("zero exponent is not allowed");
    if (w.empty()) return w;
    if (w.size() == 1) {
        Letter l = w.letters()[0];
        l.exponent *= k;
        return Word({std::move(l)});
    }
    Int reps = abs(k);
    if (reps * static_cast<long>(w.size()) > kExpansionBudget)
        at.fail("power expansion exceeds " + std::to_string(kExpansionBudget) +
                " letters; rewrite the word or reduce the exponent");
    Word base = k > 0 ? w : invert(w);
    std::vector<Letter> raw;
    raw.reserve(static_cast<std::size_t>(reps) * w.size());
    for (Int r = 0; r < reps; ++r)
        raw.insert(raw.end(), base.letters().begin(), base.letters().end());
    return Word(std::move(raw));
}

Word parse_expr(Cursor& c, SymbolTable& tab);

inline Word parse_primary(Cursor& c, SymbolTable& tab) {
    c.skip_ws();
    char ch = c.peek();
    if (ch == '@') {
        ++c.i;
        Cursor at = c;
        std::string name = parse_ident(c);
        tab.note(name, LetterKind::coefficient, at);
        return letter_word(name, LetterKind::coefficient);
    }
    if (ident_start(ch)) {
        Cursor at = c;
        std::string name = parse_ident(c);
        tab.note(name, LetterKind::unknown, at);
        return letter_word(name, LetterKind::unknown);
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
        Cursor at = c;
        Int v = parse_integer(c);
        if (v != 1) at.fail("integer literal " + v.str() + " is not a word; only 1 (the empty word) is");
        return Word();
    }
    if (ch == '(') {
        ++c.i;
        Word inner = parse_expr(c, tab);
        c.skip_ws();
        if (c.peek() != ')') c.fail("expected ')'");
        ++c.i;
        return inner;
    }
    if (ch == '[') {
        ++c.i;
        Word u = parse_expr(c, tab);
        c.skip_ws();
        if (c.peek() != ',') c.fail("expected ',' in commutator");
        ++c.i;
        Word v = parse_expr(c, tab);
        c.skip_ws();
        if (c.peek() != ']') c.fail("expected ']'");
        ++c.i;
        return concat(concat(invert(u), invert(v)), concat(u, v));
    }
    if (ch == '\0') c.fail("unexpected end of equation");
    c.fail(std::string("unexpected character '") + ch + "'");
}

inline Word parse_factor(Cursor& c, SymbolTable& tab) {
    Word base = parse_primary(c, tab);
    c.skip_ws();
    if (c.peek() == '^') {
        ++c.i;
        c.skip_ws();
        Cursor at = c;
        Int k = parse_integer(c);
        return word_power(base, k, at);
    }
    return base;
}

inline bool starts_primary(char ch) {
    return ident_start(ch) || ch == '@' || ch == '(' || ch == '[' ||
           std::isdigit(static_cast<unsigned char>(ch));
}

inline Word parse_expr(Cursor& c, SymbolTable& tab) {
    c.skip_ws();
    if (!starts_primary(c.peek())) c.fail("expected a word");
    Word w = parse_factor(c, tab);
    for (;;) {
        c.skip_ws();
        if (!starts_primary(c.peek())) break;
        if (w.unit_length() > kExpansionBudget) c.fail("equation too long");
        w = concat(w, parse_factor(c, tab));
    }
    return w;
}

// One equation: expr, optionally "= expr" (folded to lhs * rhs^-1 = 1).
inline Word parse_equation(Cursor& c, SymbolTable& tab) {
    Word lhs = parse_expr(c, tab);
    c.skip_ws();
    if (c.peek() == '=') {
        ++c.i;
        Word rhs = parse_expr(c, tab);
        c.skip_ws();
        lhs = concat(lhs, invert(rhs));
    }
    if (!c.done()) c.fail(std::string("unexpected character '") + c.peek() + "'");
    return lhs;
}

inline CoeffValue parse_perm_value(Cursor& c) {
    CoeffValue v;
    v.kind = CoeffValue::Kind::perm;
    c.skip_ws();
    if (ident_start(c.peek())) {
        Cursor at = c;
        if (parse_ident(c) != "id") at.fail("expected permutation cycles, a matrix, or id");
        return v;  // identity, degree 0
    }
    std::vector<int> images;  // one-line, grown as points appear
    std::vector<bool> used;
    auto ensure = [&](int p) {
        if (p >= static_cast<int>(images.size())) {
            int old = static_cast<int>(images.size());
            images.resize(p + 1);
            used.resize(p + 1, false);
            for (int q = old; q <= p; ++q) images[q] = q;
        }
    };
    while (true) {
        c.skip_ws();
        if (c.peek() != '(') break;
        ++c.i;
        std::vector<int> cycle;
        for (;;) {
            c.skip_ws();
            if (c.peek() == ')') {
                ++c.i;
                break;
            }
            Cursor at = c;
            Int p = parse_integer(c);
            if (p < 1) at.fail("permutation points are 1-based positive integers");
            int pt = static_cast<int>(p) - 1;
            ensure(pt);
            if (used[pt]) at.fail("point " + p.str() + " appears twice in permutation");
            used[pt] = true;
            cycle.push_back(pt);
        }
        for (std::size_t k = 0; k < cycle.size(); ++k)
            images[cycle[k]] = cycle[(k + 1) % cycle.size()];
    }
    while (!images.empty() && images.back() == static_cast<int>(images.size()) - 1) images.pop_back();
    v.perm = std::move(images);
    return v;
}

inline Rat parse_rational(Cursor& c) {
    Int num = parse_integer(c);
    c.skip_ws();
    if (c.peek() == '/') {
        ++c.i;
        c.skip_ws();
        Cursor at = c;
        Int den = parse_integer(c);
        if (den == 0) at.fail("zero denominator");
        return Rat(num, den);
    }
    return Rat(num);
}

inline CoeffValue parse_matrix_value(Cursor& c) {
    CoeffValue v;
    v.kind = CoeffValue::Kind::matrix;
    if (c.peek() != '[') c.fail("expected '['");
    ++c.i;
    for (;;) {
        c.skip_ws();
        if (c.peek() != '[') c.fail("expected matrix row '['");
        ++c.i;
        std::vector<Rat> row;
        for (;;) {
            c.skip_ws();
            row.push_back(parse_rational(c));
            c.skip_ws();
            if (c.peek() == ',') {
                ++c.i;
                continue;
            }
            if (c.peek() == ']') {
                ++c.i;
                break;
            }
            c.fail("expected ',' or ']' in matrix row");
        }
        if (!v.matrix.empty() && v.matrix.front().size() != row.size())
            c.fail("matrix rows have unequal lengths");
        v.matrix.push_back(std::move(row));
        c.skip_ws();
        if (c.peek() == ',') {
            ++c.i;
            continue;
        }
        if (c.peek() == ']') {
            ++c.i;
            break;
        }
        c.fail("expected ',' or ']' after matrix row");
    }
    if (v.matrix.size() != v.matrix.front().size()) c.fail("matrix must be square");
    return v;
}

inline CoeffValue parse_coeff_value(Cursor& c) {
    c.skip_ws();
    if (c.peek() == '[') return parse_matrix_value(c);
    return parse_perm_value(c);
}

inline std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

inline std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

// Parse the .geq format.  Sections: an optional "unknowns:" line declaring
// unknowns ahead of use, an optional "coefficients:" section of name = value
// lines, and an "equations:" section (the default when no header appears).
inline GeqFile parse_geq(const std::string& text) {
    GeqFile out;
    detail::SymbolTable tab;
    enum class Mode { equations, coefficients } mode = Mode::equations;

    std::vector<std::string> lines;
    {
        std::string cur;
        for (char ch : text) {
            if (ch == '\n') {
                lines.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        lines.push_back(cur);
    }

    for (int ln = 0; ln < static_cast<int>(lines.size()); ++ln) {
        std::string raw = detail::strip_comment(lines[ln]);
        std::string t = detail::trimmed(raw);
        if (t.empty()) continue;
        int line_no = ln + 1;
        if (t == "coefficients:") {
            mode = Mode::coefficients;
            continue;
        }
        if (t == "equations:") {
            mode = Mode::equations;
            continue;
        }
        std::size_t indent = raw.find_first_not_of(" \t");
        if (t.rfind("unknowns:", 0) == 0) {
            std::string rest = t.substr(9);
            detail::Cursor c{rest, 0, line_no, static_cast<int>(indent) + 10};
            for (;;) {
                c.skip_ws();
                if (c.done()) break;
                detail::Cursor at = c;
                std::string name = detail::parse_ident(c);
                tab.note(name, LetterKind::unknown, at);
            }
            continue;
        }
        if (mode == Mode::coefficients) {
            detail::Cursor c{raw, indent, line_no, 1};
            std::string name = detail::parse_ident(c);
            c.skip_ws();
            if (c.peek() != '=') c.fail("expected '=' in coefficient declaration");
            ++c.i;
            CoeffValue val = detail::parse_coeff_value(c);
            c.skip_ws();
            if (!c.done()) c.fail("trailing text after coefficient value");
            for (const auto& [n, v] : out.coefficients)
                if (n == name) throw ParseError("coefficient '" + name + "' declared twice", line_no, 1);
            out.coefficients.emplace_back(name, val);
            out.has_coefficients_section = true;
            continue;
        }
        // Equation line; ';' separates equations within it.
        std::size_t start = 0;
        while (start <= raw.size()) {
            std::size_t semi = raw.find(';', start);
            std::size_t end = semi == std::string::npos ? raw.size() : semi;
            std::string piece = raw.substr(start, end - start);
            if (!detail::trimmed(piece).empty()) {
                detail::Cursor c{piece, 0, line_no, static_cast<int>(start) + 1};
                out.system.equations.push_back(detail::parse_equation(c, tab));
            }
            if (semi == std::string::npos) break;
            start = semi + 1;
        }
    }

    // Atoms must be declared when a coefficients section exists.
    if (out.has_coefficients_section) {
        for (const std::string& a : tab.atoms) {
            bool found = false;
            for (const auto& [n, v] : out.coefficients) found = found || n == a;
            if (!found) throw Error("coefficient @" + a + " is used but not declared");
        }
        for (const auto& [n, v] : out.coefficients)
            if (tab.seen.count(n) && tab.seen[n] == LetterKind::unknown)
                throw Error("symbol '" + n + "' is declared as a coefficient but used as an unknown; write @" + n);
    }

    out.system.unknowns = std::move(tab.unknowns);
    out.system.coefficient_atoms = std::move(tab.atoms);
    return out;
}

inline EquationSystem parse_system(const std::string& text) { return parse_geq(text).system; }

// n x m matrix of net exponents: entry (i, j) is the exponent sum of unknown j
// in equation i.  Coefficient atoms do not contribute.
inline IntMat exponent_matrix(const EquationSystem& sys) {
    IntMat m(static_cast<int>(sys.equations.size()), static_cast<int>(sys.unknowns.size()));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m(i, j) = exponent_sum(sys.equations[i], sys.unknowns[j]);
    return m;
}

inline std::string print_coeff_value(const CoeffValue& v) {
    if (v.kind == CoeffValue::Kind::perm) {
        std::string s;
        std::vector<bool> done(v.perm.size(), false);
        for (int p = 0; p < static_cast<int>(v.perm.size()); ++p) {
            if (done[p] || v.perm[p] == p) continue;
            s += "(";
            int q = p;
            bool first = true;
            do {
                if (!first) s += ' ';
                first = false;
                s += std::to_string(q + 1);
                done[q] = true;
                q = v.perm[q];
            } while (q != p);
            s += ")";
        }
        return s.empty() ? "id" : s;
    }
    std::string s = "[";
    for (std::size_t i = 0; i < v.matrix.size(); ++i) {
        if (i) s += ", ";
        s += "[";
        for (std::size_t j = 0; j < v.matrix[i].size(); ++j) {
            if (j) s += ", ";
            s += to_string(v.matrix[i][j]);
        }
        s += "]";
    }
    return s + "]";
}

// Canonical form.  The unknowns line is emitted only when re-parsing the
// equations alone would not reproduce the unknown list (unused or reordered
// unknowns); a plain system prints as the bare sections.
inline std::string print_system(const EquationSystem& sys) {
    std::vector<std::string> appearance;
    for (const Word& w : sys.equations)
        for (const Letter& l : w.letters())
            if (l.kind == LetterKind::unknown &&
                std::find(appearance.begin(), appearance.end(), l.symbol) == appearance.end())
                appearance.push_back(l.symbol);
    std::string s;
    if (appearance != sys.unknowns) {
        s += "unknowns:";
        for (const std::string& u : sys.unknowns) s += " " + u;
        s += "\n";
    }
    s += "equations:\n";
    for (const Word& w : sys.equations) s += "  " + print_word(w) + " = 1\n";
    return s;
}

inline std::string print_geq(const GeqFile& f) {
    std::string s;
    if (f.has_coefficients_section || !f.coefficients.empty()) {
        s += "coefficients:\n";
        for (const auto& [n, v] : f.coefficients) s += "  " + n + " = " + print_coeff_value(v) + "\n";
    }
    return s + print_system(f.system);
}

}  // namespace groupeq
