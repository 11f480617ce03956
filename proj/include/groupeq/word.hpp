#pragma once

#include "groupeq/bigint.hpp"
#include "groupeq/errors.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace groupeq {

enum class LetterKind { unknown, coefficient };

// One run-length letter of a word in the free product F(unknowns) * F(atoms):
// a symbol together with a nonzero integer exponent.
struct Letter {
    std::string symbol;
    LetterKind kind = LetterKind::unknown;
    Int exponent = 1;

    friend bool operator==(const Letter& a, const Letter& b) {
        return a.kind == b.kind && a.symbol == b.symbol && a.exponent == b.exponent;
    }
};

inline bool same_base(const Letter& a, const Letter& b) {
    return a.kind == b.kind && a.symbol == b.symbol;
}

// Freely reduced word.  The constructor reduces, so every Word in flight
// satisfies: no zero exponents, no two adjacent letters with the same base.
class Word {
public:
    Word() = default;

    explicit Word(std::vector<Letter> raw) {
        for (Letter& l : raw) push(std::move(l));
    }

    const std::vector<Letter>& letters() const { return letters_; }
    bool empty() const { return letters_.empty(); }
    std::size_t size() const { return letters_.size(); }

    // Total number of unit letters, i.e. the word length after expanding
    // every run x^k into |k| single letters.
    Int unit_length() const {
        Int n = 0;
        for (const Letter& l : letters_) n += abs(l.exponent);
        return n;
    }

    friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }

private:
    std::vector<Letter> letters_;

    void push(Letter l) {
        if (l.exponent == 0) return;
        if (!letters_.empty() && same_base(letters_.back(), l)) {
            letters_.back().exponent += l.exponent;
            if (letters_.back().exponent == 0) letters_.pop_back();
        } else {
            letters_.push_back(std::move(l));
        }
    }
};

inline Word free_reduce(std::vector<Letter> raw) { return Word(std::move(raw)); }

inline Word concat(const Word& u, const Word& v) {
    std::vector<Letter> raw = u.letters();
    raw.insert(raw.end(), v.letters().begin(), v.letters().end());
    return Word(std::move(raw));
}

inline Word invert(const Word& w) {
    std::vector<Letter> raw;
    raw.reserve(w.size());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
        raw.push_back({it->symbol, it->kind, -it->exponent});
    }
    return Word(std::move(raw));
}

// Word built from a single symbol, or the empty word when k = 0.
inline Word letter_word(const std::string& symbol, LetterKind kind, Int k = 1) {
    if (k == 0) return Word();
    return Word({Letter{symbol, kind, std::move(k)}});
}

// Net exponent of an unknown symbol.  Coefficient atoms never contribute.
inline Int exponent_sum(const Word& w, const std::string& unknown) {
    Int sum = 0;
    for (const Letter& l : w.letters()) {
        if (l.kind == LetterKind::unknown && l.symbol == unknown) sum += l.exponent;
    }
    return sum;
}

// Group-operations concept used by evaluate(); any G with element type
// G::Elem and identity/mul/pow works (FiniteGroup satisfies it).
template <class G>
typename G::Elem evaluate(const Word& w,
                          const std::map<std::string, typename G::Elem>& assignment,
                          const G& ops) {
    typename G::Elem acc = ops.identity();
    for (const Letter& l : w.letters()) {
        auto it = assignment.find(l.symbol);
        if (it == assignment.end()) throw Error("unbound symbol '" + l.symbol + "' in word evaluation");
        acc = ops.mul(acc, ops.pow(it->second, l.exponent));
    }
    return acc;
}

inline std::string print_letter(const Letter& l) {
    std::string s = (l.kind == LetterKind::coefficient ? "@" : "") + l.symbol;
    if (l.exponent != 1) s += "^" + l.exponent.str();
    return s;
}

inline std::string print_word(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (const Letter& l : w.letters()) {
        if (!s.empty()) s += ' ';
        s += print_letter(l);
    }
    return s;
}

}  // namespace groupeq
