#pragma once

#include <string>
#include <vector>

#include "roughforge/linear_combo.hpp"
#include "roughforge/rational.hpp"

namespace roughforge {

/// Ordered alphabet of opaque letters with per-letter Holder exponents in
/// (0,1). The same machinery serves integer letters {1..d} and tree letters.
struct Alphabet {
    std::vector<std::string> names;   // display names, index = letter id
    std::vector<Rational> gammas;     // exponent per letter

    int size() const { return static_cast<int>(names.size()); }

    Rational min_gamma() const;

    /// Plain d-letter alphabet "1".."d" with a common exponent.
    static Alphabet integers(int d, const Rational& gamma);

    void validate() const;  // sizes match, every gamma in (0,1)
};

/// Word over an alphabet, stored as letter indices. Empty word = unit.
struct Word {
    std::vector<int> letters;

    Word() = default;
    explicit Word(std::vector<int> ls) : letters(std::move(ls)) {}

    int length() const { return static_cast<int>(letters.size()); }
    bool is_unit() const { return letters.empty(); }

    Word concat(const Word& o) const;
    Word prefix(int k) const { return Word({letters.begin(), letters.begin() + k}); }
    Word suffix(int k) const { return Word({letters.begin() + k, letters.end()}); }
    Word reversed() const { return Word({letters.rbegin(), letters.rend()}); }

    friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
    // Length-lexicographic order under the alphabet order.
    friend bool operator<(const Word& a, const Word& b) {
        if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
        return a.letters < b.letters;
    }
};

using WordCombo = LinearCombo<Word>;
using WordTensor = LinearCombo<std::vector<Word>>;

/// Recursive shuffle product: (au ⧢ bv) = a(u ⧢ bv) + b(au ⧢ v).
WordCombo shuffle(const Word& u, const Word& v);
WordCombo shuffle(const WordCombo& a, const WordCombo& b);

/// Deconcatenation coproduct, including the unit-bearing terms.
WordTensor deconcat_coproduct(const Word& v);
/// Reduced deconcatenation (proper prefix/suffix splits only).
WordTensor reduced_deconcat(const Word& v);

/// S(a1...an) = (-1)^n an...a1, returned as (sign, reversed word).
std::pair<Rational, Word> word_antipode(const Word& v);

/// Total exponent weight sum_i gamma_{v_i} (the anisotropic weight times the
/// minimal exponent), exact.
Rational gamma_weight(const Alphabet& a, const Word& v);

/// Anisotropic weight omega(v) = gamma_weight / min_gamma.
Rational omega(const Alphabet& a, const Word& v);

/// The set of non-empty words with gamma_weight <= 1, in length-lex order.
std::vector<Word> anisotropic_basis(const Alphabet& a);

/// All non-empty words of length <= n, in length-lex order.
std::vector<Word> word_basis(int alphabet_size, int n);

/// Text form: letter names joined by "."; the empty word prints as "".
std::string word_str(const Alphabet& a, const Word& v);
Word parse_word(const Alphabet& a, const std::string& text);

}  // namespace roughforge
