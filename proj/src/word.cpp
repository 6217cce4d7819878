#include "roughforge/word.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace roughforge {

Rational Alphabet::min_gamma() const {
    if (gammas.empty()) throw std::invalid_argument("empty alphabet");
    Rational m = gammas[0];
    for (const auto& g : gammas)
        if (g < m) m = g;
    return m;
}

Alphabet Alphabet::integers(int d, const Rational& gamma) {
    Alphabet a;
    for (int i = 1; i <= d; ++i) {
        a.names.push_back(std::to_string(i));
        a.gammas.push_back(gamma);
    }
    a.validate();
    return a;
}

void Alphabet::validate() const {
    if (names.empty() || names.size() != gammas.size())
        throw std::invalid_argument("alphabet names/exponents mismatch");
    for (const auto& g : gammas)
        if (!(Rational(0) < g && g < Rational(1)))
            throw std::domain_error("letter exponent outside (0,1)");
}

Word Word::concat(const Word& o) const {
    std::vector<int> ls = letters;
    ls.insert(ls.end(), o.letters.begin(), o.letters.end());
    return Word(std::move(ls));
}

namespace {

WordCombo shuffle_rec(const Word& u, const Word& v,
                      std::map<std::pair<Word, Word>, WordCombo>& memo) {
    if (u.is_unit()) return WordCombo(v);
    if (v.is_unit()) return WordCombo(u);
    auto key = std::make_pair(u, v);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    WordCombo out;
    Word u_tail = u.suffix(1);
    WordCombo left = shuffle_rec(u_tail, v, memo);
    for (const auto& [w, c] : left.terms()) {
        std::vector<int> ls{u.letters.front()};
        ls.insert(ls.end(), w.letters.begin(), w.letters.end());
        out.add(Word(std::move(ls)), c);
    }
    Word v_tail = v.suffix(1);
    WordCombo right = shuffle_rec(u, v_tail, memo);
    for (const auto& [w, c] : right.terms()) {
        std::vector<int> ls{v.letters.front()};
        ls.insert(ls.end(), w.letters.begin(), w.letters.end());
        out.add(Word(std::move(ls)), c);
    }
    memo.emplace(std::move(key), out);
    return out;
}

}  // namespace

WordCombo shuffle(const Word& u, const Word& v) {
    std::map<std::pair<Word, Word>, WordCombo> memo;
    return shuffle_rec(u, v, memo);
}

WordCombo shuffle(const WordCombo& a, const WordCombo& b) {
    return WordCombo::bilinear(a, b, [](const Word& u, const Word& v) { return shuffle(u, v); });
}

WordTensor deconcat_coproduct(const Word& v) {
    WordTensor out;
    for (int k = 0; k <= v.length(); ++k)
        out.add({v.prefix(k), v.suffix(k)}, Rational(1));
    return out;
}

WordTensor reduced_deconcat(const Word& v) {
    WordTensor out;
    for (int k = 1; k < v.length(); ++k)
        out.add({v.prefix(k), v.suffix(k)}, Rational(1));
    return out;
}

std::pair<Rational, Word> word_antipode(const Word& v) {
    Rational sign = (v.length() % 2 == 0) ? Rational(1) : Rational(-1);
    return {sign, v.reversed()};
}

Rational gamma_weight(const Alphabet& a, const Word& v) {
    Rational w(0);
    for (int l : v.letters) {
        if (l < 0 || l >= a.size()) throw std::out_of_range("letter outside alphabet");
        w += a.gammas[l];
    }
    return w;
}

Rational omega(const Alphabet& a, const Word& v) {
    return gamma_weight(a, v) / a.min_gamma();
}

std::vector<Word> anisotropic_basis(const Alphabet& a) {
    a.validate();
    std::vector<Word> out;
    std::vector<Word> frontier;
    // Grow by length; a word is kept while its total exponent stays <= 1.
    for (int l = 0; l < a.size(); ++l)
        frontier.push_back(Word({l}));
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (const auto& w : frontier) {
            out.push_back(w);
            for (int l = 0; l < a.size(); ++l) {
                Word e = w.concat(Word({l}));
                if (gamma_weight(a, e) <= Rational(1)) next.push_back(e);
            }
        }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Word> word_basis(int alphabet_size, int n) {
    std::vector<Word> out;
    std::vector<Word> frontier{Word()};
    for (int len = 1; len <= n; ++len) {
        std::vector<Word> next;
        for (const auto& w : frontier)
            for (int l = 0; l < alphabet_size; ++l) next.push_back(w.concat(Word({l})));
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string word_str(const Alphabet& a, const Word& v) {
    std::string out;
    for (std::size_t i = 0; i < v.letters.size(); ++i) {
        if (i) out += ".";
        out += a.names.at(v.letters[i]);
    }
    return out;
}

Word parse_word(const Alphabet& a, const std::string& text) {
    if (text.empty()) return Word();
    std::vector<int> letters;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto dot = text.find('.', pos);
        std::string name = text.substr(pos, dot == std::string::npos ? dot : dot - pos);
        auto it = std::find(a.names.begin(), a.names.end(), name);
        if (it == a.names.end()) throw std::invalid_argument("unknown letter: " + name);
        letters.push_back(static_cast<int>(it - a.names.begin()));
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    return Word(std::move(letters));
}

}  // namespace roughforge
