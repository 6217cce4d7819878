#include <set>

#include "doctest.h"
#include "roughforge/hairer_kelly.hpp"
#include "roughforge/hopf_bck.hpp"

using namespace roughforge;

namespace {

Word letters_word(const HairerKelly& hk, std::initializer_list<const char*> trees) {
    std::vector<int> ls;
    for (const char* t : trees) ls.push_back(hk.letter_of(parse_tree(t)));
    return Word(std::move(ls));
}

// (psi (x) psi) Delta as a tensor of word pairs.
LinearCombo<std::vector<Word>> morphism_left(const HairerKelly& hk, const DecoratedForest& f) {
    LinearCombo<std::vector<Word>> out;
    ForestTensor cop = bck_coproduct(f);
    for (const auto& [pair, c] : cop.terms()) {
        WordCombo l = hk.psi(pair[0]);
        WordCombo r = hk.psi(pair[1]);
        for (const auto& [lw, lc] : l.terms())
            for (const auto& [rw, rc] : r.terms()) out.add({lw, rw}, c * lc * rc);
    }
    return out;
}

// Deconcatenation of psi(f).
LinearCombo<std::vector<Word>> morphism_right(const HairerKelly& hk, const DecoratedForest& f) {
    LinearCombo<std::vector<Word>> out;
    WordCombo p = hk.psi(f);
    for (const auto& [w, c] : p.terms()) {
        WordTensor d = deconcat_coproduct(w);
        for (const auto& [pair, c2] : d.terms()) out.add({pair[0], pair[1]}, c * c2);
    }
    return out;
}

}  // namespace

TEST_CASE("expansion examples") {
    HairerKelly hk(4, 4);

    CHECK(hk.psi_tree(parse_tree("[1]")) == WordCombo(letters_word(hk, {"[1]"})));

    WordCombo two;
    two.add(letters_word(hk, {"[1]", "[2]"}), Rational(1));
    two.add(letters_word(hk, {"[2]", "[1]"}), Rational(1));
    CHECK(hk.psi(parse_forest("[1][2]")) == two);

    WordCombo ladder;
    ladder.add(letters_word(hk, {"[1[2]]"}), Rational(1));
    ladder.add(letters_word(hk, {"[2]", "[1]"}), Rational(1));
    CHECK(hk.psi_tree(parse_tree("[1[2]]")) == ladder);

    // the 4-node display: a=1, b=2, c=3, d=4, host [a[c[d]][b]]
    WordCombo big;
    big.add(letters_word(hk, {"[1[2][3[4]]]"}), Rational(1));
    big.add(letters_word(hk, {"[3[4]]", "[1[2]]"}), Rational(1));
    big.add(letters_word(hk, {"[4]", "[3]", "[1[2]]"}), Rational(1));
    big.add(letters_word(hk, {"[2]", "[1[3[4]]]"}), Rational(1));
    big.add(letters_word(hk, {"[4]", "[1[2][3]]"}), Rational(1));
    big.add(letters_word(hk, {"[3[4]]", "[2]", "[1]"}), Rational(1));
    big.add(letters_word(hk, {"[2]", "[3[4]]", "[1]"}), Rational(1));
    big.add(letters_word(hk, {"[4]", "[3]", "[2]", "[1]"}), Rational(1));
    big.add(letters_word(hk, {"[4]", "[2]", "[3]", "[1]"}), Rational(1));
    big.add(letters_word(hk, {"[2]", "[4]", "[3]", "[1]"}), Rational(1));
    big.add(letters_word(hk, {"[4]", "[2]", "[1[3]]"}), Rational(1));
    big.add(letters_word(hk, {"[2]", "[4]", "[1[3]]"}), Rational(1));
    CHECK(hk.psi_tree(parse_tree("[1[3[4]][2]]")) == big);
}

TEST_CASE("partition route equals the recursion on every tree up to 4 nodes") {
    HairerKelly hk(4, 2);
    for (const auto& t : hk.trees())
        CHECK(hk.psi_tree(t) == hk.psi_via_partitions(DecoratedForest(t)));
    // and on a couple of proper forests
    for (const char* f : {"[1][2]", "[1][1[2]]", "[1][2][1]"})
        CHECK(hk.psi(parse_forest(f)) == hk.psi_via_partitions(parse_forest(f)));
}

TEST_CASE("the morphism intertwines the coproducts on forests up to 4 nodes") {
    HairerKelly hk(4, 2);
    for (const auto& f : enumerate_forests(4, 2))
        CHECK(morphism_left(hk, f) == morphism_right(hk, f));
}

TEST_CASE("grading: every word carries the full node count") {
    HairerKelly hk(4, 2);
    for (const auto& t : hk.trees())
        for (const auto& [w, c] : hk.psi_tree(t).terms()) {
            int nodes = 0;
            for (int l : w.letters) nodes += hk.trees()[l].size();
            CHECK(nodes == t.size());
        }
}

TEST_CASE("the host tree never appears as a letter of the lower part") {
    HairerKelly hk(4, 2);
    for (const auto& t : hk.trees()) {
        int self = hk.letter_of(t);
        WordCombo lower = hk.psi_lower(t);
        for (const auto& [w, c] : lower.terms())
            for (int l : w.letters) CHECK(l != self);
    }
}

TEST_CASE("containment matches letter occurrence in the expansion") {
    HairerKelly hk(4, 2);
    for (const auto& sigma : hk.trees())
        for (const auto& tau : hk.trees()) {
            bool occurs = false;
            int target = hk.letter_of(tau);
            for (const auto& [w, c] : hk.psi_tree(sigma).terms())
                for (int l : w.letters)
                    if (l == target) occurs = true;
            CHECK(occurs == contains(sigma, tau));
        }
}

TEST_CASE("extended decorations: labeled examples") {
    HairerKelly hk(4, 4);
    auto single = hk.extended_decorations(parse_forest("[1]"));
    REQUIRE(single.size() == 1);
    CHECK(single[0].labels == std::vector<int>{1});

    auto pair = hk.extended_decorations(parse_forest("[1][2]"));
    CHECK(pair.size() == 2);
    auto ladder = hk.extended_decorations(parse_forest("[1[2]]"));
    CHECK(ladder.size() == 2);

    // canonical preorder of [1[3[4]][2]] is [1[2][3[4]]]: nodes a, b, c, d
    DecoratedForest host(parse_tree("[1[3[4]][2]]"));
    CHECK(hk.is_admissible(host, {1, 3, 1, 2}));
    CHECK(hk.is_admissible(host, {1, 2, 1, 3}));
    CHECK_FALSE(hk.is_admissible(host, {1, 3, 1, 5}));   // label set not an interval
    CHECK_FALSE(hk.is_admissible(host, {1, 2, 1, 2}));   // level set spans a forest
    CHECK_FALSE(hk.is_admissible(host, {1, 1, 3, 2}));   // decreasing along the branch
    // the two-single-node forest with equal labels is rejected
    CHECK_FALSE(hk.is_admissible(parse_forest("[1][2]"), {1, 1}));
}

TEST_CASE("ladder words of singletons have a single linear extension") {
    HairerKelly hk(4, 1);
    for (int n = 2; n <= 4; ++n) {
        DecoratedTree ladder = parse_tree("[1]");
        for (int k = 1; k < n; ++k) ladder = DecoratedTree(1, {ladder});
        Word allsingles(std::vector<int>(n, hk.letter_of(parse_tree("[1]"))));
        CHECK(hk.psi_tree(ladder).coeff(allsingles) == Rational(1));
    }
}

TEST_CASE("size guard") {
    HairerKelly hk(2, 2);
    CHECK_THROWS_AS(hk.psi_tree(parse_tree("[1[1][1]]")), std::out_of_range);
}
