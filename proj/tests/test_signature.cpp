#include <cmath>

#include "doctest.h"
#include "roughforge/signature.hpp"
#include "test_util.hpp"

using namespace roughforge;
using testutil::SplitMix;

namespace {

RationalPLPath random_pl(SplitMix& rng, int letters, int segments) {
    RationalPLPath p;
    for (int i = 0; i <= segments; ++i) p.times.push_back(Rational(i, segments));
    p.values.assign(letters, {});
    for (int l = 0; l < letters; ++l)
        for (int i = 0; i <= segments; ++i) p.values[l].push_back(rng.rational());
    return p;
}

}  // namespace

TEST_CASE("single-segment closed forms") {
    RationalPLPath p;
    p.times = {Rational(0), Rational(1)};
    p.values = {{Rational(0), Rational(3)}, {Rational(1), Rational(3)}};
    auto basis = TruncatedBasis::make_words(Alphabet::integers(2, Rational(2, 9)), 4);
    Alphabet a = basis->alphabet();
    // <S, ab> = dx^a dx^b / 2
    CHECK(signature_coeff<Rational>(p, Rational(0), Rational(1), basis, parse_word(a, "1.2")) ==
          Rational(3) * Rational(2) / Rational(2));
    // over a half interval the increments scale linearly
    CHECK(signature_coeff<Rational>(p, Rational(0), Rational(1, 2), basis,
                                    parse_word(a, "1")) == Rational(3, 2));
    // <S, aaa> = dx^3 / 3!
    CHECK(signature_coeff<Rational>(p, Rational(0), Rational(1), basis,
                                    parse_word(a, "1.1.1")) == Rational(27, 6));
}

TEST_CASE("signatures are shuffle characters, exactly") {
    SplitMix rng(41);
    auto basis = TruncatedBasis::make_words(Alphabet::integers(2, Rational(2, 9)), 4);
    for (int trial = 0; trial < 20; ++trial) {
        RationalPLPath p = random_pl(rng, 2, 3);
        auto sig = signature_character<Rational>(p, Rational(0), Rational(1), basis);
        CHECK(is_character(sig));
        // <S,u><S,v> = <S, u shuffle v> for words of total degree <= 4
        auto words2 = word_basis(2, 2);
        for (const auto& u : words2)
            for (const auto& v : words2) {
                Rational lhs = sig.coeffs[basis->index_of(word_str(basis->alphabet(), u))] *
                               sig.coeffs[basis->index_of(word_str(basis->alphabet(), v))];
                Rational rhs(0);
                WordCombo sh = shuffle(u, v);
                for (const auto& [w, c] : sh.terms())
                    rhs += c * sig.coeffs[basis->index_of(word_str(basis->alphabet(), w))];
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("segment composition satisfies Chen exactly") {
    SplitMix rng(42);
    auto basis = TruncatedBasis::make_words(Alphabet::integers(2, Rational(2, 9)), 4);
    for (int trial = 0; trial < 20; ++trial) {
        RationalPLPath p = random_pl(rng, 2, 4);
        Rational s(0), u(1, 3), t(1);
        auto su = signature_character<Rational>(p, s, u, basis);
        auto ut = signature_character<Rational>(p, u, t, basis);
        auto st = signature_character<Rational>(p, s, t, basis);
        CHECK(convolve(su, ut) == st);
    }
}

TEST_CASE("the branched lift is an exact character satisfying Chen") {
    SplitMix rng(43);
    auto basis = TruncatedBasis::make_forests(3, 2, Rational(3, 10));
    for (int trial = 0; trial < 10; ++trial) {
        RationalPLPath p = random_pl(rng, 2, 3);
        auto su = branched_signature_character<Rational>(p, Rational(0), Rational(1, 2), basis);
        auto ut = branched_signature_character<Rational>(p, Rational(1, 2), Rational(1), basis);
        auto st = branched_signature_character<Rational>(p, Rational(0), Rational(1), basis);
        CHECK(is_character(su));
        CHECK(convolve(su, ut) == st);
    }
}

TEST_CASE("tree factorials") {
    CHECK(tree_factorial(parse_tree("[1]")) == 1);
    CHECK(tree_factorial(parse_tree("[1[1]]")) == 2);
    CHECK(tree_factorial(parse_tree("[1[1[1]]]")) == 6);
    CHECK(tree_factorial(parse_tree("[1[1][1]]")) == 3);
}

TEST_CASE("branched lift on one segment matches the tree-factorial closed form") {
    RationalPLPath p;
    p.times = {Rational(0), Rational(1)};
    p.values = {{Rational(0), Rational(2)}, {Rational(0), Rational(5)}};
    auto basis = TruncatedBasis::make_forests(3, 2, Rational(3, 10));
    auto sig = branched_signature_character<Rational>(p, Rational(0), Rational(1), basis);
    // ladder [1[2]]: dx1 dx2 / 2; cherry [1[2][2]]: dx1 dx2^2 / 3
    CHECK(sig.coeffs[basis->index_of("[1[2]]")] == Rational(2) * Rational(5) / Rational(2));
    CHECK(sig.coeffs[basis->index_of("[1[2][2]]")] ==
          Rational(2) * Rational(25) / Rational(3));
}

TEST_CASE("dyadic sampling and the float lift") {
    PiecewiseLinearPath p;
    p.times = {0.0, 0.5, 1.0};
    p.values = {{0.0, 1.0, 0.25}, {0.0, -0.5, 0.75}};
    auto basis = TruncatedBasis::make_forests(2, 2, Rational(2, 5));
    auto lift = signature_lift(p, basis, 5);
    CHECK(chen_check(lift, true).max_rel_residual <= 1e-12);
    CHECK(character_residual(lift) <= 1e-12);
    auto sampled = sample_dyadic(p, 5, Alphabet::integers(2, Rational(2, 5)));
    CHECK(sampled.values[0][16] == 1.0);   // t = 1/2 breakpoint
    CHECK(sampled.values[1][32] == 0.75);  // endpoint
}
