#include <cmath>

#include "doctest.h"
#include "roughforge/bch.hpp"
#include "test_util.hpp"

using namespace roughforge;
using testutil::SplitMix;

TEST_CASE("counit is the convolution unit") {
    auto basis = TruncatedBasis::make_forests(3, 2, Rational(3, 10));
    SplitMix rng(11);
    DualElement<Rational> f(basis, Rational(1));
    for (int i = 0; i < basis->size(); ++i) f.coeffs[i] = rng.rational();
    auto eps = dual_counit<Rational>(basis);
    CHECK(convolve(eps, f) == f);
    CHECK(convolve(f, eps) == f);
}

TEST_CASE("convolution on characters: level-1 additivity and the ladder formula") {
    auto basis = TruncatedBasis::make_forests(2, 2, Rational(2, 5));
    SplitMix rng(12);
    auto X = exp_truncated(testutil::random_tree_infinitesimal(basis, rng));
    auto Y = exp_truncated(testutil::random_tree_infinitesimal(basis, rng));
    auto XY = convolve(X, Y);
    int dot1 = basis->index_of("[1]");
    int dot2 = basis->index_of("[2]");
    CHECK(XY.coeffs[dot1] == X.coeffs[dot1] + Y.coeffs[dot1]);
    CHECK(XY.coeffs[dot2] == X.coeffs[dot2] + Y.coeffs[dot2]);
    int ladder = basis->index_of("[1[2]]");
    CHECK(XY.coeffs[ladder] ==
          X.coeffs[ladder] + Y.coeffs[ladder] + X.coeffs[dot2] * Y.coeffs[dot1]);
}

TEST_CASE("convolution associativity on random rational triples") {
    for (auto kind : {0, 1}) {
        BasisPtr basis = kind == 0
                             ? TruncatedBasis::make_forests(4, 2, Rational(2, 9))
                             : TruncatedBasis::make_words(Alphabet::integers(2, Rational(2, 9)), 4);
        SplitMix rng(13 + kind);
        for (int trial = 0; trial < 5; ++trial) {
            DualElement<Rational> f(basis, rng.rational()), g(basis, rng.rational()),
                h(basis, rng.rational());
            for (int i = 0; i < basis->size(); ++i) {
                f.coeffs[i] = rng.rational();
                g.coeffs[i] = rng.rational();
                h.coeffs[i] = rng.rational();
            }
            CHECK(convolve(convolve(f, g), h) == convolve(f, convolve(g, h)));
        }
    }
}

TEST_CASE("character group law and inverse") {
    auto basis = TruncatedBasis::make_forests(3, 2, Rational(3, 10));
    SplitMix rng(14);
    auto eps = dual_counit<Rational>(basis);
    for (int trial = 0; trial < 5; ++trial) {
        auto X = exp_truncated(testutil::random_tree_infinitesimal(basis, rng));
        auto Y = exp_truncated(testutil::random_tree_infinitesimal(basis, rng));
        CHECK(is_character(X));
        CHECK(is_character(convolve(X, Y)));
        auto inv = antipode_pullback(X);
        CHECK(convolve(X, inv) == eps);
        CHECK(convolve(inv, X) == eps);
    }
}

TEST_CASE("exp and log are mutually inverse on random infinitesimal characters") {
    for (auto kind : {0, 1}) {
        BasisPtr basis = kind == 0
                             ? TruncatedBasis::make_forests(4, 2, Rational(2, 9))
                             : TruncatedBasis::make_words(Alphabet::integers(2, Rational(2, 9)), 4);
        SplitMix rng(15 + kind);
        for (int trial = 0; trial < 20; ++trial) {
            auto alpha = kind == 0 ? testutil::random_tree_infinitesimal(basis, rng)
                                   : testutil::random_word_infinitesimal(basis, rng);
            REQUIRE(is_infinitesimal(alpha));
            auto X = exp_truncated(alpha);
            CHECK(is_character(X));
            CHECK(log_truncated(X) == alpha);
            CHECK(exp_truncated(log_truncated(X)) == X);
        }
    }
}

TEST_CASE("exp edge cases") {
    auto basis = TruncatedBasis::make_forests(2, 1, Rational(2, 5));
    auto zero = dual_zero<Rational>(basis);
    CHECK(exp_truncated(zero) == dual_counit<Rational>(basis));
    // degree-1 coefficients pass through exp unchanged
    SplitMix rng(16);
    auto alpha = testutil::random_tree_infinitesimal(basis, rng);
    auto X = exp_truncated(alpha);
    for (int p = 0; p < basis->level1_count(); ++p)
        CHECK(X.coeffs[basis->level1_index(p)] == alpha.coeffs[basis->level1_index(p)]);
    DualElement<Rational> bad(basis, Rational(1));
    CHECK_THROWS_AS(exp_truncated(bad), std::domain_error);
    CHECK_THROWS_AS(log_truncated(dual_zero<Rational>(basis)), std::domain_error);
}

TEST_CASE("character and infinitesimal predicates reject violations") {
    auto basis = TruncatedBasis::make_forests(2, 2, Rational(2, 5));
    CHECK(is_character(dual_counit<Rational>(basis)));
    DualElement<Rational> f(basis, Rational(1));
    int a = basis->index_of("[1]");
    int b = basis->index_of("[2]");
    int ab = basis->index_of("[1][2]");
    f.coeffs[a] = Rational(2);
    f.coeffs[b] = Rational(3);
    f.coeffs[basis->index_of("[1][1]")] = Rational(4);
    f.coeffs[basis->index_of("[2][2]")] = Rational(9);
    f.coeffs[ab] = Rational(5);  // should be 6
    CHECK_FALSE(is_character(f));
    f.coeffs[ab] = Rational(6);
    CHECK(is_character(f));
    DualElement<Rational> g(basis);
    g.coeffs[ab] = Rational(1);
    CHECK_FALSE(is_infinitesimal(g));
    g.coeffs[ab] = Rational(0);
    g.coeffs[a] = Rational(7);
    CHECK(is_infinitesimal(g));
}

TEST_CASE("dilation scales the homogeneous norm linearly") {
    auto basis = TruncatedBasis::make_forests(3, 2, Rational(3, 10));
    SplitMix rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        auto X = exp_truncated(testutil::random_tree_infinitesimal(basis, rng));
        Rational r(static_cast<long long>(rng.below(5)) + 1,
                   static_cast<long long>(rng.below(3)) + 1);
        auto XR = dilate(X, r);
        // dilation of a character is a character, and the norm is homogeneous
        CHECK(is_character(XR));
        double lhs = homogeneous_norm(XR);
        double rhs = r.to_double() * homogeneous_norm(X);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("homogeneous norm is sub-additive on 100 random character pairs") {
    auto basis = TruncatedBasis::make_forests(3, 2, Rational(3, 10));
    SplitMix rng(18);
    for (int trial = 0; trial < 100; ++trial) {
        auto X = exp_truncated(testutil::random_tree_infinitesimal(basis, rng));
        auto Y = exp_truncated(testutil::random_tree_infinitesimal(basis, rng));
        double lhs = homogeneous_norm(convolve(X, Y));
        double rhs = homogeneous_norm(X) + homogeneous_norm(Y);
        CHECK(lhs <= rhs * (1 + 1e-12));
    }
}

TEST_CASE("norm vanishes exactly on the counit") {
    auto basis = TruncatedBasis::make_forests(3, 2, Rational(3, 10));
    CHECK(homogeneous_norm(dual_counit<Rational>(basis)) == 0.0);
    auto wb = TruncatedBasis::make_words_anisotropic(Alphabet::integers(2, Rational(2, 5)));
    CHECK(anisotropic_norm(dual_counit<double>(wb)) == 0.0);
}

TEST_CASE("weighted dilation scales the anisotropic norm") {
    Alphabet a;
    a.names = {"1", "2"};
    a.gammas = {Rational(2, 5), Rational(7, 20)};
    auto basis = TruncatedBasis::make_words_anisotropic(a);
    SplitMix rng(19);
    DualElement<double> X(basis, 1.0);
    for (int i = 0; i < basis->size(); ++i) X.coeffs[i] = rng.real(-1, 1);
    double r = 1.7;
    CHECK(anisotropic_norm(dilate_weighted(X, r)) ==
          doctest::Approx(r * anisotropic_norm(X)).epsilon(1e-12));
}

TEST_CASE("norm constant reflects the coproduct structure") {
    auto b2 = TruncatedBasis::make_forests(2, 1, Rational(2, 5));
    // worst element at N=2, d=1 is the two-dot forest: 2 unit terms + 2 cuts
    CHECK(b2->norm_constant() == 4.0);
}

TEST_CASE("basis mismatch is rejected") {
    auto b1 = TruncatedBasis::make_forests(2, 1, Rational(2, 5));
    auto b2 = TruncatedBasis::make_forests(2, 1, Rational(2, 5));
    DualElement<Rational> f(b1), g(b2);
    CHECK_THROWS_AS(convolve(f, g), std::invalid_argument);
}
