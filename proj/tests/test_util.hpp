#pragma once

#include <cstdint>
#include <vector>

#include "roughforge/dual.hpp"

namespace testutil {

// Deterministic PRNG so expected values never drift between runs.
struct SplitMix {
    std::uint64_t state;
    explicit SplitMix(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    // small signed rational p/q with p in [-4,4], q in [1,4]
    roughforge::Rational rational() {
        long long p = static_cast<long long>(below(9)) - 4;
        long long q = static_cast<long long>(below(4)) + 1;
        return roughforge::Rational(p, q);
    }
    double real(double lo, double hi) {
        return lo + (hi - lo) * (next() >> 11) * 0x1.0p-53;
    }
};

// Random infinitesimal character supported on trees (forest bases are free
// over trees, so any tree-supported functional is infinitesimal).
inline roughforge::DualElement<roughforge::Rational> random_tree_infinitesimal(
    const roughforge::BasisPtr& basis, SplitMix& rng) {
    roughforge::DualElement<roughforge::Rational> a(basis);
    for (int i = 0; i < basis->size(); ++i)
        if (basis->forest_at(i).factors().size() == 1) a.coeffs[i] = rng.rational();
    return a;
}

// Random infinitesimal character on a word basis: a rational combination of
// iterated convolution brackets of the letter duals.
inline roughforge::DualElement<roughforge::Rational> random_word_infinitesimal(
    const roughforge::BasisPtr& basis, SplitMix& rng) {
    using E = roughforge::DualElement<roughforge::Rational>;
    std::vector<E> pool;
    for (int p = 0; p < basis->level1_count(); ++p) {
        E e(basis);
        e.coeffs[basis->level1_index(p)] = roughforge::Rational(1);
        pool.push_back(e);
    }
    E acc(basis);
    for (const auto& e : pool) {
        E scaled = e;
        scaled *= rng.rational();
        acc += scaled;
    }
    int extra = 2 * basis->max_degree();
    for (int it = 0; it < extra; ++it) {
        const E& f = pool[rng.below(pool.size())];
        const E& g = pool[rng.below(pool.size())];
        E bracket = convolve(f, g) - convolve(g, f);
        bracket *= rng.rational();
        pool.push_back(bracket);
        acc += pool.back();
    }
    return acc;
}

}  // namespace testutil
