#pragma once

#include <vector>

#include "roughforge/dual.hpp"
#include "roughforge/rp_construct.hpp"

namespace roughforge {

/// Piecewise-linear path with per-letter values at shared breakpoints.
/// With rational breakpoints and values every signature below is exact.
template <class S>
struct PiecewiseLinearPathT {
    std::vector<S> times;                 // strictly increasing, size >= 2
    std::vector<std::vector<S>> values;   // [letter][breakpoint]

    void validate() const {
        if (times.size() < 2) throw std::invalid_argument("need at least two breakpoints");
        for (std::size_t i = 0; i + 1 < times.size(); ++i)
            if (!(times[i] < times[i + 1]))
                throw std::invalid_argument("breakpoint times must be strictly increasing");
        for (const auto& col : values)
            if (col.size() != times.size())
                throw std::invalid_argument("value column length mismatch");
    }

    S value_at(int letter, const S& t) const;  // linear interpolation, clamped
};
using PiecewiseLinearPath = PiecewiseLinearPathT<double>;
using RationalPLPath = PiecewiseLinearPathT<Rational>;

/// Tree factorial |tau| * prod over subtrees.
long long tree_factorial(const DecoratedTree& t);

/// Iterated-integral signature over [s,t] against a word basis: on one
/// linear segment <S, a_1...a_k> = prod Delta x^{a_i} / k!, composed across
/// segments by convolution (Chen).
template <class S>
DualElement<S> signature_character(const PiecewiseLinearPathT<S>& path, const S& s, const S& t,
                                   BasisPtr word_basis);

/// Single coefficient, via the character.
template <class S>
S signature_coeff(const PiecewiseLinearPathT<S>& path, const S& s, const S& t,
                  BasisPtr word_basis, const Word& w);

/// Canonical branched lift of the same path against a forest basis: on one
/// segment <S, tau> = prod_nodes Delta x^{c(v)} / tau!, multiplicative on
/// forests, composed by convolution.
template <class S>
DualElement<S> branched_signature_character(const PiecewiseLinearPathT<S>& path, const S& s,
                                            const S& t, BasisPtr forest_basis);

/// Samples the path on the dyadic grid of the given depth over [0,1].
SampledPath sample_dyadic(const PiecewiseLinearPath& path, int depth, const Alphabet& a);

/// Group path whose states are exact signatures (word or forest basis),
/// evaluated on the dyadic grid over [0,1].
DyadicGroupPath signature_lift(const PiecewiseLinearPath& path, BasisPtr basis, int depth);

}  // namespace roughforge
