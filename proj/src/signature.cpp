#include "roughforge/signature.hpp"

#include <algorithm>
#include <stdexcept>

namespace roughforge {

template <class S>
S PiecewiseLinearPathT<S>::value_at(int letter, const S& t) const {
    const auto& col = values.at(letter);
    if (!(times.front() < t)) return col.front();
    if (!(t < times.back())) return col.back();
    std::size_t i = 0;
    while (!(t < times[i + 1])) ++i;
    S span = times[i + 1] - times[i];
    S frac = (t - times[i]) / span;
    return col[i] + (col[i + 1] - col[i]) * frac;
}

template double PiecewiseLinearPathT<double>::value_at(int, const double&) const;
template Rational PiecewiseLinearPathT<Rational>::value_at(int, const Rational&) const;

long long tree_factorial(const DecoratedTree& t) {
    long long f = t.size();
    for (const auto& c : t.children()) f *= tree_factorial(c);
    return f;
}

namespace {

// Segment characters: linear motion between two sample points.
template <class S>
DualElement<S> word_segment_character(const TruncatedBasis& b, BasisPtr bp,
                                      const std::vector<S>& delta) {
    DualElement<S> out(bp, S{1});
    for (int i = 0; i < b.size(); ++i) {
        const Word& w = b.word_at(i);
        S prod{1};
        for (int l : w.letters) prod *= delta[l];
        Rational fact = rational_factorial(w.length());
        out.coeffs[i] = prod * detail::scalar_of<S>(Rational(1) / fact, 1.0 / fact.to_double());
    }
    return out;
}

template <class S>
DualElement<S> forest_segment_character(const TruncatedBasis& b, BasisPtr bp,
                                        const std::vector<S>& delta) {
    DualElement<S> out(bp, S{1});
    for (int i = 0; i < b.size(); ++i) {
        const DecoratedForest& f = b.forest_at(i);
        S prod{1};
        Rational fact(1);
        for (const auto& t : f.factors()) {
            fact *= Rational(tree_factorial(t));
            std::vector<const DecoratedTree*> stack{&t};
            while (!stack.empty()) {
                const DecoratedTree* node = stack.back();
                stack.pop_back();
                prod *= delta[node->decoration() - (b.zero_decorated() ? 0 : 1)];
                for (const auto& c : node->children()) stack.push_back(&c);
            }
        }
        out.coeffs[i] = prod * detail::scalar_of<S>(Rational(1) / fact, 1.0 / fact.to_double());
    }
    return out;
}

template <class S>
std::vector<S> segment_deltas(const PiecewiseLinearPathT<S>& path, const S& a, const S& c) {
    std::vector<S> delta(path.values.size());
    for (std::size_t l = 0; l < path.values.size(); ++l)
        delta[l] = path.value_at(static_cast<int>(l), c) - path.value_at(static_cast<int>(l), a);
    return delta;
}

template <class S>
DualElement<S> signature_impl(const PiecewiseLinearPathT<S>& path, const S& s, const S& t,
                              BasisPtr basis) {
    path.validate();
    if (!(s < t)) throw std::invalid_argument("signature requires s < t");
    const TruncatedBasis& b = *basis;
    const bool words = b.kind() == TruncatedBasis::Kind::words;
    if (static_cast<int>(path.values.size()) != b.level1_count())
        throw std::invalid_argument("path letters do not match the basis level-1 dimension");

    // Split [s,t] at interior breakpoints, one segment at a time.
    std::vector<S> cuts{s};
    for (const auto& bp : path.times)
        if (s < bp && bp < t) cuts.push_back(bp);
    cuts.push_back(t);

    DualElement<S> acc = dual_counit<S>(basis);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        std::vector<S> delta = segment_deltas(path, cuts[i], cuts[i + 1]);
        DualElement<S> seg = words ? word_segment_character<S>(b, basis, delta)
                                   : forest_segment_character<S>(b, basis, delta);
        acc = convolve(acc, seg);
    }
    return acc;
}

}  // namespace

template <class S>
DualElement<S> signature_character(const PiecewiseLinearPathT<S>& path, const S& s, const S& t,
                                   BasisPtr word_basis) {
    if (word_basis->kind() != TruncatedBasis::Kind::words)
        throw std::invalid_argument("signature_character requires a word basis");
    return signature_impl(path, s, t, word_basis);
}

template <class S>
S signature_coeff(const PiecewiseLinearPathT<S>& path, const S& s, const S& t,
                  BasisPtr word_basis, const Word& w) {
    DualElement<S> sig = signature_character(path, s, t, word_basis);
    int idx = word_basis->index_of(word_str(word_basis->alphabet(), w));
    if (idx < 0) throw std::out_of_range("word outside the basis");
    return sig.coeffs[idx];
}

template <class S>
DualElement<S> branched_signature_character(const PiecewiseLinearPathT<S>& path, const S& s,
                                            const S& t, BasisPtr forest_basis) {
    if (forest_basis->kind() != TruncatedBasis::Kind::forests)
        throw std::invalid_argument("branched signature requires a forest basis");
    return signature_impl(path, s, t, forest_basis);
}

template DualElement<double> signature_character(const PiecewiseLinearPath&, const double&,
                                                 const double&, BasisPtr);
template DualElement<Rational> signature_character(const RationalPLPath&, const Rational&,
                                                   const Rational&, BasisPtr);
template double signature_coeff(const PiecewiseLinearPath&, const double&, const double&,
                                BasisPtr, const Word&);
template Rational signature_coeff(const RationalPLPath&, const Rational&, const Rational&,
                                  BasisPtr, const Word&);
template DualElement<double> branched_signature_character(const PiecewiseLinearPath&,
                                                          const double&, const double&,
                                                          BasisPtr);
template DualElement<Rational> branched_signature_character(const RationalPLPath&,
                                                            const Rational&, const Rational&,
                                                            BasisPtr);

SampledPath sample_dyadic(const PiecewiseLinearPath& path, int depth, const Alphabet& a) {
    path.validate();
    SampledPath out;
    out.depth = depth;
    out.alphabet = a;
    out.values.assign(path.values.size(), std::vector<double>(out.points()));
    for (std::size_t l = 0; l < path.values.size(); ++l)
        for (int k = 0; k < out.points(); ++k)
            out.values[l][k] =
                path.value_at(static_cast<int>(l), static_cast<double>(k) / (out.points() - 1));
    return out;
}

DyadicGroupPath signature_lift(const PiecewiseLinearPath& path, BasisPtr basis, int depth) {
    path.validate();
    DyadicGroupPath out;
    out.basis = basis;
    out.depth = depth;
    out.level = basis->max_degree();
    out.config_tag = "signature";
    out.states.reserve(out.points());
    out.states.push_back(dual_counit<double>(basis));
    const int pts = out.points();
    for (int k = 1; k < pts; ++k) {
        double a = static_cast<double>(k - 1) / (pts - 1);
        double b = static_cast<double>(k) / (pts - 1);
        DualElement<double> seg = signature_impl(path, a, b, basis);
        out.states.push_back(convolve(out.states.back(), seg));
    }
    return out;
}

}  // namespace roughforge
