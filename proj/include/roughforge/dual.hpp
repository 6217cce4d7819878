#pragma once

#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "roughforge/basis.hpp"

namespace roughforge {

namespace detail {

template <class S>
S scalar_of(const Rational& r, double d) {
    if constexpr (std::is_same_v<S, Rational>)
        return r;
    else
        return d;
}

template <class S>
bool scalar_is_zero(const S& v, double tol) {
    if constexpr (std::is_same_v<S, Rational>)
        return v.is_zero();
    else
        return std::abs(v) <= tol;
}

template <class S>
double scalar_abs(const S& v) {
    if constexpr (std::is_same_v<S, Rational>)
        return std::abs(v.to_double());
    else
        return std::abs(v);
}

}  // namespace detail

/// Element of the truncated dual algebra: a linear functional on the basis,
/// with the value on the unit stored separately. The scalar mode (exact
/// rational or double) is part of the type; modes never mix.
template <class S>
struct DualElement {
    BasisPtr basis;
    S unit{};
    std::vector<S> coeffs;

    DualElement() = default;
    explicit DualElement(BasisPtr b, S unit_value = S{})
        : basis(std::move(b)), unit(unit_value), coeffs(basis->size(), S{}) {}

    S operator[](int i) const { return coeffs[i]; }
    S& operator[](int i) { return coeffs[i]; }

    DualElement& operator+=(const DualElement& o) {
        require_same_basis(*this, o);
        unit += o.unit;
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
        return *this;
    }
    DualElement& operator-=(const DualElement& o) {
        require_same_basis(*this, o);
        unit -= o.unit;
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
        return *this;
    }
    DualElement& operator*=(const S& c) {
        unit *= c;
        for (auto& v : coeffs) v *= c;
        return *this;
    }
    friend DualElement operator+(DualElement a, const DualElement& b) { return a += b; }
    friend DualElement operator-(DualElement a, const DualElement& b) { return a -= b; }
    friend DualElement operator*(DualElement a, const S& c) { return a *= c; }

    friend bool operator==(const DualElement& a, const DualElement& b) {
        return a.basis == b.basis && a.unit == b.unit && a.coeffs == b.coeffs;
    }

    static void require_same_basis(const DualElement& a, const DualElement& b) {
        if (a.basis != b.basis) throw std::invalid_argument("basis mismatch");
    }
};

template <class S>
DualElement<S> dual_zero(BasisPtr b) {
    return DualElement<S>(std::move(b), S{});
}

/// The counit: 1 on the unit, 0 elsewhere. Neutral element of convolution.
template <class S>
DualElement<S> dual_counit(BasisPtr b) {
    return DualElement<S>(std::move(b), S{1});
}

/// Convolution dual to the coproduct, truncated to the basis. degree_cap
/// forces coefficients above the cap to zero (used by the level-by-level
/// construction); -1 means the basis truncation.
template <class S>
DualElement<S> convolve(const DualElement<S>& f, const DualElement<S>& g, int degree_cap = -1) {
    DualElement<S>::require_same_basis(f, g);
    const TruncatedBasis& b = *f.basis;
    DualElement<S> out(f.basis);
    out.unit = f.unit * g.unit;
    const int n = b.size();
    for (int i = 0; i < n; ++i) {
        if (degree_cap >= 0 && b.degree(i) > degree_cap) continue;
        S acc = f.unit * g.coeffs[i] + f.coeffs[i] * g.unit;
        for (const auto& ct : b.reduced_cop(i))
            acc += detail::scalar_of<S>(ct.coeff, ct.coeff_d) * f.coeffs[ct.left] *
                   g.coeffs[ct.right];
        out.coeffs[i] = acc;
    }
    return out;
}

/// Truncated exponential sum_{k<=cap} alpha^{*k} / k!.
/// Requires <alpha, 1> = 0.
template <class S>
DualElement<S> exp_truncated(const DualElement<S>& alpha, int degree_cap = -1) {
    if (!detail::scalar_is_zero(alpha.unit, 0.0))
        throw std::domain_error("exp requires a functional vanishing on the unit");
    const int cap = degree_cap >= 0 ? degree_cap : alpha.basis->max_degree();
    DualElement<S> acc = dual_counit<S>(alpha.basis);
    DualElement<S> pow = dual_counit<S>(alpha.basis);
    Rational fact(1);
    for (int k = 1; k <= cap; ++k) {
        pow = convolve(pow, alpha, cap);
        fact *= Rational(k);
        S scale = detail::scalar_of<S>(Rational(1) / fact, 1.0 / fact.to_double());
        DualElement<S> term = pow;
        term *= scale;
        acc += term;
    }
    acc.unit = S{1};
    return acc;
}

/// Truncated logarithm sum_{k<=cap} (-1)^{k+1} (X - counit)^{*k} / k.
/// Requires <X, 1> = 1.
template <class S>
DualElement<S> log_truncated(const DualElement<S>& x, int degree_cap = -1) {
    if (!detail::scalar_is_zero(x.unit - S{1}, 0.0))
        throw std::domain_error("log requires a functional taking 1 on the unit");
    const int cap = degree_cap >= 0 ? degree_cap : x.basis->max_degree();
    DualElement<S> y = x;
    y.unit = S{};
    for (int i = 0; i < y.basis->size(); ++i)
        if (y.basis->degree(i) > cap) y.coeffs[i] = S{};
    DualElement<S> acc = y;
    DualElement<S> pow = y;
    for (int k = 2; k <= cap; ++k) {
        pow = convolve(pow, y, cap);
        Rational c = Rational(k % 2 == 0 ? -1 : 1) / Rational(k);
        S scale = detail::scalar_of<S>(c, c.to_double());
        DualElement<S> term = pow;
        term *= scale;
        acc += term;
    }
    acc.unit = S{};
    return acc;
}

/// Character inverse X^{-1} = X o S via the antipode table.
template <class S>
DualElement<S> antipode_pullback(const DualElement<S>& x) {
    const TruncatedBasis& b = *x.basis;
    DualElement<S> out(x.basis);
    out.unit = x.unit;
    for (int i = 0; i < b.size(); ++i) {
        S acc{};
        for (const auto& t : b.antipode_terms(i))
            acc += detail::scalar_of<S>(t.coeff, t.coeff_d) * x.coeffs[t.index];
        out.coeffs[i] = acc;
    }
    return out;
}

/// Multiplicativity check on all basis products staying inside the
/// truncation. tol is ignored in rational mode.
template <class S>
bool is_character(const DualElement<S>& f, double tol = 0.0) {
    if (!detail::scalar_is_zero(f.unit - S{1}, tol)) return false;
    const TruncatedBasis& b = *f.basis;
    for (int i = 0; i < b.size(); ++i)
        for (int j = i; j < b.size(); ++j) {
            auto prod = b.product(i, j);
            if (!prod) continue;
            S lhs{};
            for (const auto& t : *prod)
                lhs += detail::scalar_of<S>(t.coeff, t.coeff_d) * f.coeffs[t.index];
            if (!detail::scalar_is_zero(lhs - f.coeffs[i] * f.coeffs[j], tol)) return false;
        }
    return true;
}

/// Leibniz-rule check: vanishes on the unit and on every in-truncation
/// product of two non-unit basis elements.
template <class S>
bool is_infinitesimal(const DualElement<S>& f, double tol = 0.0) {
    if (!detail::scalar_is_zero(f.unit, tol)) return false;
    const TruncatedBasis& b = *f.basis;
    for (int i = 0; i < b.size(); ++i)
        for (int j = i; j < b.size(); ++j) {
            auto prod = b.product(i, j);
            if (!prod) continue;
            S lhs{};
            for (const auto& t : *prod)
                lhs += detail::scalar_of<S>(t.coeff, t.coeff_d) * f.coeffs[t.index];
            if (!detail::scalar_is_zero(lhs, tol)) return false;
        }
    return true;
}

/// Degree-graded dilation: scales degree-k coefficients by r^k.
template <class S>
DualElement<S> dilate(const DualElement<S>& f, const S& r) {
    DualElement<S> out = f;
    for (int i = 0; i < f.basis->size(); ++i) {
        S p{1};
        for (int k = 0; k < f.basis->degree(i); ++k) p *= r;
        out.coeffs[i] = f.coeffs[i] * p;
    }
    return out;
}

/// Weighted dilation: scales the coefficient on v by r^{omega(v)}.
inline DualElement<double> dilate_weighted(const DualElement<double>& f, double r) {
    DualElement<double> out = f;
    for (int i = 0; i < f.basis->size(); ++i)
        out.coeffs[i] = f.coeffs[i] * std::pow(r, f.basis->omega(i).to_double());
    return out;
}

/// Homogeneous norm on the truncated character group:
/// |X| = max_k (k! D sup_{|v|=k} |<X,v>|)^{1/k} + the same for X^{-1}.
template <class S>
double homogeneous_norm(const DualElement<S>& x) {
    const TruncatedBasis& b = *x.basis;
    DualElement<S> inv = antipode_pullback(x);
    auto level_part = [&](const DualElement<S>& f) {
        double best = 0.0;
        Rational fact(1);
        for (int k = 1; k <= b.max_degree(); ++k) {
            fact *= Rational(k);
            double sup = 0.0;
            for (int i : b.elements_of_degree(k))
                sup = std::max(sup, detail::scalar_abs(f.coeffs[i]));
            double val = fact.to_double() * b.norm_constant() * sup;
            if (val > 0.0) best = std::max(best, std::pow(val, 1.0 / k));
        }
        return best;
    };
    return level_part(x) + level_part(inv);
}

/// Anisotropic homogeneous norm max_v (l(v)! |<X,v>|)^{1/omega(v)}.
template <class S>
double anisotropic_norm(const DualElement<S>& x) {
    const TruncatedBasis& b = *x.basis;
    double best = 0.0;
    for (int i = 0; i < b.size(); ++i) {
        double val = rational_factorial(b.degree(i)).to_double() *
                     detail::scalar_abs(x.coeffs[i]);
        if (val > 0.0) best = std::max(best, std::pow(val, 1.0 / b.omega(i).to_double()));
    }
    return best;
}

inline DualElement<double> to_double_element(const DualElement<Rational>& f) {
    DualElement<double> out(f.basis);
    out.unit = f.unit.to_double();
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) out.coeffs[i] = f.coeffs[i].to_double();
    return out;
}

}  // namespace roughforge
