#pragma once

#include <span>
#include <vector>

#include "roughforge/dual.hpp"

namespace roughforge {

/// Row of the descent-coefficient table for S_k: a permutation in one-line
/// notation, its descent number d, and a_sigma = (-1)^d / (k binom(k-1,d)).
struct PermutationRow {
    std::vector<int> perm;  // one-line, values 1..k
    int descents;
    Rational a;
    double a_d;
};

/// All k! rows for S_k, cached per k. Hard cap k <= 6 (720 rows).
const std::vector<PermutationRow>& descent_coefficients(int k);

inline constexpr int kBchCap = 6;

namespace detail {

/// Adds the order-k BCH term sum_{i+j=k} phi_k(a^(x)i (x) b^(x)j)/(i!j!)
/// into `out`, evaluating the permutation sums against the arity-k reduced
/// splits. Only basis elements with degree in [k, degree_cap] and, when
/// `top_only` is set, exactly degree_cap, are touched.
template <class S>
void add_bch_order(const TruncatedBasis& b, int k, const DualElement<S>& alpha,
                   const DualElement<S>& beta, int degree_cap, bool top_only,
                   DualElement<S>& out) {
    const auto& rows = descent_coefficients(k);
    std::vector<Rational> inv_fact(k + 1);
    std::vector<double> inv_fact_d(k + 1);
    for (int i = 0; i <= k; ++i) {
        inv_fact[i] = Rational(1) / (rational_factorial(i) * rational_factorial(k - i));
        inv_fact_d[i] = inv_fact[i].to_double();
    }
    const int lo = top_only ? degree_cap : k;
    for (int deg = lo; deg <= degree_cap; ++deg) {
        for (int e : b.elements_of_degree(deg)) {
            S total{};
            for (const auto& split : b.splits(e, k)) {
                S split_sum{};
                for (int i = 0; i <= k; ++i) {
                    S perm_sum{};
                    for (const auto& row : rows) {
                        S prod{1};
                        for (int j = 0; j < k; ++j) {
                            int slot = split.slots[j];
                            prod *= row.perm[j] <= i ? alpha.coeffs[slot] : beta.coeffs[slot];
                        }
                        perm_sum += scalar_of<S>(row.a, row.a_d) * prod;
                    }
                    split_sum += scalar_of<S>(inv_fact[i], inv_fact_d[i]) * perm_sum;
                }
                total += scalar_of<S>(split.coeff, split.coeff_d) * split_sum;
            }
            out.coeffs[e] += total;
        }
    }
}

}  // namespace detail

/// The descent-coefficient permutation sum
/// phi_k(a_1 (x) ... (x) a_k) = sum_sigma a_sigma a_{sigma(1)} * ... *
/// a_{sigma(k)}, evaluated against the iterated reduced coproduct. Vanishes
/// on elements of degree below k.
template <class S>
DualElement<S> phi_k(std::span<const DualElement<S>> alphas, bool validate = true) {
    if (alphas.empty()) throw std::invalid_argument("phi_k needs at least one functional");
    const int k = static_cast<int>(alphas.size());
    if (k > kBchCap) throw std::domain_error("phi_k order above the permutation-table cap");
    BasisPtr basis = alphas[0].basis;
    const double tol = std::is_same_v<S, Rational> ? 0.0 : 1e-9;
    for (const auto& a : alphas) {
        if (a.basis != basis) throw std::invalid_argument("basis mismatch");
        if (validate && !is_infinitesimal(a, tol))
            throw std::domain_error("phi_k requires infinitesimal characters");
    }
    const TruncatedBasis& b = *basis;
    const auto& rows = descent_coefficients(k);
    DualElement<S> out(basis);
    for (int deg = k; deg <= b.max_degree(); ++deg) {
        for (int e : b.elements_of_degree(deg)) {
            S total{};
            for (const auto& split : b.splits(e, k)) {
                S perm_sum{};
                for (const auto& row : rows) {
                    S prod{1};
                    for (int j = 0; j < k; ++j)
                        prod *= alphas[row.perm[j] - 1].coeffs[split.slots[j]];
                    perm_sum += detail::scalar_of<S>(row.a, row.a_d) * prod;
                }
                total += detail::scalar_of<S>(split.coeff, split.coeff_d) * perm_sum;
            }
            out.coeffs[e] = total;
        }
    }
    return out;
}

/// Order-k homogeneous BCH term sum_{i+j=k} phi_k(alpha^(x)i (x)
/// beta^(x)j) / (i! j!).
template <class S>
DualElement<S> bch_term(const DualElement<S>& alpha, const DualElement<S>& beta, int k,
                        bool validate = true) {
    DualElement<S>::require_same_basis(alpha, beta);
    if (k < 1 || k > kBchCap) throw std::domain_error("bch_term order outside [1, cap]");
    const double tol = std::is_same_v<S, Rational> ? 0.0 : 1e-9;
    if (validate && (!is_infinitesimal(alpha, tol) || !is_infinitesimal(beta, tol)))
        throw std::domain_error("bch requires infinitesimal characters");
    DualElement<S> out(alpha.basis);
    if (k > alpha.basis->max_degree()) return out;
    detail::add_bch_order(*alpha.basis, k, alpha, beta, alpha.basis->max_degree(), false, out);
    return out;
}

/// Truncated BCH operator: the order terms summed up to N. Satisfies
/// exp(alpha) * exp(beta) = exp(bch(alpha, beta, N)) on the truncation,
/// exactly in rational mode.
template <class S>
DualElement<S> bch(const DualElement<S>& alpha, const DualElement<S>& beta, int N,
                   bool validate = true) {
    DualElement<S>::require_same_basis(alpha, beta);
    if (N < 1 || N > alpha.basis->max_degree())
        throw std::domain_error("bch truncation outside the basis");
    if (N > kBchCap) throw std::domain_error("bch order above the permutation-table cap");
    const double tol = std::is_same_v<S, Rational> ? 0.0 : 1e-9;
    if (validate && (!is_infinitesimal(alpha, tol) || !is_infinitesimal(beta, tol)))
        throw std::domain_error("bch requires infinitesimal characters");
    DualElement<S> out(alpha.basis);
    for (int k = 1; k <= N; ++k) detail::add_bch_order(*alpha.basis, k, alpha, beta, N, false, out);
    return out;
}

/// The degree-`level` component of bch(alpha, beta, level) alone, written
/// onto a functional supported at that degree. This is the correction the
/// dyadic extension subtracts at each halving step.
template <class S>
DualElement<S> bch_component(const DualElement<S>& alpha, const DualElement<S>& beta,
                             int level) {
    DualElement<S>::require_same_basis(alpha, beta);
    if (level < 1 || level > alpha.basis->max_degree())
        throw std::domain_error("bch component outside the basis");
    if (level > kBchCap) throw std::domain_error("bch order above the permutation-table cap");
    DualElement<S> out(alpha.basis);
    for (int k = 1; k <= level; ++k)
        detail::add_bch_order(*alpha.basis, k, alpha, beta, level, true, out);
    return out;
}

}  // namespace roughforge
