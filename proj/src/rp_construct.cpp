#include "roughforge/rp_construct.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace roughforge {

void require_gamma_valid(const Rational& gamma) {
    if (!(Rational(0) < gamma && gamma < Rational(1)))
        throw std::domain_error("gamma outside (0,1)");
    // gamma = p/q reduced: 1/gamma integer iff p divides q.
    if (gamma.den() % gamma.num() == 0)
        throw std::domain_error("gamma inverse is an integer");
}

namespace {

// Enumerates sums n_1 g_1 + ... + n_r g_r <= 1 with n_i >= 0, exact.
bool lattice_hits_one(const std::vector<Rational>& gs, std::size_t from, const Rational& acc) {
    if (acc == Rational(1)) return true;
    for (std::size_t i = from; i < gs.size(); ++i) {
        Rational next = acc + gs[i];
        if (next > Rational(1)) continue;
        if (lattice_hits_one(gs, i, next)) return true;
    }
    return false;
}

}  // namespace

void require_exponents_valid(const Alphabet& a) {
    a.validate();
    std::vector<Rational> gs = a.gammas;
    std::sort(gs.begin(), gs.end());
    gs.erase(std::unique(gs.begin(), gs.end()), gs.end());
    if (lattice_hits_one(gs, 0, Rational(0)))
        throw std::domain_error("1 lies in the additive lattice of the exponents");
}

namespace detail {

template <class S>
double weighted_sup_impl(const TruncatedBasis& b, const DualElement<S>& f, int level,
                         int scale) {
    double best = 0.0;
    for (int e : b.elements_of_degree(level)) {
        double mag = scalar_abs(f.coeffs[e]);
        if (mag == 0.0) continue;
        best = std::max(best, mag * std::pow(2.0, scale * b.gamma_weight(e).to_double()));
    }
    return best;
}

double weighted_sup(const TruncatedBasis& b, const DualElement<double>& f, int level,
                    int scale) {
    return weighted_sup_impl(b, f, level, scale);
}

double weighted_sup(const TruncatedBasis& b, const DualElement<Rational>& f, int level,
                    int scale) {
    return weighted_sup_impl(b, f, level, scale);
}

}  // namespace detail

DyadicGroupPath build_isotropic(const SampledPath& x, const Rational& gamma, int N,
                                TruncatedBasis::Kind algebra, const BuildConfig& cfg) {
    require_gamma_valid(gamma);
    x.validate();
    const long long nmax = gamma.floor_inverse();
    if (N < 1 || N > nmax)
        throw std::domain_error("truncation level outside [1, floor(1/gamma)]");
    BasisPtr basis;
    if (algebra == TruncatedBasis::Kind::forests) {
        basis = TruncatedBasis::make_forests(N, x.alphabet.size(), gamma);
    } else {
        Alphabet a = x.alphabet;
        for (auto& g : a.gammas) g = gamma;
        basis = TruncatedBasis::make_words(a, N);
    }
    return build_rough_path(x, basis, cfg);
}

DyadicGroupPath build_anisotropic(const SampledPath& x, const BuildConfig& cfg) {
    x.validate();
    require_exponents_valid(x.alphabet);
    BasisPtr basis = TruncatedBasis::make_words_anisotropic(x.alphabet);
    return build_rough_path(x, basis, cfg);
}

bool HolderReport::all_finite() const {
    for (double c : constants)
        if (!std::isfinite(c)) return false;
    return true;
}

namespace {

HolderReport holder_report_exponents(const DyadicGroupPath& x, std::vector<double> exps,
                                     ExecPolicy policy) {
    const TruncatedBasis& b = *x.basis;
    const int pts = x.points();
    const int n = b.size();
    HolderReport rep;
    rep.basis = x.basis;
    rep.exponents = std::move(exps);
    rep.constants.assign(n, 0.0);

    std::vector<DualElement<double>> inv(pts, DualElement<double>(x.basis));
    const bool omp = policy == ExecPolicy::parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (omp)
#endif
    for (int s = 0; s < pts; ++s) inv[s] = antipode_pullback(x.states[s]);

#ifdef _OPENMP
#pragma omp parallel if (omp)
#endif
    {
        std::vector<double> local(n, 0.0);
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 8)
#endif
        for (int s = 0; s < pts - 1; ++s) {
            for (int t = s + 1; t < pts; ++t) {
                DualElement<double> incr = convolve(inv[s], x.states[t]);
                const double dt = static_cast<double>(t - s) / (pts - 1);
                for (int e = 0; e < n; ++e) {
                    double ratio = std::abs(incr.coeffs[e]) / std::pow(dt, rep.exponents[e]);
                    local[e] = std::max(local[e], ratio);
                }
            }
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        for (int e = 0; e < n; ++e) rep.constants[e] = std::max(rep.constants[e], local[e]);
    }
    (void)omp;
    return rep;
}

}  // namespace

HolderReport holder_report(const DyadicGroupPath& x, ExecPolicy policy) {
    const TruncatedBasis& b = *x.basis;
    std::vector<double> exps(b.size());
    for (int e = 0; e < b.size(); ++e) exps[e] = b.gamma_weight(e).to_double();
    return holder_report_exponents(x, std::move(exps), policy);
}

HolderReport holder_report_weighted_zero(const DyadicGroupPath& x, const Rational& gamma,
                                         ExecPolicy policy) {
    const TruncatedBasis& b = *x.basis;
    if (b.kind() != TruncatedBasis::Kind::forests)
        throw std::invalid_argument("zero-weighted report requires a forest basis");
    std::vector<double> exps(b.size());
    for (int e = 0; e < b.size(); ++e) {
        const DecoratedForest& f = b.forest_at(e);
        int zeros = 0;
        // count zero-decorated nodes
        std::vector<const DecoratedTree*> stack;
        for (const auto& t : f.factors()) stack.push_back(&t);
        while (!stack.empty()) {
            const DecoratedTree* t = stack.back();
            stack.pop_back();
            if (t->decoration() == 0) ++zeros;
            for (const auto& c : t->children()) stack.push_back(&c);
        }
        exps[e] = (Rational(1) - gamma).to_double() * zeros +
                  gamma.to_double() * f.size();
    }
    return holder_report_exponents(x, std::move(exps), policy);
}

ChenReport chen_check(const DyadicGroupPath& x, bool all_triples, ExecPolicy policy) {
    const TruncatedBasis& b = *x.basis;
    const int pts = x.points();
    const int n = b.size();
    ChenReport rep;

    std::vector<DualElement<double>> inv(pts, DualElement<double>(x.basis));
    const bool omp = policy == ExecPolicy::parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (omp)
#endif
    for (int s = 0; s < pts; ++s) inv[s] = antipode_pullback(x.states[s]);

    auto residual = [&](int s, int u, int t) {
        DualElement<double> xsu = convolve(inv[s], x.states[u]);
        DualElement<double> xut = convolve(inv[u], x.states[t]);
        DualElement<double> xst = convolve(inv[s], x.states[t]);
        DualElement<double> prod = convolve(xsu, xut);
        double worst = 0.0;
        for (int e = 0; e < n; ++e) {
            double denom = std::max(1.0, std::abs(xst.coeffs[e]));
            worst = std::max(worst, std::abs(prod.coeffs[e] - xst.coeffs[e]) / denom);
        }
        return worst;
    };

    if (all_triples) {
        long long count = 0;
        double worst = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) reduction(max : worst) reduction(+ : count) \
    if (omp)
#endif
        for (int s = 0; s < pts - 2; ++s) {
            for (int u = s + 1; u < pts - 1; ++u)
                for (int t = u + 1; t < pts; ++t) {
                    worst = std::max(worst, residual(s, u, t));
                    ++count;
                }
        }
        rep.max_rel_residual = worst;
        rep.triples = count;
    } else {
        double worst = 0.0;
        long long count = 0;
        for (int u = 1; u < pts - 1; ++u)
            for (int t = u + 1; t < pts; ++t) {
                worst = std::max(worst, residual(0, u, t));
                ++count;
            }
        // consecutive same-scale triples at every dyadic scale
        for (int m = 1; (1 << m) <= pts - 1; ++m) {
            const int step = (pts - 1) >> m;
            if (step * (1 << m) != pts - 1) break;
            for (int j = 0; j + 2 <= (1 << m); j += 2) {
                worst = std::max(worst, residual(j * step, (j + 1) * step, (j + 2) * step));
                ++count;
            }
        }
        rep.max_rel_residual = worst;
        rep.triples = count;
    }
    return rep;
}

double character_residual(const DyadicGroupPath& x, ExecPolicy policy) {
    const TruncatedBasis& b = *x.basis;
    const int pts = x.points();
    double worst = 0.0;
    const bool omp = policy == ExecPolicy::parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : worst) if (omp)
#endif
    for (int s = 0; s < pts; ++s) {
        const auto& st = x.states[s];
        double local = std::abs(st.unit - 1.0);
        for (int i = 0; i < b.size(); ++i)
            for (int j = i; j < b.size(); ++j) {
                const auto* prod = b.product(i, j);
                if (!prod) continue;
                double lhs = 0.0;
                for (const auto& t : *prod) lhs += t.coeff_d * st.coeffs[t.index];
                double rhs = st.coeffs[i] * st.coeffs[j];
                local = std::max(local,
                                 std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
            }
        worst = std::max(worst, local);
    }
    return worst;
}

DyadicGroupPath restrict_depth(const DyadicGroupPath& x, int depth) {
    if (depth < 0 || depth > x.depth) throw std::invalid_argument("restriction depth invalid");
    DyadicGroupPath out;
    out.basis = x.basis;
    out.depth = depth;
    out.level = x.level;
    out.split_weight = x.split_weight;
    out.config_tag = x.config_tag;
    const int stride = 1 << (x.depth - depth);
    out.states.reserve((1 << depth) + 1);
    for (int k = 0; k <= (1 << depth); ++k) out.states.push_back(x.states[k * stride]);
    return out;
}

}  // namespace roughforge
