#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "roughforge/bch.hpp"
#include "roughforge/dual.hpp"

namespace roughforge {

enum class ExecPolicy { serial, parallel };

/// One-variable path sampled at every dyadic point of depth M: per letter,
/// 2^M + 1 values. Increments are what matter; the base point is arbitrary.
template <class S>
struct SampledPathT {
    int depth = 0;
    Alphabet alphabet;
    std::vector<std::vector<S>> values;  // [letter][grid point]

    int points() const { return (1 << depth) + 1; }
    void validate() const {
        alphabet.validate();
        if (depth < 0 || depth > 20) throw std::invalid_argument("unsupported depth");
        if (static_cast<int>(values.size()) != alphabet.size())
            throw std::invalid_argument("sample columns do not match the alphabet");
        for (const auto& col : values)
            if (static_cast<int>(col.size()) != points())
                throw std::invalid_argument("sample column length is not 2^M + 1");
    }
};
using SampledPath = SampledPathT<double>;

/// Construction knobs. The dyadic recursion fixes two free choices: the
/// initial correction per level (default zero) and the left/right split
/// weight (default 1/2). Different choices give different, equally valid
/// rough paths.
template <class S>
struct BuildConfigT {
    Rational split_weight{1, 2};
    std::map<int, std::map<std::string, S>> z_init;  // level -> element name -> value
    ExecPolicy policy = ExecPolicy::parallel;
    bool reference = false;  // straightforward serial route, kept for testing

    std::string tag() const;  // canonical form for construction-equality checks
};
using BuildConfig = BuildConfigT<double>;

struct LevelDiagnostics {
    int level = 0;
    std::vector<double> z_norms;    // weighted sup of Z per dyadic scale
    std::vector<double> bch_norms;  // weighted sup of the BCH correction per scale
    bool recursion_bounded = true;  // a_{m+1} <= max(l,1-l) 2^w (a_m + c_m) check
};

/// Group-valued path on the dyadic grid; states[0] is the counit and
/// X_st := states[s]^{-1} * states[t] satisfies Chen's rule by construction.
template <class S>
struct GroupPathT {
    BasisPtr basis;
    int depth = 0;
    int level = 0;  // degrees <= level are constructed
    std::vector<DualElement<S>> states;
    Rational split_weight{1, 2};
    std::string config_tag;
    std::vector<LevelDiagnostics> diagnostics;

    int points() const { return (1 << depth) + 1; }
    DualElement<S> increment(int s, int t) const {
        return convolve(antipode_pullback(states[s]), states[t]);
    }
};
using DyadicGroupPath = GroupPathT<double>;

/// gamma^{-1} must not be an integer (exact check on the rational).
void require_gamma_valid(const Rational& gamma);
/// 1 must not lie in the additive lattice sum_a gamma_a N (exact check).
void require_exponents_valid(const Alphabet& a);

namespace detail {

template <class S>
DualElement<S> make_z_init(const BasisPtr& basis, int level, const BuildConfigT<S>& cfg) {
    DualElement<S> z(basis);
    auto it = cfg.z_init.find(level);
    if (it == cfg.z_init.end()) return z;
    for (const auto& [name, value] : it->second) {
        int idx = basis->index_of(name);
        if (idx < 0 || basis->degree(idx) != level)
            throw std::invalid_argument("z_init entry is not a degree-" + std::to_string(level) +
                                        " basis element: " + name);
        z.coeffs[idx] = value;
    }
    // The correction must vanish on products to stay an infinitesimal
    // character at the top degree.
    const TruncatedBasis& b = *basis;
    for (int i = 0; i < b.size(); ++i)
        for (int j = i; j < b.size(); ++j) {
            const auto* prod = b.product(i, j);
            if (!prod) continue;
            S acc{};
            for (const auto& t : *prod) acc += scalar_of<S>(t.coeff, t.coeff_d) * z.coeffs[t.index];
            if (!scalar_is_zero(acc, 1e-12))
                throw std::invalid_argument("z_init does not vanish on products");
        }
    return z;
}

double weighted_sup(const TruncatedBasis& b, const DualElement<double>& f, int level, int scale);
double weighted_sup(const TruncatedBasis& b, const DualElement<Rational>& f, int level,
                    int scale);

}  // namespace detail

/// Level-1 initialization: <X_t, e_p> = x^p_t - x^p_0 on the abelian level.
template <class S>
GroupPathT<S> init_level1(const SampledPathT<S>& path, BasisPtr basis,
                          const BuildConfigT<S>& cfg) {
    path.validate();
    if (basis->level1_count() != path.alphabet.size())
        throw std::invalid_argument("alphabet size does not match the basis level-1 dimension");
    GroupPathT<S> out;
    out.basis = basis;
    out.depth = path.depth;
    out.level = 1;
    out.split_weight = cfg.split_weight;
    out.config_tag = cfg.tag();
    out.states.assign(path.points(), dual_counit<S>(basis));
    for (int p = 0; p < path.alphabet.size(); ++p) {
        const int idx = basis->level1_index(p);
        const auto& col = path.values[p];
        for (int t = 0; t < path.points(); ++t) out.states[t].coeffs[idx] = col[t] - col[0];
    }
    return out;
}

/// One step of the dyadic extension: fills the degree level+1 components.
/// The correction Z is defined scale by scale, starting from the configured
/// top-level value and halving with
///   Z_left = w (Z_parent - B), Z_right = (1-w) (Z_parent - B),
/// where B is the top-degree component of the truncated BCH of the two
/// half-interval logarithms. States are then rebuilt along the grid; lower
/// degrees are never rewritten.
template <class S>
void extend_level(GroupPathT<S>& path, const BuildConfigT<S>& cfg);

/// Level-1 init followed by extension up to the basis truncation.
template <class S>
GroupPathT<S> build_rough_path(const SampledPathT<S>& path, BasisPtr basis,
                               const BuildConfigT<S>& cfg) {
    GroupPathT<S> out = init_level1(path, basis, cfg);
    for (int lvl = 2; lvl <= basis->max_degree(); ++lvl) extend_level(out, cfg);
    return out;
}

/// Lift over the Butcher-Connes-Kreimer forests (branched) or the shuffle
/// words (geometric), with one exponent gamma for every letter.
DyadicGroupPath build_isotropic(const SampledPath& x, const Rational& gamma, int N,
                                TruncatedBasis::Kind algebra, const BuildConfig& cfg = {});

/// Lift over the weight-bounded word set with per-letter exponents.
DyadicGroupPath build_anisotropic(const SampledPath& x, const BuildConfig& cfg = {});

struct HolderReport {
    BasisPtr basis;
    std::vector<double> exponents;  // per element: its total exponent weight
    std::vector<double> constants;  // sup |<X_st, v>| / (t-s)^exponent
    bool all_finite() const;
};

/// Exact sup over all dyadic pairs at the stored depth.
HolderReport holder_report(const DyadicGroupPath& x, ExecPolicy policy = ExecPolicy::parallel);

/// Same sup with the exponent (1-gamma)|tau|_0 + gamma|tau| used by the
/// translation-bound check on zero-decorated trees.
HolderReport holder_report_weighted_zero(const DyadicGroupPath& x, const Rational& gamma,
                                         ExecPolicy policy = ExecPolicy::parallel);

struct ChenReport {
    double max_rel_residual = 0.0;
    long long triples = 0;
};

/// Residual of X_su * X_ut = X_st over dyadic triples; all triples when
/// `all_triples`, otherwise the anchored family (0, s, t) plus consecutive
/// same-scale triples.
ChenReport chen_check(const DyadicGroupPath& x, bool all_triples = true,
                      ExecPolicy policy = ExecPolicy::parallel);

/// Worst multiplicativity defect over all states and in-truncation products.
double character_residual(const DyadicGroupPath& x, ExecPolicy policy = ExecPolicy::parallel);

/// Restriction to a coarser dyadic grid (every 2^(M-depth)-th state).
DyadicGroupPath restrict_depth(const DyadicGroupPath& x, int depth);

// --- template implementation ---

template <class S>
std::string BuildConfigT<S>::tag() const {
    std::string out = "w=" + split_weight.str();
    for (const auto& [lvl, entries] : z_init) {
        out += ";z" + std::to_string(lvl) + "{";
        for (const auto& [name, value] : entries) {
            out += name + "=";
            if constexpr (std::is_same_v<S, Rational>)
                out += value.str();
            else {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.17g", value);
                out += buf;
            }
            out += ",";
        }
        out += "}";
    }
    return out;
}

template <class S>
void extend_level(GroupPathT<S>& path, const BuildConfigT<S>& cfg) {
    const TruncatedBasis& b = *path.basis;
    const int n = path.level;
    const int k = n + 1;
    if (k > b.max_degree()) throw std::domain_error("extension beyond the basis truncation");
    const int M = path.depth;
    const S w = detail::scalar_of<S>(cfg.split_weight, cfg.split_weight.to_double());
    const S w1 = detail::scalar_of<S>(Rational(1) - cfg.split_weight,
                              (Rational(1) - cfg.split_weight).to_double());

    LevelDiagnostics diag;
    diag.level = k;

    std::vector<DualElement<S>> z_prev{detail::make_z_init(path.basis, k, cfg)};
    diag.z_norms.push_back(detail::weighted_sup(b, z_prev[0], k, 0));

    const bool omp = cfg.policy == ExecPolicy::parallel && !cfg.reference;
    for (int m = 0; m < M; ++m) {
        const int parents = 1 << m;
        const int half = 1 << (M - m - 1);
        std::vector<DualElement<S>> z_cur(2 * parents, DualElement<S>(path.basis));
        std::vector<double> b_norms(parents, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (omp)
#endif
        for (int j = 0; j < parents; ++j) {
            const int s = 2 * j * half;
            const int u = s + half;
            const int t = s + 2 * half;
            DualElement<S> l_su = log_truncated(path.increment(s, u), n);
            DualElement<S> l_ut = log_truncated(path.increment(u, t), n);
            DualElement<S> corr = cfg.reference
                                      ? bch(l_su, l_ut, k)
                                      : bch_component(l_su, l_ut, k);
            if (cfg.reference) {
                // keep only the top-degree component
                for (int deg = 1; deg < k; ++deg)
                    for (int e : b.elements_of_degree(deg)) corr.coeffs[e] = S{};
            }
            b_norms[j] = detail::weighted_sup(b, corr, k, m);
            DualElement<S> base = z_prev[j] - corr;
            DualElement<S> left = base;
            left *= w;
            DualElement<S> right = base;
            right *= w1;
            z_cur[2 * j] = std::move(left);
            z_cur[2 * j + 1] = std::move(right);
        }
        double cmax = 0.0;
        for (double v : b_norms) cmax = std::max(cmax, v);
        diag.bch_norms.push_back(cmax);
        double amax = 0.0;
        for (const auto& z : z_cur)
            amax = std::max(amax, detail::weighted_sup(b, z, k, m + 1));
        diag.z_norms.push_back(amax);
        z_prev = std::move(z_cur);
    }

    const int intervals = 1 << M;
    std::vector<DualElement<S>> y(intervals, DualElement<S>(path.basis));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (omp)
#endif
    for (int j = 0; j < intervals; ++j) {
        DualElement<S> l = log_truncated(path.increment(j, j + 1), n);
        y[j] = exp_truncated(l + z_prev[j], k);
    }

    // Sequential prefix accumulation of the new top-degree components; all
    // lower degrees are left untouched.
    for (int j = 0; j < intervals; ++j) {
        for (int e : b.elements_of_degree(k)) {
            S acc = path.states[j].coeffs[e] + y[j].coeffs[e];
            for (const auto& ct : b.reduced_cop(e))
                acc += detail::scalar_of<S>(ct.coeff, ct.coeff_d) *
                       path.states[j].coeffs[ct.left] * y[j].coeffs[ct.right];
            path.states[j + 1].coeffs[e] = acc;
        }
    }

    // Boundedness monitor from the halving recursion.
    double lam = std::max(cfg.split_weight.to_double(), 1.0 - cfg.split_weight.to_double());
    double wmax = 0.0;
    for (int e : b.elements_of_degree(k))
        wmax = std::max(wmax, b.gamma_weight(e).to_double());
    for (int m = 0; m + 1 < static_cast<int>(diag.z_norms.size()); ++m) {
        double bound = lam * std::pow(2.0, wmax) * (diag.z_norms[m] + diag.bch_norms[m]);
        if (diag.z_norms[m + 1] > bound * (1.0 + 1e-9) + 1e-300)
            diag.recursion_bounded = false;
    }
    path.diagnostics.push_back(std::move(diag));
    path.level = k;
}

}  // namespace roughforge
