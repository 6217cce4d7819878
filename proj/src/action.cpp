#include "roughforge/action.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roughforge {

void HolderFamily::validate() const {
    if (trees.size() != values.size())
        throw std::invalid_argument("family trees/values mismatch");
    for (const auto& col : values) {
        if (static_cast<int>(col.size()) != points())
            throw std::invalid_argument("family column length is not 2^M + 1");
        if (col[0] != 0.0) throw std::invalid_argument("family value at 0 must vanish");
    }
}

HolderFamily& HolderFamily::operator+=(const HolderFamily& o) {
    if (depth != o.depth || !(trees == o.trees))
        throw std::invalid_argument("family shape mismatch");
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t t = 0; t < values[i].size(); ++t) values[i][t] += o.values[i][t];
    return *this;
}

HolderFamily HolderFamily::zero(const HairerKelly& hk, int depth) {
    HolderFamily g;
    g.depth = depth;
    g.trees = hk.trees();
    g.values.assign(g.trees.size(), std::vector<double>(g.points(), 0.0));
    return g;
}

double HolderFamily::sup_difference(const HolderFamily& o) const {
    if (depth != o.depth || !(trees == o.trees))
        throw std::invalid_argument("family shape mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t t = 0; t < values[i].size(); ++t)
            worst = std::max(worst, std::abs(values[i][t] - o.values[i][t]));
    return worst;
}

bool same_basis_structure(const TruncatedBasis& a, const TruncatedBasis& b) {
    if (a.kind() != b.kind() || a.size() != b.size() || a.max_degree() != b.max_degree())
        return false;
    for (int i = 0; i < a.size(); ++i)
        if (a.name(i) != b.name(i) || a.gamma_weight(i) != b.gamma_weight(i)) return false;
    return true;
}

namespace {

// <states[s]^{-1} * states[t], element> without materializing the product.
double increment_coeff(const TruncatedBasis& b, const DualElement<double>& inv_s,
                       const DualElement<double>& st_t, int idx) {
    double acc = inv_s.coeffs[idx] + st_t.coeffs[idx];
    for (const auto& ct : b.reduced_cop(idx))
        acc += ct.coeff_d * inv_s.coeffs[ct.left] * st_t.coeffs[ct.right];
    return acc;
}

struct WordComboIdx {
    std::vector<std::pair<int, double>> terms;  // basis index, coefficient
};

WordComboIdx index_combo(const TruncatedBasis& wb, const Alphabet& a, const WordCombo& combo) {
    WordComboIdx out;
    for (const auto& [w, c] : combo.terms()) {
        int idx = wb.index_of(word_str(a, w));
        if (idx < 0) throw std::logic_error("word outside the lifted basis: " + word_str(a, w));
        out.terms.emplace_back(idx, c.to_double());
    }
    return out;
}

double eval_combo_states(const WordComboIdx& combo, const DualElement<double>& state) {
    double acc = 0.0;
    for (const auto& [idx, c] : combo.terms) acc += c * state.coeffs[idx];
    return acc;
}

double eval_combo_increment(const TruncatedBasis& wb, const WordComboIdx& combo,
                            const DualElement<double>& inv_s, const DualElement<double>& st_t) {
    double acc = 0.0;
    for (const auto& [idx, c] : combo.terms)
        acc += c * increment_coeff(wb, inv_s, st_t, idx);
    return acc;
}

std::vector<DualElement<double>> inverse_states(const DyadicGroupPath& x) {
    std::vector<DualElement<double>> inv;
    inv.reserve(x.states.size());
    for (const auto& s : x.states) inv.push_back(antipode_pullback(s));
    return inv;
}

void require_branched(const DyadicGroupPath& x) {
    if (!x.basis || x.basis->kind() != TruncatedBasis::Kind::forests)
        throw std::invalid_argument("a branched rough path (forest basis) is required");
}

void require_action_config(const DyadicGroupPath& x, const BuildConfig& cfg) {
    const std::string tag = "act:" + cfg.tag();
    if (x.config_tag.rfind("act:", 0) == 0 && x.config_tag != tag)
        throw std::invalid_argument("construction configuration mismatch with the input path");
}

// Shared machinery for encode / solve / bcfp_to_action: iterates tree sizes,
// extracting per-tree paths from a target two-parameter function.
struct ActionWorkspace {
    const HairerKelly& hk;
    BasisPtr forest_basis;
    Rational gamma;
    int depth;
    int npoints;
    const BuildConfig& cfg;

    std::vector<int> tree_forest_idx;      // forest-basis index per tree letter
    std::vector<WordCombo> psi_lower;      // per tree letter
    Alphabet full_alphabet;

    ActionWorkspace(const DyadicGroupPath& x, const HairerKelly& hk_, const BuildConfig& cfg_)
        : hk(hk_), forest_basis(x.basis), gamma(x.basis->min_gamma()), depth(x.depth),
          npoints(x.points()), cfg(cfg_) {
        require_branched(x);
        if (hk.truncation() != x.basis->max_degree())
            throw std::invalid_argument("truncation mismatch between the map and the path");
        int basis_trees = 0;
        for (int e = 0; e < forest_basis->size(); ++e)
            if (forest_basis->forest_at(e).factors().size() == 1) ++basis_trees;
        if (basis_trees != static_cast<int>(hk.trees().size()))
            throw std::invalid_argument("alphabet mismatch with the path basis");
        full_alphabet = hk.alphabet(gamma);
        for (const auto& t : hk.trees()) {
            int idx = forest_basis->index_of(DecoratedForest(t).str());
            if (idx < 0) throw std::invalid_argument("alphabet mismatch with the path basis");
            tree_forest_idx.push_back(idx);
            psi_lower.push_back(hk.psi_lower(t));
        }
    }

    int letters_of_size_at_most(int k) const {
        int n = 0;
        for (const auto& t : hk.trees())
            if (t.size() <= k) ++n;
        return n;
    }

    Alphabet alphabet_prefix(int letters) const {
        Alphabet a;
        a.names.assign(full_alphabet.names.begin(), full_alphabet.names.begin() + letters);
        a.gammas.assign(full_alphabet.gammas.begin(), full_alphabet.gammas.begin() + letters);
        return a;
    }

    SampledPath path_over(const std::vector<std::vector<double>>& xpaths, int letters) const {
        SampledPath p;
        p.depth = depth;
        p.alphabet = alphabet_prefix(letters);
        p.values.assign(xpaths.begin(), xpaths.begin() + letters);
        return p;
    }
};

}  // namespace

EncodeResult encode(const DyadicGroupPath& x, const HairerKelly& hk, const BuildConfig& cfg,
                    double delta_tol) {
    require_branched(x);
    require_action_config(x, cfg);
    ActionWorkspace ws(x, hk, cfg);
    const int N = x.basis->max_degree();
    const int pts = ws.npoints;
    const TruncatedBasis& fb = *x.basis;

    std::vector<DualElement<double>> inv = inverse_states(x);

    EncodeResult out;
    out.xpaths.assign(hk.trees().size(), std::vector<double>(pts, 0.0));

    // size-1 trees read off directly
    for (std::size_t i = 0; i < hk.trees().size(); ++i) {
        if (hk.trees()[i].size() != 1) continue;
        const int fi = ws.tree_forest_idx[i];
        for (int t = 0; t < pts; ++t) out.xpaths[i][t] = x.states[t].coeffs[fi];
    }

    DyadicGroupPath xbar =
        build_rough_path(ws.path_over(out.xpaths, ws.letters_of_size_at_most(1)),
                         TruncatedBasis::make_words_anisotropic(ws.alphabet_prefix(
                             ws.letters_of_size_at_most(1))),
                         cfg);

    for (int k = 2; k <= N; ++k) {
        const TruncatedBasis& wb = *xbar.basis;
        std::vector<DualElement<double>> winv = inverse_states(xbar);
        for (std::size_t i = 0; i < hk.trees().size(); ++i) {
            if (hk.trees()[i].size() != k) continue;
            const int fi = ws.tree_forest_idx[i];
            WordComboIdx combo = index_combo(wb, wb.alphabet(), ws.psi_lower[i]);
            auto& col = out.xpaths[i];
            for (int t = 0; t < pts; ++t)
                col[t] = x.states[t].coeffs[fi] - eval_combo_states(combo, xbar.states[t]);
            // The defining two-parameter function must be an increment:
            // its anchored second difference has to vanish on the grid.
            for (int s = 1; s < pts - 1; ++s)
                for (int t = s + 1; t < pts; ++t) {
                    double f_st = increment_coeff(fb, inv[s], x.states[t], fi);
                    double g_st =
                        eval_combo_increment(wb, combo, winv[s], xbar.states[t]);
                    double res = std::abs(f_st - g_st - (col[t] - col[s]));
                    out.max_delta_residual = std::max(out.max_delta_residual, res);
                }
        }
        if (out.max_delta_residual > delta_tol)
            throw std::domain_error("increment extraction failed: input is not a valid rough path");
        const int letters = ws.letters_of_size_at_most(k);
        xbar = build_rough_path(
            ws.path_over(out.xpaths, letters),
            TruncatedBasis::make_words_anisotropic(ws.alphabet_prefix(letters)), cfg);
    }
    out.xbar = std::move(xbar);
    return out;
}

namespace {

// Fills a branched path from per-tree coefficient columns, keeping the
// host's composite-forest values consistent: the new composite value is the
// old one shifted by the change in the product of its tree factors.
DyadicGroupPath assemble_branched(const DyadicGroupPath& x,
                                  const std::vector<int>& tree_forest_idx,
                                  const std::vector<std::vector<double>>& new_tree_values,
                                  const std::string& tag) {
    const TruncatedBasis& fb = *x.basis;
    DyadicGroupPath out;
    out.basis = x.basis;
    out.depth = x.depth;
    out.level = x.level;
    out.split_weight = x.split_weight;
    out.config_tag = tag;
    out.states.assign(x.states.size(), DualElement<double>(x.basis, 1.0));

    std::vector<int> tree_slot(fb.size(), -1);
    for (std::size_t i = 0; i < tree_forest_idx.size(); ++i)
        tree_slot[tree_forest_idx[i]] = static_cast<int>(i);

    // factor slots per basis element
    std::vector<std::vector<int>> factor_slots(fb.size());
    for (int e = 0; e < fb.size(); ++e) {
        for (const auto& t : fb.forest_at(e).factors()) {
            // factors are trees of the same basis
            int fi = fb.index_of(DecoratedForest(t).str());
            factor_slots[e].push_back(tree_slot[fi]);
        }
    }

    for (std::size_t t = 0; t < x.states.size(); ++t) {
        auto& st = out.states[t];
        for (int e = 0; e < fb.size(); ++e) {
            const auto& slots = factor_slots[e];
            if (slots.size() == 1) {
                st.coeffs[e] = new_tree_values[slots[0]][t];
            } else {
                double prod_new = 1.0, prod_old = 1.0;
                for (int s : slots) {
                    prod_new *= new_tree_values[s][t];
                    prod_old *= x.states[t].coeffs[tree_forest_idx[s]];
                }
                st.coeffs[e] = x.states[t].coeffs[e] + (prod_new - prod_old);
            }
        }
    }
    return out;
}

}  // namespace

DyadicGroupPath act(const HolderFamily& g, const DyadicGroupPath& x, const HairerKelly& hk,
                    const BuildConfig& cfg, double delta_tol) {
    require_branched(x);
    require_action_config(x, cfg);
    g.validate();
    if (g.depth != x.depth) throw std::invalid_argument("depth mismatch between g and the path");
    if (!(g.trees == hk.trees()))
        throw std::invalid_argument("family trees do not match the truncated alphabet");

    EncodeResult enc = encode(x, hk, cfg, delta_tol);
    const int pts = x.points();

    std::vector<std::vector<double>> shifted = enc.xpaths;
    for (std::size_t i = 0; i < shifted.size(); ++i)
        for (int t = 0; t < pts; ++t) shifted[i][t] += g.values[i][t];

    ActionWorkspace ws(x, hk, cfg);
    DyadicGroupPath gxbar = build_rough_path(
        ws.path_over(shifted, static_cast<int>(shifted.size())),
        TruncatedBasis::make_words_anisotropic(ws.full_alphabet), cfg);

    const TruncatedBasis& wb = *gxbar.basis;
    const TruncatedBasis& wb0 = *enc.xbar.basis;

    std::vector<std::vector<double>> new_tree_values(hk.trees().size(),
                                                     std::vector<double>(pts, 0.0));
    for (std::size_t i = 0; i < hk.trees().size(); ++i) {
        WordComboIdx combo = index_combo(wb, wb.alphabet(), ws.psi_lower[i]);
        WordComboIdx combo0 = index_combo(wb0, wb0.alphabet(), ws.psi_lower[i]);
        const int fi = ws.tree_forest_idx[i];
        for (int t = 0; t < pts; ++t) {
            double rem_new = eval_combo_states(combo, gxbar.states[t]);
            double rem_old = eval_combo_states(combo0, enc.xbar.states[t]);
            new_tree_values[i][t] =
                x.states[t].coeffs[fi] + g.values[i][t] + (rem_new - rem_old);
        }
    }
    return assemble_branched(x, ws.tree_forest_idx, new_tree_values, "act:" + cfg.tag());
}

SolveResult solve_translation(const DyadicGroupPath& x, const DyadicGroupPath& x2,
                              const HairerKelly& hk, const BuildConfig& cfg, double delta_tol) {
    require_branched(x);
    require_branched(x2);
    if (!same_basis_structure(*x.basis, *x2.basis))
        throw std::invalid_argument("paths live over different bases");
    if (x.depth != x2.depth) throw std::invalid_argument("depth mismatch between the paths");
    require_action_config(x, cfg);
    require_action_config(x2, cfg);

    ActionWorkspace ws(x, hk, cfg);
    EncodeResult enc = encode(x, hk, cfg, delta_tol);
    const int N = x.basis->max_degree();
    const int pts = x.points();
    const TruncatedBasis& fb = *x.basis;

    std::vector<DualElement<double>> inv2 = inverse_states(x2);

    SolveResult out;
    out.g.depth = x.depth;
    out.g.trees = hk.trees();
    out.g.values.assign(hk.trees().size(), std::vector<double>(pts, 0.0));

    // level 1: difference of the level-1 paths
    for (std::size_t i = 0; i < hk.trees().size(); ++i) {
        if (hk.trees()[i].size() != 1) continue;
        const int fi = ws.tree_forest_idx[i];
        for (int t = 0; t < pts; ++t)
            out.g.values[i][t] = x2.states[t].coeffs[fi] - x.states[t].coeffs[fi];
    }

    for (int k = 2; k <= N; ++k) {
        const int letters = ws.letters_of_size_at_most(k - 1);
        std::vector<std::vector<double>> shifted(ws.hk.trees().size());
        for (std::size_t i = 0; i < shifted.size(); ++i) {
            shifted[i] = enc.xpaths[i];
            for (int t = 0; t < pts; ++t) shifted[i][t] += out.g.values[i][t];
        }
        DyadicGroupPath gxbar = build_rough_path(
            ws.path_over(shifted, letters),
            TruncatedBasis::make_words_anisotropic(ws.alphabet_prefix(letters)), cfg);
        const TruncatedBasis& wb = *gxbar.basis;
        std::vector<DualElement<double>> winv = inverse_states(gxbar);

        for (std::size_t i = 0; i < hk.trees().size(); ++i) {
            if (hk.trees()[i].size() != k) continue;
            const int fi = ws.tree_forest_idx[i];
            WordComboIdx combo = index_combo(wb, wb.alphabet(), ws.psi_lower[i]);
            auto& col = out.g.values[i];
            for (int t = 0; t < pts; ++t)
                col[t] = x2.states[t].coeffs[fi] - enc.xpaths[i][t] -
                         eval_combo_states(combo, gxbar.states[t]);
            for (int s = 1; s < pts - 1; ++s)
                for (int t = s + 1; t < pts; ++t) {
                    double f_st = increment_coeff(fb, inv2[s], x2.states[t], fi);
                    double xbar_st = enc.xpaths[i][t] - enc.xpaths[i][s];
                    double rem_st = eval_combo_increment(wb, combo, winv[s], gxbar.states[t]);
                    double res = std::abs(f_st - xbar_st - rem_st - (col[t] - col[s]));
                    out.max_delta_residual = std::max(out.max_delta_residual, res);
                }
        }
        if (out.max_delta_residual > delta_tol)
            throw std::domain_error("translation increments failed the vanishing check");
    }
    return out;
}

ExtractionTensor bcfp_extraction(const DecoratedTree& tau) {
    if (tau.size() > 5)
        throw std::length_error("extraction enumeration capped at 5 nodes");
    // flatten in canonical preorder: parent before child
    std::vector<int> parent, dec;
    {
        struct Rec {
            std::vector<int>& parent;
            std::vector<int>& dec;
            void walk(const DecoratedTree& t, int p) {
                int me = static_cast<int>(parent.size());
                parent.push_back(p);
                dec.push_back(t.decoration());
                for (const auto& c : t.children()) walk(c, me);
            }
        } rec{parent, dec};
        rec.walk(tau, -1);
    }
    const int n = static_cast<int>(parent.size());

    ExtractionTensor out;
    // part[v] = 0: not extracted; otherwise a part id; a node may join its
    // parent's part (keeping the part connected) or start a new one.
    std::vector<int> part(n, 0);
    int next_part = 1;

    struct Walker {
        const std::vector<int>& parent;
        const std::vector<int>& dec;
        std::vector<int>& part;
        int& next_part;
        ExtractionTensor& out;
        int n;

        void emit() {
            int parts = 0;
            for (int v = 0; v < n; ++v) parts = std::max(parts, part[v]);
            // extracted forest: induced subtree per part
            std::vector<std::vector<int>> kids(n);
            std::vector<int> roots(parts, -1);
            for (int v = 0; v < n; ++v) {
                if (part[v] == 0) continue;
                if (parent[v] >= 0 && part[parent[v]] == part[v])
                    kids[parent[v]].push_back(v);
                else
                    roots[part[v] - 1] = v;
            }
            struct Build {
                const std::vector<std::vector<int>>& kids;
                const std::vector<int>& dec;
                DecoratedTree build(int v) const {
                    std::vector<DecoratedTree> cs;
                    for (int c : kids[v]) cs.push_back(build(c));
                    return DecoratedTree(dec[v], std::move(cs));
                }
            } build{kids, dec};
            std::vector<DecoratedTree> extracted;
            for (int r : roots) extracted.push_back(build.build(r));

            // contracted host: representative = part root or the node itself
            std::vector<int> rep(n);
            for (int v = 0; v < n; ++v)
                rep[v] = part[v] == 0 ? v : roots[part[v] - 1];
            // Every edge whose endpoints have distinct representatives
            // survives contraction; part-interior edges disappear.
            std::vector<std::vector<int>> ckids(n);
            for (int v = 1; v < n; ++v) {
                int rv = rep[v], rp = rep[parent[v]];
                if (rv != rp) ckids[rp].push_back(rv);
            }
            struct CBuild {
                const std::vector<std::vector<int>>& kids;
                const std::vector<int>& dec;
                const std::vector<int>& part;
                DecoratedTree build(int v) const {
                    std::vector<DecoratedTree> cs;
                    for (int c : kids[v]) cs.push_back(build(c));
                    return DecoratedTree(part[v] == 0 ? dec[v] : 0, std::move(cs));
                }
            } cbuild{ckids, dec, part};
            DecoratedTree contracted = cbuild.build(rep[0]);

            out.add({DecoratedForest(std::move(extracted)),
                     DecoratedForest(std::move(contracted))},
                    Rational(1));
        }

        void walk(int v) {
            if (v == n) {
                emit();
                return;
            }
            part[v] = 0;  // skip
            walk(v + 1);
            if (parent[v] >= 0 && part[parent[v]] > 0) {
                part[v] = part[parent[v]];  // join the parent's part
                walk(v + 1);
            }
            part[v] = next_part++;  // start a new part
            walk(v + 1);
            --next_part;
            part[v] = 0;
        }
    } walker{parent, dec, part, next_part, out, n};
    walker.walk(0);
    return out;
}

ExtractionTensor bcfp_extraction(const DecoratedForest& f) {
    ExtractionTensor acc({DecoratedForest(), DecoratedForest()}, Rational(1));
    for (const auto& t : f.factors()) {
        ExtractionTensor part = bcfp_extraction(t);
        acc = ExtractionTensor::bilinear(
            acc, part, [](const auto& a, const auto& b) {
                return ExtractionTensor(
                    {a.first.concat(b.first), a.second.concat(b.second)});
            });
    }
    return acc;
}

double ConstantCharacter::value_on_tree(const DecoratedTree& t) const {
    auto it = tree_values.find(t.str());
    return it == tree_values.end() ? 0.0 : it->second;
}

double ConstantCharacter::value_on(const DecoratedForest& f) const {
    double prod = 1.0;
    for (const auto& t : f.factors()) prod *= value_on_tree(t);
    return prod;
}

void ConstantCharacter::validate(int max_size) const {
    for (const auto& [name, value] : tree_values) {
        DecoratedTree t = parse_tree(name);
        if (t.size() > max_size)
            throw std::invalid_argument("character support exceeds the truncation: " + name);
        std::vector<const DecoratedTree*> stack{&t};
        while (!stack.empty()) {
            const DecoratedTree* node = stack.back();
            stack.pop_back();
            if (node->decoration() == 0)
                throw std::invalid_argument(
                    "character must be supported on zero-free forests: " + name);
            for (const auto& c : node->children()) stack.push_back(&c);
        }
        (void)value;
    }
}

DyadicGroupPath bcfp_translate(const DyadicGroupPath& x, const ConstantCharacter& v) {
    require_branched(x);
    const TruncatedBasis& fb = *x.basis;
    if (!fb.zero_decorated())
        throw std::invalid_argument("translation requires the 0 decoration in the alphabet");
    v.validate(fb.max_degree());

    // rows of (v (x) id) Psi per basis element
    std::vector<std::vector<std::pair<double, int>>> rows(fb.size());
    for (int e = 0; e < fb.size(); ++e) {
        ExtractionTensor psi = bcfp_extraction(fb.forest_at(e));
        for (const auto& [pair, c] : psi.terms()) {
            double vc = pair.first.is_unit() ? 1.0 : v.value_on(pair.first);
            if (vc == 0.0) continue;
            int idx = fb.index_of(pair.second.str());
            if (idx < 0) throw std::logic_error("contracted forest outside the basis");
            rows[e].emplace_back(c.to_double() * vc, idx);
        }
    }

    DyadicGroupPath out;
    out.basis = x.basis;
    out.depth = x.depth;
    out.level = x.level;
    out.split_weight = x.split_weight;
    out.config_tag = x.config_tag + ";bcfp";
    out.states.assign(x.states.size(), DualElement<double>(x.basis, 1.0));
    for (std::size_t t = 0; t < x.states.size(); ++t)
        for (int e = 0; e < fb.size(); ++e) {
            double acc = 0.0;
            for (const auto& [c, idx] : rows[e]) acc += c * x.states[t].coeffs[idx];
            out.states[t].coeffs[e] = acc;
        }
    return out;
}

SolveResult bcfp_to_action(const DyadicGroupPath& x, const ConstantCharacter& v,
                           const HairerKelly& hk, const BuildConfig& cfg, double delta_tol) {
    require_branched(x);
    const TruncatedBasis& fb = *x.basis;
    if (!fb.zero_decorated())
        throw std::invalid_argument("translation requires the 0 decoration in the alphabet");
    v.validate(fb.max_degree());
    require_action_config(x, cfg);

    ActionWorkspace ws(x, hk, cfg);
    EncodeResult enc = encode(x, hk, cfg, delta_tol);
    const int N = fb.max_degree();
    const int pts = x.points();

    std::vector<DualElement<double>> inv = inverse_states(x);

    // extraction rows per tree letter
    std::vector<std::vector<std::pair<double, int>>> rows(hk.trees().size());
    for (std::size_t i = 0; i < hk.trees().size(); ++i) {
        ExtractionTensor psi = bcfp_extraction(hk.trees()[i]);
        for (const auto& [pair, c] : psi.terms()) {
            double vc = pair.first.is_unit() ? 1.0 : v.value_on(pair.first);
            if (vc == 0.0) continue;
            int idx = fb.index_of(pair.second.str());
            if (idx < 0) throw std::logic_error("contracted forest outside the basis");
            rows[i].emplace_back(c.to_double() * vc, idx);
        }
    }

    SolveResult out;
    out.g.depth = x.depth;
    out.g.trees = hk.trees();
    out.g.values.assign(hk.trees().size(), std::vector<double>(pts, 0.0));

    auto translated_anchor = [&](std::size_t i, int t) {
        double acc = 0.0;
        for (const auto& [c, idx] : rows[i]) acc += c * x.states[t].coeffs[idx];
        return acc;
    };
    auto translated_increment = [&](std::size_t i, int s, int t) {
        double acc = 0.0;
        for (const auto& [c, idx] : rows[i])
            acc += c * increment_coeff(fb, inv[s], x.states[t], idx);
        return acc;
    };

    for (std::size_t i = 0; i < hk.trees().size(); ++i) {
        if (hk.trees()[i].size() != 1) continue;
        const int fi = ws.tree_forest_idx[i];
        for (int t = 0; t < pts; ++t)
            out.g.values[i][t] = translated_anchor(i, t) - x.states[t].coeffs[fi];
    }

    for (int k = 2; k <= N; ++k) {
        const int letters = ws.letters_of_size_at_most(k - 1);
        std::vector<std::vector<double>> shifted(hk.trees().size());
        for (std::size_t i = 0; i < shifted.size(); ++i) {
            shifted[i] = enc.xpaths[i];
            for (int t = 0; t < pts; ++t) shifted[i][t] += out.g.values[i][t];
        }
        DyadicGroupPath gxbar = build_rough_path(
            ws.path_over(shifted, letters),
            TruncatedBasis::make_words_anisotropic(ws.alphabet_prefix(letters)), cfg);
        const TruncatedBasis& wb = *gxbar.basis;
        std::vector<DualElement<double>> winv = inverse_states(gxbar);

        for (std::size_t i = 0; i < hk.trees().size(); ++i) {
            if (hk.trees()[i].size() != k) continue;
            WordComboIdx combo = index_combo(wb, wb.alphabet(), ws.psi_lower[i]);
            auto& col = out.g.values[i];
            for (int t = 0; t < pts; ++t)
                col[t] = translated_anchor(i, t) - enc.xpaths[i][t] -
                         eval_combo_states(combo, gxbar.states[t]);
            for (int s = 1; s < pts - 1; ++s)
                for (int t = s + 1; t < pts; ++t) {
                    double f_st = translated_increment(i, s, t);
                    double xbar_st = enc.xpaths[i][t] - enc.xpaths[i][s];
                    double rem_st = eval_combo_increment(wb, combo, winv[s], gxbar.states[t]);
                    double res = std::abs(f_st - xbar_st - rem_st - (col[t] - col[s]));
                    out.max_delta_residual = std::max(out.max_delta_residual, res);
                }
        }
        if (out.max_delta_residual > delta_tol)
            throw std::domain_error("translation increments failed the vanishing check");
    }
    return out;
}

}  // namespace roughforge
