#pragma once

#include <map>
#include <string>
#include <vector>

#include "roughforge/hairer_kelly.hpp"
#include "roughforge/rp_construct.hpp"

namespace roughforge {

/// Tree-indexed family of Holder functions on the dyadic grid with
/// g^tau_0 = 0; the abelian group acting on branched rough paths.
struct HolderFamily {
    int depth = 0;
    std::vector<DecoratedTree> trees;           // canonical order
    std::vector<std::vector<double>> values;    // [tree][grid point]

    int points() const { return (1 << depth) + 1; }
    void validate() const;

    HolderFamily& operator+=(const HolderFamily& o);
    friend HolderFamily operator+(HolderFamily a, const HolderFamily& b) { return a += b; }

    static HolderFamily zero(const HairerKelly& hk, int depth);
    double sup_difference(const HolderFamily& o) const;  // max over trees and grid
};

struct EncodeResult {
    DyadicGroupPath xbar;                      // word path over the tree alphabet
    std::vector<std::vector<double>> xpaths;   // extracted path per tree letter
    double max_delta_residual = 0.0;
};

/// Branched-to-anisotropic encoding: extracts per-tree Holder paths by the
/// size recursion and lifts them over the tree alphabet so that
/// <X_st, tau> = <Xbar_st, psi(tau)> on the grid.
EncodeResult encode(const DyadicGroupPath& x, const HairerKelly& hk, const BuildConfig& cfg,
                    double delta_tol = 1e-9);

/// The group action: lifts x + g over the tree alphabet and pulls the
/// translated path back through the Hopf morphism. Zero translation
/// returns the input unchanged.
DyadicGroupPath act(const HolderFamily& g, const DyadicGroupPath& x, const HairerKelly& hk,
                    const BuildConfig& cfg, double delta_tol = 1e-9);

struct SolveResult {
    HolderFamily g;
    double max_delta_residual = 0.0;
};

/// The unique translation with act(g, x) = x2 and g^tau_0 = 0, by the size
/// recursion. Both paths must share basis structure, depth and exponents.
SolveResult solve_translation(const DyadicGroupPath& x, const DyadicGroupPath& x2,
                              const HairerKelly& hk, const BuildConfig& cfg,
                              double delta_tol = 1e-9);

/// Extraction/contraction tensor: left factor the extracted subforest (a
/// family of disjoint connected subtrees, decorations kept), right factor
/// the host with each part contracted to a node decorated 0.
using ExtractionTensor = LinearCombo<std::pair<DecoratedForest, DecoratedForest>>;

ExtractionTensor bcfp_extraction(const DecoratedTree& tau);
ExtractionTensor bcfp_extraction(const DecoratedForest& f);

/// Constant character given by its values on zero-free trees; everything
/// else is zero and products follow by multiplicativity.
struct ConstantCharacter {
    std::map<std::string, double> tree_values;

    double value_on_tree(const DecoratedTree& t) const;
    double value_on(const DecoratedForest& f) const;  // product over factors
    void validate(int max_size) const;                // zero-free names only
};

/// The translated rough path <(M_v X)_st, tau> = <X_st, (v (x) id) Psi(tau)>.
/// Requires a forest basis containing the 0 decoration.
DyadicGroupPath bcfp_translate(const DyadicGroupPath& x, const ConstantCharacter& v);

/// The unique g with act(g, x) = bcfp_translate(x, v), computed directly
/// from the extraction expansion (no translated-path object involved).
SolveResult bcfp_to_action(const DyadicGroupPath& x, const ConstantCharacter& v,
                           const HairerKelly& hk, const BuildConfig& cfg,
                           double delta_tol = 1e-9);

/// Structural basis equality (kind, names, exponents).
bool same_basis_structure(const TruncatedBasis& a, const TruncatedBasis& b);

}  // namespace roughforge
