#pragma once

#include <set>
#include <string>
#include <vector>

namespace roughforge {

/// Non-planar rooted tree with integer node decorations, kept in canonical
/// form: children are stored sorted under tree_less, so structural equality
/// coincides with decorated rooted-tree isomorphism.
///
/// Decorations are 1-based; decoration 0 is reserved as the contraction
/// marker used by the extraction/contraction machinery.
class DecoratedTree {
public:
    explicit DecoratedTree(int decoration);
    DecoratedTree(int decoration, std::vector<DecoratedTree> children);

    int decoration() const { return decoration_; }
    const std::vector<DecoratedTree>& children() const { return children_; }
    int size() const { return size_; }

    friend bool operator==(const DecoratedTree& a, const DecoratedTree& b);
    friend bool operator<(const DecoratedTree& a, const DecoratedTree& b);

    std::string str() const;

private:
    int decoration_;
    std::vector<DecoratedTree> children_;
    int size_;
};

bool tree_less(const DecoratedTree& a, const DecoratedTree& b);

/// Multiset of decorated trees in canonical (sorted) order; the empty forest
/// is the algebra unit.
class DecoratedForest {
public:
    DecoratedForest() = default;
    explicit DecoratedForest(const DecoratedTree& t) : factors_{t} { normalize(); }
    explicit DecoratedForest(std::vector<DecoratedTree> factors);

    const std::vector<DecoratedTree>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }
    int size() const;

    DecoratedForest concat(const DecoratedForest& o) const;

    friend bool operator==(const DecoratedForest& a, const DecoratedForest& b);
    friend bool operator<(const DecoratedForest& a, const DecoratedForest& b);

    std::string str() const;

private:
    std::vector<DecoratedTree> factors_;
    void normalize();
};

/// An admissible cut of a host tree together with its pruned part P^C and
/// root part R^C. Cut edges are identified by the preorder index of their
/// child node in the canonical form of the host (root = 0).
struct AdmissibleCut {
    std::set<int> cut_edges;
    DecoratedForest pruned;
    DecoratedTree root_part;
};

/// [tau_1 ... tau_k]_i: grafts the forest factors onto a new root decorated i.
/// Throws if i < 1 (decoration 0 is not graftable through the public API).
DecoratedTree graft(const DecoratedForest& forest, int decoration);

/// All admissible cuts of the tree: non-empty edge subsets meeting every
/// root-to-leaf path at most once, each paired with (pruned, root part).
std::vector<AdmissibleCut> admissible_cuts(const DecoratedTree& tree);

/// All decorated trees with at most n nodes over decorations {1..d}
/// (or {0..d} when include_zero is set), in canonical order.
/// Throws if the result would exceed max_basis (see enumeration_cap()).
std::vector<DecoratedTree> enumerate_trees(int n, int d, bool include_zero = false);

/// All decorated forests with at most n nodes over decorations {1..d}, unit
/// excluded, ordered by (size, factor list).
std::vector<DecoratedForest> enumerate_forests(int n, int d, bool include_zero = false);

/// Enumeration guard, default 20000; the ROUGHFORGE_MAX_BASIS environment
/// variable overrides it.
std::size_t enumeration_cap();

/// True iff some subtree of sigma (a connected subgraph, rooted at its node
/// closest to sigma's root) is isomorphic to tau.
bool contains(const DecoratedTree& sigma, const DecoratedTree& tau);

/// Text grammar: tree := "[" decoration { tree } "]";
/// forest := tree { tree } | "1". Whitespace between tokens is ignored.
DecoratedForest parse_forest(const std::string& text);
DecoratedTree parse_tree(const std::string& text);

}  // namespace roughforge
