#pragma once

#include <map>
#include <vector>

#include "roughforge/forest.hpp"
#include "roughforge/hopf_bck.hpp"
#include "roughforge/word.hpp"

namespace roughforge {

/// An admissible extended decoration on a host forest: node labels, in
/// canonical preorder across the factors, together with the induced
/// partition into subtrees (part 1 first).
struct ExtendedDecoration {
    std::vector<int> labels;           // per node, values 1..m
    std::vector<DecoratedTree> parts;  // parts[j] spanned by label j+1
};

/// The graded Hopf-algebra morphism from decorated forests to words over
/// the tree alphabet, with both the cut recursion and the
/// partition-formula route.
class HairerKelly {
public:
    /// Alphabet = all trees with at most N nodes over decorations {1..d}
    /// (or {0..d} with include_zero), in canonical order.
    HairerKelly(int N, int d, bool include_zero = false);

    int truncation() const { return N_; }
    const std::vector<DecoratedTree>& trees() const { return trees_; }
    int letter_of(const DecoratedTree& t) const;

    /// Letter names are tree strings; per-letter exponent gamma * |tree|.
    /// Requires gamma * N < 1.
    Alphabet alphabet(const Rational& gamma) const;

    /// psi(tau) = tau + psi_{|tau|-1}(tau), extended to forests by shuffle.
    const WordCombo& psi_tree(const DecoratedTree& t) const;
    WordCombo psi(const DecoratedForest& f) const;
    /// The part of psi(tau) with every word over strictly smaller trees.
    WordCombo psi_lower(const DecoratedTree& t) const;

    /// Exhaustive list of admissible extended decorations of the host.
    std::vector<ExtendedDecoration> extended_decorations(const DecoratedForest& host) const;
    /// Checks one labeling (host nodes in canonical preorder order).
    bool is_admissible(const DecoratedForest& host, const std::vector<int>& labels) const;

    /// Partition formula: sum over admissible extended decorations of the
    /// word (part_m, ..., part_1).
    WordCombo psi_via_partitions(const DecoratedForest& f) const;

private:
    int N_, d_;
    bool include_zero_;
    std::vector<DecoratedTree> trees_;
    std::map<DecoratedTree, int> letter_index_;
    std::vector<WordCombo> psi_by_letter_;  // memoized recursive route
};

}  // namespace roughforge
