#include "roughforge/hairer_kelly.hpp"

#include <algorithm>
#include <stdexcept>

namespace roughforge {

HairerKelly::HairerKelly(int N, int d, bool include_zero)
    : N_(N), d_(d), include_zero_(include_zero) {
    trees_ = enumerate_trees(N, d, include_zero);
    for (std::size_t i = 0; i < trees_.size(); ++i)
        letter_index_.emplace(trees_[i], static_cast<int>(i));

    // psi on trees by the cut recursion, in size order so that pruned
    // parts are always available.
    psi_by_letter_.resize(trees_.size());
    for (std::size_t i = 0; i < trees_.size(); ++i) {
        const DecoratedTree& t = trees_[i];
        WordCombo acc(Word({static_cast<int>(i)}));  // the empty cut: psi(1) (x) tau
        for (const auto& cut : admissible_cuts(t)) {
            WordCombo pruned = psi(cut.pruned);
            int rletter = letter_of(cut.root_part);
            for (const auto& [w, c] : pruned.terms())
                acc.add(w.concat(Word({rletter})), c);
        }
        psi_by_letter_[i] = std::move(acc);
    }
}

int HairerKelly::letter_of(const DecoratedTree& t) const {
    auto it = letter_index_.find(t);
    if (it == letter_index_.end())
        throw std::out_of_range("tree outside the truncated alphabet: " + t.str());
    return it->second;
}

Alphabet HairerKelly::alphabet(const Rational& gamma) const {
    Alphabet a;
    for (const auto& t : trees_) {
        a.names.push_back(t.str());
        a.gammas.push_back(gamma * Rational(t.size()));
    }
    a.validate();
    return a;
}

const WordCombo& HairerKelly::psi_tree(const DecoratedTree& t) const {
    return psi_by_letter_[letter_of(t)];
}

WordCombo HairerKelly::psi(const DecoratedForest& f) const {
    WordCombo out(Word{});
    for (const auto& t : f.factors()) out = shuffle(out, psi_tree(t));
    return out;
}

WordCombo HairerKelly::psi_lower(const DecoratedTree& t) const {
    WordCombo out = psi_tree(t);
    out.add(Word({letter_of(t)}), Rational(-1));
    return out;
}

namespace {

// Flattened host forest: nodes in canonical preorder, with parent links
// (-1 for factor roots) and decorations.
struct FlatHost {
    std::vector<int> parent;
    std::vector<int> decoration;
};

void flatten_tree(const DecoratedTree& t, int parent, FlatHost& h) {
    int me = static_cast<int>(h.parent.size());
    h.parent.push_back(parent);
    h.decoration.push_back(t.decoration());
    for (const auto& c : t.children()) flatten_tree(c, me, h);
}

FlatHost flatten(const DecoratedForest& f) {
    FlatHost h;
    for (const auto& t : f.factors()) flatten_tree(t, -1, h);
    return h;
}

// Rebuilds the decorated subtree spanned by the given node set (which must
// span a subtree: exactly one node without parent in the set).
DecoratedTree induced_subtree(const FlatHost& h, const std::vector<int>& nodes, int root) {
    std::vector<std::vector<int>> kids(h.parent.size());
    for (int v : nodes)
        if (v != root) kids[h.parent[v]].push_back(v);
    // recursive build
    struct Builder {
        const FlatHost& h;
        const std::vector<std::vector<int>>& kids;
        DecoratedTree build(int v) const {
            std::vector<DecoratedTree> children;
            for (int c : kids[v]) children.push_back(build(c));
            return DecoratedTree(h.decoration[v], std::move(children));
        }
    } builder{h, kids};
    return builder.build(root);
}

}  // namespace

bool HairerKelly::is_admissible(const DecoratedForest& host,
                                const std::vector<int>& labels) const {
    FlatHost h = flatten(host);
    const int n = static_cast<int>(h.parent.size());
    if (static_cast<int>(labels.size()) != n) return false;
    int m = 0;
    for (int v = 0; v < n; ++v) {
        if (labels[v] < 1) return false;
        m = std::max(m, labels[v]);
    }
    // (1) the label set is an interval containing 1
    std::vector<int> count(m + 1, 0);
    for (int v = 0; v < n; ++v) ++count[labels[v]];
    for (int j = 1; j <= m; ++j)
        if (count[j] == 0) return false;
    // (2) increasing along the tree order
    for (int v = 0; v < n; ++v)
        if (h.parent[v] >= 0 && labels[h.parent[v]] > labels[v]) return false;
    // (3) each level set spans a connected subtree: exactly one node per
    // label whose parent is outside the level set
    for (int j = 1; j <= m; ++j) {
        int roots = 0;
        for (int v = 0; v < n; ++v)
            if (labels[v] == j && (h.parent[v] < 0 || labels[h.parent[v]] != j)) ++roots;
        if (roots != 1) return false;
    }
    return true;
}

std::vector<ExtendedDecoration> HairerKelly::extended_decorations(
    const DecoratedForest& host) const {
    FlatHost h = flatten(host);
    const int n = static_cast<int>(h.parent.size());
    std::vector<ExtendedDecoration> out;
    if (n == 0) return out;
    std::vector<int> labels(n, 1);
    while (true) {
        if (is_admissible(host, labels)) {
            ExtendedDecoration ed;
            ed.labels = labels;
            int m = *std::max_element(labels.begin(), labels.end());
            for (int j = 1; j <= m; ++j) {
                std::vector<int> nodes;
                int root = -1;
                for (int v = 0; v < n; ++v)
                    if (labels[v] == j) {
                        nodes.push_back(v);
                        if (h.parent[v] < 0 || labels[h.parent[v]] != j) root = v;
                    }
                ed.parts.push_back(induced_subtree(h, nodes, root));
            }
            out.push_back(std::move(ed));
        }
        // next labeling in base n
        int pos = n - 1;
        while (pos >= 0 && labels[pos] == n) labels[pos--] = 1;
        if (pos < 0) break;
        ++labels[pos];
    }
    return out;
}

WordCombo HairerKelly::psi_via_partitions(const DecoratedForest& f) const {
    WordCombo out;
    if (f.is_unit()) {
        out.add(Word{}, Rational(1));
        return out;
    }
    for (const auto& ed : extended_decorations(f)) {
        std::vector<int> letters;
        letters.reserve(ed.parts.size());
        for (auto it = ed.parts.rbegin(); it != ed.parts.rend(); ++it)
            letters.push_back(letter_of(*it));
        out.add(Word(std::move(letters)), Rational(1));
    }
    return out;
}

}  // namespace roughforge
