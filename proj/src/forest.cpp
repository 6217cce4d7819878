#include "roughforge/forest.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace roughforge {

bool tree_less(const DecoratedTree& a, const DecoratedTree& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    if (a.decoration() != b.decoration()) return a.decoration() < b.decoration();
    const auto& ca = a.children();
    const auto& cb = b.children();
    return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end(), tree_less);
}

DecoratedTree::DecoratedTree(int decoration) : decoration_(decoration), size_(1) {
    if (decoration < 0) throw std::invalid_argument("negative decoration");
}

DecoratedTree::DecoratedTree(int decoration, std::vector<DecoratedTree> children)
    : decoration_(decoration), children_(std::move(children)), size_(1) {
    if (decoration < 0) throw std::invalid_argument("negative decoration");
    std::sort(children_.begin(), children_.end(), tree_less);
    for (const auto& c : children_) size_ += c.size();
}

bool operator==(const DecoratedTree& a, const DecoratedTree& b) {
    return a.size_ == b.size_ && a.decoration_ == b.decoration_ && a.children_ == b.children_;
}

bool operator<(const DecoratedTree& a, const DecoratedTree& b) { return tree_less(a, b); }

std::string DecoratedTree::str() const {
    std::string out = "[" + std::to_string(decoration_);
    for (const auto& c : children_) out += c.str();
    out += "]";
    return out;
}

DecoratedForest::DecoratedForest(std::vector<DecoratedTree> factors)
    : factors_(std::move(factors)) {
    normalize();
}

void DecoratedForest::normalize() { std::sort(factors_.begin(), factors_.end(), tree_less); }

int DecoratedForest::size() const {
    int s = 0;
    for (const auto& t : factors_) s += t.size();
    return s;
}

DecoratedForest DecoratedForest::concat(const DecoratedForest& o) const {
    std::vector<DecoratedTree> all = factors_;
    all.insert(all.end(), o.factors_.begin(), o.factors_.end());
    return DecoratedForest(std::move(all));
}

bool operator==(const DecoratedForest& a, const DecoratedForest& b) {
    return a.factors_ == b.factors_;
}

bool operator<(const DecoratedForest& a, const DecoratedForest& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.factors_.begin(), a.factors_.end(),
                                        b.factors_.begin(), b.factors_.end(), tree_less);
}

std::string DecoratedForest::str() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto& t : factors_) out += t.str();
    return out;
}

DecoratedTree graft(const DecoratedForest& forest, int decoration) {
    if (decoration < 1) throw std::invalid_argument("decoration out of range");
    return DecoratedTree(decoration, forest.factors());
}

namespace {

// Partial cut state while sweeping a node's children: edge ids are preorder
// indices of the cut edge's child node within the current subtree (root = 0).
struct PartialCut {
    std::set<int> edges;
    std::vector<DecoratedTree> pruned;
    std::vector<DecoratedTree> kept;  // children surviving on the root side
};

// Enumerates every admissible cut of the subtree rooted at t, including the
// empty cut (which the public API filters out).
std::vector<PartialCut> cuts_rec(const DecoratedTree& t) {
    std::vector<PartialCut> acc{{}};
    int offset = 1;
    for (const auto& child : t.children()) {
        std::vector<PartialCut> child_opts = cuts_rec(child);
        std::vector<PartialCut> next;
        next.reserve(acc.size() * (child_opts.size() + 1));
        for (const auto& p : acc) {
            // Sever the edge to this child: its whole subtree is pruned and
            // no further cuts below it are admissible (one edge per path).
            PartialCut cut = p;
            cut.edges.insert(offset);
            cut.pruned.push_back(child);
            next.push_back(std::move(cut));
            // Keep the child, combined with each admissible cut inside it.
            for (const auto& co : child_opts) {
                PartialCut keep = p;
                for (int e : co.edges) keep.edges.insert(offset + e);
                keep.pruned.insert(keep.pruned.end(), co.pruned.begin(), co.pruned.end());
                keep.kept.push_back(DecoratedTree(child.decoration(), co.kept));
                next.push_back(std::move(keep));
            }
        }
        acc = std::move(next);
        offset += child.size();
    }
    return acc;
}

}  // namespace

std::vector<AdmissibleCut> admissible_cuts(const DecoratedTree& tree) {
    std::vector<AdmissibleCut> out;
    for (auto& r : cuts_rec(tree)) {
        if (r.edges.empty()) continue;
        out.push_back({std::move(r.edges), DecoratedForest(std::move(r.pruned)),
                       DecoratedTree(tree.decoration(), std::move(r.kept))});
    }
    return out;
}

std::size_t enumeration_cap() {
    if (const char* env = std::getenv("ROUGHFORGE_MAX_BASIS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 20000;
}

namespace {

void check_cap(std::size_t count) {
    if (count > enumeration_cap())
        throw std::length_error("enumeration exceeds configured basis cap");
}

// Multisets of trees (indices into `trees`, non-decreasing) with total size
// exactly `target`; appends each multiset to `out`.
void forest_multisets(const std::vector<DecoratedTree>& trees, int target, std::size_t min_idx,
                      std::vector<int>& current, std::vector<std::vector<int>>& out) {
    if (target == 0) {
        out.push_back(current);
        check_cap(out.size());
        return;
    }
    for (std::size_t i = min_idx; i < trees.size(); ++i) {
        if (trees[i].size() > target) continue;
        current.push_back(static_cast<int>(i));
        forest_multisets(trees, target - trees[i].size(), i, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<DecoratedTree> enumerate_trees(int n, int d, bool include_zero) {
    if (n < 1 || d < 1) throw std::invalid_argument("enumerate_trees requires n >= 1, d >= 1");
    const int lo = include_zero ? 0 : 1;
    std::vector<DecoratedTree> all;  // sorted by (size, ...) as we build by size

    for (int k = 1; k <= n; ++k) {
        std::vector<DecoratedTree> level;
        // Every k-node tree is graft(F, i) for a unique (k-1)-node forest F.
        std::vector<std::vector<int>> multisets;
        std::vector<int> current;
        forest_multisets(all, k - 1, 0, current, multisets);
        for (const auto& ms : multisets) {
            std::vector<DecoratedTree> factors;
            factors.reserve(ms.size());
            for (int idx : ms) factors.push_back(all[idx]);
            for (int dec = lo; dec <= d; ++dec) {
                level.emplace_back(dec, factors);
                check_cap(all.size() + level.size());
            }
        }
        std::sort(level.begin(), level.end(), tree_less);
        all.insert(all.end(), level.begin(), level.end());
    }
    return all;
}

std::vector<DecoratedForest> enumerate_forests(int n, int d, bool include_zero) {
    std::vector<DecoratedTree> trees = enumerate_trees(n, d, include_zero);
    std::vector<DecoratedForest> out;
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<int>> multisets;
        std::vector<int> current;
        forest_multisets(trees, k, 0, current, multisets);
        std::vector<DecoratedForest> level;
        for (const auto& ms : multisets) {
            std::vector<DecoratedTree> factors;
            for (int idx : ms) factors.push_back(trees[idx]);
            level.emplace_back(std::move(factors));
            check_cap(out.size() + level.size());
        }
        std::sort(level.begin(), level.end());
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

namespace {

bool embeds_at(const DecoratedTree& pattern, const DecoratedTree& host);

// Injective matching of pattern children into host children, backtracking.
bool match_children(const std::vector<DecoratedTree>& pat, std::size_t pi,
                    const std::vector<DecoratedTree>& host, std::vector<bool>& used) {
    if (pi == pat.size()) return true;
    for (std::size_t h = 0; h < host.size(); ++h) {
        if (used[h]) continue;
        if (!embeds_at(pat[pi], host[h])) continue;
        used[h] = true;
        if (match_children(pat, pi + 1, host, used)) return true;
        used[h] = false;
    }
    return false;
}

bool embeds_at(const DecoratedTree& pattern, const DecoratedTree& host) {
    if (pattern.decoration() != host.decoration()) return false;
    if (pattern.size() > host.size()) return false;
    std::vector<bool> used(host.children().size(), false);
    return match_children(pattern.children(), 0, host.children(), used);
}

bool contains_rec(const DecoratedTree& sigma, const DecoratedTree& tau) {
    if (embeds_at(tau, sigma)) return true;
    for (const auto& c : sigma.children())
        if (contains_rec(c, tau)) return true;
    return false;
}

}  // namespace

bool contains(const DecoratedTree& sigma, const DecoratedTree& tau) {
    return contains_rec(sigma, tau);
}

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    int parse_int() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("expected decoration in tree grammar");
        return std::stoi(text.substr(start, pos - start));
    }

    DecoratedTree parse_tree() {
        if (!eat('[')) throw std::invalid_argument("expected '[' in tree grammar");
        int dec = parse_int();
        std::vector<DecoratedTree> children;
        skip_ws();
        while (pos < text.size() && text[pos] == '[') children.push_back(parse_tree()), skip_ws();
        if (!eat(']')) throw std::invalid_argument("expected ']' in tree grammar");
        return DecoratedTree(dec, std::move(children));
    }
};

}  // namespace

DecoratedForest parse_forest(const std::string& text) {
    Parser p{text};
    p.skip_ws();
    if (p.pos < text.size() && text[p.pos] == '1') {
        ++p.pos;
        p.skip_ws();
        if (p.pos != text.size()) throw std::invalid_argument("trailing input after unit forest");
        return DecoratedForest();
    }
    std::vector<DecoratedTree> factors;
    p.skip_ws();
    while (p.pos < text.size()) {
        factors.push_back(p.parse_tree());
        p.skip_ws();
    }
    if (factors.empty()) throw std::invalid_argument("empty forest text");
    return DecoratedForest(std::move(factors));
}

DecoratedTree parse_tree(const std::string& text) {
    Parser p{text};
    DecoratedTree t = p.parse_tree();
    p.skip_ws();
    if (p.pos != text.size()) throw std::invalid_argument("trailing input after tree");
    return t;
}

}  // namespace roughforge
