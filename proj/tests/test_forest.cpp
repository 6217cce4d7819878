#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "roughforge/forest.hpp"

using namespace roughforge;

namespace {

// Independent cut oracle: enumerate every non-empty edge subset and keep
// those where each root-to-leaf path carries at most one chosen edge. Edges
// are preorder indices of their child node, paths enumerated explicitly.
struct FlatTree {
    std::vector<int> parent;  // preorder, parent[0] = -1
    std::vector<int> dec;
};

void flatten(const DecoratedTree& t, int parent, FlatTree& f) {
    int me = static_cast<int>(f.parent.size());
    f.parent.push_back(parent);
    f.dec.push_back(t.decoration());
    for (const auto& c : t.children()) flatten(c, me, f);
}

std::vector<std::set<int>> brute_force_cuts(const DecoratedTree& t) {
    FlatTree f;
    flatten(t, -1, f);
    const int n = static_cast<int>(f.parent.size());
    // root-to-leaf paths as edge sets (edge = child node id)
    std::vector<std::vector<int>> paths;
    for (int v = 1; v < n; ++v) {
        bool leaf = true;
        for (int w = v + 1; w < n; ++w)
            if (f.parent[w] == v) leaf = false;
        if (!leaf) continue;
        std::vector<int> path;
        for (int w = v; w > 0; w = f.parent[w]) path.push_back(w);
        paths.push_back(path);
    }
    // also nodes with children count 0 == handled; single-node tree: no paths
    std::vector<std::set<int>> cuts;
    for (int mask = 1; mask < (1 << (n - 1)); ++mask) {
        std::set<int> edges;
        for (int e = 1; e < n; ++e)
            if (mask & (1 << (e - 1))) edges.insert(e);
        bool ok = true;
        for (const auto& path : paths) {
            int hits = 0;
            for (int e : path) hits += edges.count(e);
            if (hits > 1) ok = false;
        }
        if (ok) cuts.push_back(edges);
    }
    return cuts;
}

// Independent tree generator: every rooted tree admits a labeling with
// parent[i] < i, so all parent arrays plus all decoration maps, canonically
// deduplicated, enumerate the isomorphism classes.
DecoratedTree from_parent_array(const std::vector<int>& parent, const std::vector<int>& dec) {
    const int n = static_cast<int>(parent.size());
    std::vector<std::vector<int>> kids(n);
    for (int v = 1; v < n; ++v) kids[parent[v]].push_back(v);
    struct B {
        const std::vector<std::vector<int>>& kids;
        const std::vector<int>& dec;
        DecoratedTree build(int v) const {
            std::vector<DecoratedTree> cs;
            for (int c : kids[v]) cs.push_back(build(c));
            return DecoratedTree(dec[v], std::move(cs));
        }
    } b{kids, dec};
    return b.build(0);
}

std::set<DecoratedTree> brute_force_trees(int n, int d) {
    std::set<DecoratedTree> out;
    std::vector<int> parent(n, 0);
    parent[0] = -1;
    auto gen_decorations = [&](const std::vector<int>& par) {
        std::vector<int> dec(n, 1);
        while (true) {
            out.insert(from_parent_array(par, dec));
            int pos = n - 1;
            while (pos >= 0 && dec[pos] == d) dec[pos--] = 1;
            if (pos < 0) break;
            ++dec[pos];
        }
    };
    // iterate all parent arrays with parent[i] in [0, i)
    std::vector<int> idx(n, 0);
    while (true) {
        std::vector<int> par(n);
        par[0] = -1;
        for (int i = 1; i < n; ++i) par[i] = idx[i];
        gen_decorations(par);
        int pos = n - 1;
        while (pos >= 1 && idx[pos] == pos - 1) idx[pos--] = 0;
        if (pos < 1) break;
        ++idx[pos];
    }
    return out;
}

}  // namespace

TEST_CASE("canonical form is insertion-order independent and idempotent") {
    DecoratedTree a(1, {DecoratedTree(2), DecoratedTree(1, {DecoratedTree(2)})});
    DecoratedTree b(1, {DecoratedTree(1, {DecoratedTree(2)}), DecoratedTree(2)});
    CHECK(a == b);
    CHECK(a.str() == b.str());
    CHECK(parse_tree(a.str()) == a);
}

TEST_CASE("graft") {
    CHECK(graft(parse_forest("[2]"), 1) == parse_tree("[1[2]]"));
    CHECK(graft(DecoratedForest(), 1) == parse_tree("[1]"));
    CHECK(graft(parse_forest("[2][3]"), 1) == parse_tree("[1[2][3]]"));
    CHECK_THROWS_AS(graft(DecoratedForest(), 0), std::invalid_argument);
    CHECK(graft(parse_forest("[2]"), 1).size() == 2);
}

TEST_CASE("graft is injective on (forest, decoration) pairs") {
    auto forests = enumerate_forests(3, 2);
    std::set<DecoratedTree> seen;
    std::size_t count = 0;
    for (const auto& f : forests)
        for (int i = 1; i <= 2; ++i) {
            seen.insert(graft(f, i));
            ++count;
        }
    // plus grafts of the empty forest
    seen.insert(graft(DecoratedForest(), 1));
    seen.insert(graft(DecoratedForest(), 2));
    CHECK(seen.size() == count + 2);
}

TEST_CASE("admissible cuts: examples") {
    CHECK(admissible_cuts(parse_tree("[1]")).empty());

    auto cuts_I = admissible_cuts(parse_tree("[1[2]]"));
    REQUIRE(cuts_I.size() == 1);
    CHECK(cuts_I[0].pruned == parse_forest("[2]"));
    CHECK(cuts_I[0].root_part == parse_tree("[1]"));

    auto cuts_V = admissible_cuts(parse_tree("[1[2][3]]"));
    REQUIRE(cuts_V.size() == 3);
    std::multiset<std::pair<std::string, std::string>> got;
    for (const auto& c : cuts_V) got.insert({c.pruned.str(), c.root_part.str()});
    std::multiset<std::pair<std::string, std::string>> want{
        {"[2]", "[1[3]]"}, {"[3]", "[1[2]]"}, {"[2][3]", "[1]"}};
    CHECK(got == want);
}

TEST_CASE("admissible cuts agree with the edge-subset oracle up to 5 nodes") {
    for (int n = 1; n <= 5; ++n) {
        for (const auto& t : enumerate_trees(n, 2)) {
            if (t.size() != n) continue;
            auto fast = admissible_cuts(t);
            auto slow = brute_force_cuts(t);
            std::set<std::set<int>> fast_edges;
            for (const auto& c : fast) fast_edges.insert(c.cut_edges);
            std::set<std::set<int>> slow_edges(slow.begin(), slow.end());
            REQUIRE(fast_edges == slow_edges);
            // pruned/root sizes add up
            for (const auto& c : fast)
                CHECK(c.pruned.size() + c.root_part.size() == t.size());
        }
    }
}

TEST_CASE("tree enumeration counts and oracle") {
    CHECK(enumerate_trees(1, 2).size() == 2);
    CHECK(enumerate_trees(3, 1).size() == 4);
    CHECK(enumerate_trees(2, 2).size() == 6);
    for (int n = 1; n <= 5; ++n)
        for (int d = 1; d <= 2; ++d) {
            std::set<DecoratedTree> slow;
            for (int k = 1; k <= n; ++k) {
                auto part = brute_force_trees(k, d);
                slow.insert(part.begin(), part.end());
            }
            auto fast = enumerate_trees(n, d);
            REQUIRE(fast.size() == slow.size());
            CHECK(std::set<DecoratedTree>(fast.begin(), fast.end()) == slow);
            CHECK(std::is_sorted(fast.begin(), fast.end(), tree_less));
        }
}

TEST_CASE("enumeration cap guard") {
    CHECK_THROWS_AS(enumerate_trees(12, 9), std::length_error);
}

TEST_CASE("contains") {
    auto I12 = parse_tree("[1[2]]");
    CHECK(contains(I12, I12));
    CHECK(contains(I12, parse_tree("[2]")));
    CHECK(contains(I12, parse_tree("[1]")));
    CHECK_FALSE(contains(I12, parse_tree("[3]")));
    CHECK_FALSE(contains(parse_tree("[1]"), I12));
    // embedding may drop children: the cherry contains both ladders
    auto V = parse_tree("[1[2][3]]");
    CHECK(contains(V, parse_tree("[1[2]]")));
    CHECK(contains(V, parse_tree("[1[3]]")));
    CHECK_FALSE(contains(V, parse_tree("[2[3]]")));
    // multiset matching has to backtrack
    auto host = parse_tree("[1[2[3]][2[4]]]");
    CHECK(contains(host, parse_tree("[1[2[4]]]")));
    CHECK(contains(host, parse_tree("[2[3]]")));
}

TEST_CASE("forest grammar round-trips") {
    CHECK(parse_forest("1").is_unit());
    CHECK(parse_forest(" [1] [2[3]] ").str() == "[1][2[3]]");
    for (const auto& f : enumerate_forests(4, 2)) CHECK(parse_forest(f.str()) == f);
    CHECK_THROWS_AS(parse_forest(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_forest("[1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_tree("[1]x"), std::invalid_argument);
}
