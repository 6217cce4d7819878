#include "roughforge/hopf_bck.hpp"

#include <map>

namespace roughforge {

namespace {

ForestTensor tensor_of(const DecoratedForest& a, const DecoratedForest& b) {
    return ForestTensor(std::vector<DecoratedForest>{a, b});
}

// Componentwise forest product of two equal-arity tensors.
ForestTensor tensor_product(const ForestTensor& a, const ForestTensor& b) {
    return ForestTensor::bilinear(a, b, [](const auto& u, const auto& v) {
        std::vector<DecoratedForest> w;
        w.reserve(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) w.push_back(u[i].concat(v[i]));
        return ForestTensor(std::move(w));
    });
}

ForestTensor tree_coproduct(const DecoratedTree& t) {
    DecoratedForest whole(t);
    ForestTensor out = tensor_of(whole, DecoratedForest());
    out += tensor_of(DecoratedForest(), whole);
    for (const auto& cut : admissible_cuts(t))
        out += tensor_of(cut.pruned, DecoratedForest(cut.root_part));
    return out;
}

}  // namespace

ForestCombo forest_product(const ForestCombo& a, const ForestCombo& b) {
    return ForestCombo::bilinear(
        a, b, [](const auto& u, const auto& v) { return ForestCombo(u.concat(v)); });
}

ForestTensor bck_coproduct(const DecoratedForest& forest) {
    ForestTensor out = tensor_of(DecoratedForest(), DecoratedForest());
    for (const auto& t : forest.factors()) out = tensor_product(out, tree_coproduct(t));
    return out;
}

ForestTensor bck_coproduct(const ForestCombo& x) {
    ForestTensor out;
    for (const auto& [f, c] : x.terms()) out += bck_coproduct(f) * c;
    return out;
}

ForestTensor reduced_coproduct(const DecoratedForest& forest) {
    ForestTensor out = bck_coproduct(forest);
    out -= tensor_of(forest, DecoratedForest());
    out -= tensor_of(DecoratedForest(), forest);
    return out;
}

ForestTensor reduced_coproduct(const ForestCombo& x) {
    ForestTensor out;
    for (const auto& [f, c] : x.terms()) out += reduced_coproduct(f) * c;
    return out;
}

ForestTensor iterated_coproduct(const DecoratedForest& forest, int n) {
    ForestTensor acc(std::vector<DecoratedForest>{forest});
    for (int step = 0; step < n; ++step) {
        // Delta_n = (id (x) Delta_{n-1}) Delta: expand the last slot.
        ForestTensor next;
        for (const auto& [tup, c] : acc.terms()) {
            ForestTensor expand = bck_coproduct(tup.back());
            for (const auto& [pair, c2] : expand.terms()) {
                std::vector<DecoratedForest> t(tup.begin(), tup.end() - 1);
                t.push_back(pair[0]);
                t.push_back(pair[1]);
                next.add(std::move(t), c * c2);
            }
        }
        acc = std::move(next);
    }
    return acc;
}

ForestTensor iterated_reduced(const DecoratedForest& forest, int n) {
    if (forest.is_unit()) return ForestTensor();
    ForestTensor acc(std::vector<DecoratedForest>{forest});
    for (int step = 0; step < n; ++step) {
        ForestTensor next;
        for (const auto& [tup, c] : acc.terms()) {
            ForestTensor expand = reduced_coproduct(tup.back());
            for (const auto& [pair, c2] : expand.terms()) {
                std::vector<DecoratedForest> t(tup.begin(), tup.end() - 1);
                t.push_back(pair[0]);
                t.push_back(pair[1]);
                next.add(std::move(t), c * c2);
            }
        }
        acc = std::move(next);
    }
    return acc;
}

namespace {

ForestCombo antipode_tree(const DecoratedTree& t, std::map<DecoratedTree, ForestCombo>& memo);

ForestCombo antipode_forest(const DecoratedForest& f,
                            std::map<DecoratedTree, ForestCombo>& memo) {
    ForestCombo out(DecoratedForest{});
    for (const auto& t : f.factors()) out = forest_product(out, antipode_tree(t, memo));
    return out;
}

ForestCombo antipode_tree(const DecoratedTree& t, std::map<DecoratedTree, ForestCombo>& memo) {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    ForestCombo out(DecoratedForest(t), Rational(-1));
    for (const auto& cut : admissible_cuts(t)) {
        ForestCombo sp = antipode_forest(cut.pruned, memo);
        out -= forest_product(sp, ForestCombo(DecoratedForest(cut.root_part)));
    }
    memo.emplace(t, out);
    return out;
}

}  // namespace

ForestCombo antipode(const DecoratedForest& forest) {
    std::map<DecoratedTree, ForestCombo> memo;
    return antipode_forest(forest, memo);
}

}  // namespace roughforge
