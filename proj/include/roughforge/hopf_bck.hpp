#pragma once

#include <vector>

#include "roughforge/forest.hpp"
#include "roughforge/linear_combo.hpp"

namespace roughforge {

/// Rational combination of forests (element of the Butcher-Connes-Kreimer
/// Hopf algebra).
using ForestCombo = LinearCombo<DecoratedForest>;

/// Sparse tensor of fixed arity k >= 1: rational combination of k-tuples of
/// canonical forests.
using ForestTensor = LinearCombo<std::vector<DecoratedForest>>;

ForestCombo forest_product(const ForestCombo& a, const ForestCombo& b);

/// Full coproduct. On a tree: tau (x) 1 + 1 (x) tau + sum over admissible
/// cuts of P^C (x) R^C; extended multiplicatively to forests.
ForestTensor bck_coproduct(const DecoratedForest& forest);
ForestTensor bck_coproduct(const ForestCombo& x);

/// Reduced coproduct: bck_coproduct(x) - x(x)1 - 1(x)x.
ForestTensor reduced_coproduct(const DecoratedForest& forest);
ForestTensor reduced_coproduct(const ForestCombo& x);

/// n-fold iterated coproducts, arity n+1 (n = 0 gives the identity tensor).
ForestTensor iterated_coproduct(const DecoratedForest& forest, int n);
/// n-fold reduced coproduct, arity n+1; vanishes when n >= |x|.
ForestTensor iterated_reduced(const DecoratedForest& forest, int n);

/// Antipode via the admissible-cut recursion
/// S(tau) = -tau - sum_cuts S(P^C) . R^C, extended as an algebra morphism.
ForestCombo antipode(const DecoratedForest& forest);

}  // namespace roughforge
