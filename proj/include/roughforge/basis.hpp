#pragma once

#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "roughforge/forest.hpp"
#include "roughforge/hopf_bck.hpp"
#include "roughforge/rational.hpp"
#include "roughforge/word.hpp"

namespace roughforge {

/// Immutable truncated Hopf-algebra basis with precomputed structure tables.
///
/// Two kinds are supported behind one interface: decorated forests with at
/// most N nodes (Butcher-Connes-Kreimer), and words over a weighted alphabet
/// (shuffle algebra), truncated either by length or by total exponent weight.
/// Index 0..size()-1 runs over the non-unit basis elements in canonical
/// order; the unit is handled separately by DualElement.
class TruncatedBasis {
public:
    enum class Kind { forests, words };

    struct CopTerm {
        int left, right;
        Rational coeff;
        double coeff_d;
    };
    struct SplitTerm {
        Rational coeff;
        double coeff_d;
        std::vector<int> slots;  // basis indices of the tensor slots
    };
    struct ScaledIndex {
        int index;
        Rational coeff;
        double coeff_d;
    };

    static std::shared_ptr<const TruncatedBasis> make_forests(int N, int d,
                                                              const Rational& gamma,
                                                              bool include_zero = false);
    /// Words of length <= N over the alphabet (isotropic truncation).
    static std::shared_ptr<const TruncatedBasis> make_words(const Alphabet& a, int N);
    /// Words of total exponent weight <= 1 (the weight-bounded set).
    static std::shared_ptr<const TruncatedBasis> make_words_anisotropic(const Alphabet& a);

    Kind kind() const { return kind_; }
    int size() const { return static_cast<int>(names_.size()); }
    int max_degree() const { return max_degree_; }
    int degree(int i) const { return degree_[i]; }
    /// Total Holder exponent of the element: gamma * |F| for forests,
    /// sum of letter exponents for words. The Holder bound target is
    /// |<X_st, v>| <= C |t-s|^{gamma_weight(v)}.
    const Rational& gamma_weight(int i) const { return gamma_weight_[i]; }
    /// Anisotropic weight omega(v) = gamma_weight(v) / min_gamma.
    Rational omega(int i) const { return gamma_weight_[i] / min_gamma_; }
    const Rational& min_gamma() const { return min_gamma_; }
    const Rational& weight_cap() const { return weight_cap_; }

    const std::string& name(int i) const { return names_[i]; }
    int index_of(const std::string& name) const;

    int level1_count() const { return static_cast<int>(level1_.size()); }
    int level1_index(int pos) const { return level1_[pos]; }

    std::span<const CopTerm> reduced_cop(int i) const { return reduced_cop_[i]; }
    /// Terms of the (arity-1)-fold reduced coproduct of element i: tensor
    /// tuples of non-unit basis elements. Empty when arity > degree(i);
    /// for arity == degree(i) every slot has degree 1.
    std::span<const SplitTerm> splits(int i, int arity) const;
    std::span<const ScaledIndex> antipode_terms(int i) const { return antipode_[i]; }
    std::span<const int> elements_of_degree(int k) const;

    /// Coproduct structure constant D = max_v sum |c(v1,v2;v)| over the full
    /// coproduct, with the basis taken orthonormal.
    double norm_constant() const { return norm_constant_; }

    /// Product of basis elements i and j expanded in the basis; nullptr when
    /// the product leaves the truncation. Precomputed at construction.
    const std::vector<ScaledIndex>* product(int i, int j) const {
        const auto& row = products_[i * size() + j];
        return row.in_truncation ? &row.terms : nullptr;
    }

    const DecoratedForest& forest_at(int i) const;
    const Word& word_at(int i) const;
    const Alphabet& alphabet() const;
    int decorations() const { return d_; }
    bool zero_decorated() const { return include_zero_; }

private:
    TruncatedBasis() = default;
    void build_index();     // name -> index map
    void build_products();  // pairwise products inside the truncation
    void finalize();        // splits, D, slices, products (needs coproduct tables)

    Kind kind_;
    int max_degree_ = 0;
    int d_ = 0;
    bool include_zero_ = false;
    Rational min_gamma_;
    Rational weight_cap_;

    std::vector<std::string> names_;
    std::vector<int> degree_;
    std::vector<Rational> gamma_weight_;
    std::vector<int> level1_;
    std::vector<std::vector<CopTerm>> reduced_cop_;
    std::vector<std::vector<std::vector<SplitTerm>>> splits_;  // [element][arity-1]
    std::vector<std::vector<ScaledIndex>> antipode_;
    std::vector<std::vector<int>> by_degree_;
    std::unordered_map<std::string, int> index_;
    double norm_constant_ = 0.0;

    struct ProductRow {
        bool in_truncation = false;
        std::vector<ScaledIndex> terms;
    };
    std::vector<ProductRow> products_;

    // underlying elements
    std::vector<DecoratedForest> forests_;
    std::vector<Word> words_;
    Alphabet alphabet_;
};

using BasisPtr = std::shared_ptr<const TruncatedBasis>;

}  // namespace roughforge
