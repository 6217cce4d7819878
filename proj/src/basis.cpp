#include "roughforge/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roughforge {

int TruncatedBasis::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

std::span<const int> TruncatedBasis::elements_of_degree(int k) const {
    if (k < 1 || k > max_degree_) return {};
    return by_degree_[k - 1];
}

std::span<const TruncatedBasis::SplitTerm> TruncatedBasis::splits(int i, int arity) const {
    if (arity < 1 || arity > degree_[i]) return {};
    return splits_[i][arity - 1];
}

const DecoratedForest& TruncatedBasis::forest_at(int i) const {
    if (kind_ != Kind::forests) throw std::logic_error("not a forest basis");
    return forests_[i];
}

const Word& TruncatedBasis::word_at(int i) const {
    if (kind_ != Kind::words) throw std::logic_error("not a word basis");
    return words_[i];
}

const Alphabet& TruncatedBasis::alphabet() const {
    if (kind_ != Kind::words) throw std::logic_error("not a word basis");
    return alphabet_;
}

void TruncatedBasis::build_index() {
    index_.reserve(names_.size());
    for (int i = 0; i < size(); ++i) index_[names_[i]] = i;
}

void TruncatedBasis::finalize() {
    const int n = size();
    by_degree_.assign(max_degree_, {});
    for (int i = 0; i < n; ++i) by_degree_[degree_[i] - 1].push_back(i);
    for (int i : by_degree_[0]) level1_.push_back(i);

    // Iterated reduced coproducts by arity. Delta'_{j-1} expands the last
    // slot: splits(x, j) = sum over Delta'x = c (a (x) b) of a prepended to
    // splits(b, j-1). Conilpotency bounds the arity by the degree.
    splits_.assign(n, {});
    for (int k = 1; k <= max_degree_; ++k) {
        for (int i : by_degree_[k - 1]) {
            splits_[i].resize(k);
            splits_[i][0].push_back({Rational(1), 1.0, {i}});
            for (int arity = 2; arity <= k; ++arity) {
                for (const auto& ct : reduced_cop_[i]) {
                    if (degree_[ct.right] < arity - 1) continue;
                    for (const auto& sub : splits_[ct.right][arity - 2]) {
                        SplitTerm st;
                        st.coeff = ct.coeff * sub.coeff;
                        st.coeff_d = st.coeff.to_double();
                        st.slots.reserve(arity);
                        st.slots.push_back(ct.left);
                        st.slots.insert(st.slots.end(), sub.slots.begin(), sub.slots.end());
                        splits_[i][arity - 1].push_back(std::move(st));
                    }
                }
            }
        }
    }

    double dmax = 1.0;
    for (int i = 0; i < n; ++i) {
        double s = 2.0;  // the two unit-bearing terms of the full coproduct
        for (const auto& ct : reduced_cop_[i]) s += std::abs(ct.coeff_d);
        dmax = std::max(dmax, s);
    }
    norm_constant_ = dmax;
    build_products();
}

std::shared_ptr<const TruncatedBasis> TruncatedBasis::make_forests(int N, int d,
                                                                   const Rational& gamma,
                                                                   bool include_zero) {
    if (N < 1 || d < 1) throw std::invalid_argument("forest basis requires N >= 1, d >= 1");
    if (!(Rational(0) < gamma && gamma < Rational(1)))
        throw std::domain_error("gamma outside (0,1)");
    auto b = std::shared_ptr<TruncatedBasis>(new TruncatedBasis());
    b->kind_ = Kind::forests;
    b->max_degree_ = N;
    b->d_ = d;
    b->include_zero_ = include_zero;
    b->min_gamma_ = gamma;
    b->weight_cap_ = gamma * Rational(N);

    b->forests_ = enumerate_forests(N, d, include_zero);
    const int n = static_cast<int>(b->forests_.size());
    b->names_.reserve(n);
    for (const auto& f : b->forests_) {
        b->names_.push_back(f.str());
        b->degree_.push_back(f.size());
        b->gamma_weight_.push_back(gamma * Rational(f.size()));
    }
    b->build_index();

    b->reduced_cop_.assign(n, {});
    for (int i = 0; i < n; ++i) {
        ForestTensor red = reduced_coproduct(b->forests_[i]);
        for (const auto& [pair, c] : red.terms()) {
            int l = b->index_of(pair[0].str());
            int r = b->index_of(pair[1].str());
            if (l < 0 || r < 0) throw std::logic_error("coproduct term outside basis");
            b->reduced_cop_[i].push_back({l, r, c, c.to_double()});
        }
    }
    b->antipode_.assign(n, {});
    for (int i = 0; i < n; ++i) {
        ForestCombo anti = antipode(b->forests_[i]);
        for (const auto& [f, c] : anti.terms()) {
            int j = b->index_of(f.str());
            if (j < 0) throw std::logic_error("antipode term outside basis");
            b->antipode_[i].push_back({j, c, c.to_double()});
        }
    }
    b->finalize();
    return b;
}

std::shared_ptr<const TruncatedBasis> TruncatedBasis::make_words(const Alphabet& a, int N) {
    a.validate();
    if (N < 1) throw std::invalid_argument("word basis requires N >= 1");
    auto b = std::shared_ptr<TruncatedBasis>(new TruncatedBasis());
    b->kind_ = Kind::words;
    b->max_degree_ = N;
    b->d_ = a.size();
    b->alphabet_ = a;
    b->min_gamma_ = a.min_gamma();
    b->weight_cap_ = b->min_gamma_ * Rational(N);
    b->words_ = word_basis(a.size(), N);
    if (b->words_.size() > enumeration_cap())
        throw std::length_error("enumeration exceeds configured basis cap");

    const int n = static_cast<int>(b->words_.size());
    for (const auto& w : b->words_) {
        b->names_.push_back(word_str(a, w));
        b->degree_.push_back(w.length());
        b->gamma_weight_.push_back(roughforge::gamma_weight(a, w));
    }
    b->build_index();

    b->reduced_cop_.assign(n, {});
    b->antipode_.assign(n, {});
    for (int i = 0; i < n; ++i) {
        WordTensor red = reduced_deconcat(b->words_[i]);
        for (const auto& [pair, c] : red.terms()) {
            int l = b->index_of(word_str(a, pair[0]));
            int r = b->index_of(word_str(a, pair[1]));
            if (l < 0 || r < 0) throw std::logic_error("deconcatenation term outside basis");
            b->reduced_cop_[i].push_back({l, r, c, c.to_double()});
        }
        auto [sign, rev] = word_antipode(b->words_[i]);
        int j = b->index_of(word_str(a, rev));
        if (j < 0) throw std::logic_error("antipode term outside basis");
        b->antipode_[i].push_back({j, sign, sign.to_double()});
    }
    b->finalize();
    return b;
}

std::shared_ptr<const TruncatedBasis> TruncatedBasis::make_words_anisotropic(const Alphabet& a) {
    a.validate();
    auto b = std::shared_ptr<TruncatedBasis>(new TruncatedBasis());
    b->kind_ = Kind::words;
    b->d_ = a.size();
    b->alphabet_ = a;
    b->min_gamma_ = a.min_gamma();
    b->weight_cap_ = Rational(1);
    b->words_ = anisotropic_basis(a);
    if (b->words_.size() > enumeration_cap())
        throw std::length_error("enumeration exceeds configured basis cap");

    int maxdeg = 0;
    for (const auto& w : b->words_) maxdeg = std::max(maxdeg, w.length());
    b->max_degree_ = maxdeg;

    const int n = static_cast<int>(b->words_.size());
    for (const auto& w : b->words_) {
        b->names_.push_back(word_str(a, w));
        b->degree_.push_back(w.length());
        b->gamma_weight_.push_back(roughforge::gamma_weight(a, w));
    }
    b->build_index();

    b->reduced_cop_.assign(n, {});
    b->antipode_.assign(n, {});
    for (int i = 0; i < n; ++i) {
        WordTensor red = reduced_deconcat(b->words_[i]);
        for (const auto& [pair, c] : red.terms()) {
            // Subcoalgebra property: both deconcatenation factors stay in
            // the weight-bounded set.
            int l = b->index_of(word_str(a, pair[0]));
            int r = b->index_of(word_str(a, pair[1]));
            if (l < 0 || r < 0) throw std::logic_error("deconcatenation term outside basis");
            b->reduced_cop_[i].push_back({l, r, c, c.to_double()});
        }
        auto [sign, rev] = word_antipode(b->words_[i]);
        int j = b->index_of(word_str(a, rev));
        if (j < 0) throw std::logic_error("antipode term outside basis");
        b->antipode_[i].push_back({j, sign, sign.to_double()});
    }
    b->finalize();
    return b;
}

void TruncatedBasis::build_products() {
    const int n = size();
    products_.assign(static_cast<std::size_t>(n) * n, {});
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            if (gamma_weight_[i] + gamma_weight_[j] > weight_cap_) continue;
            ProductRow row;
            row.in_truncation = true;
            if (kind_ == Kind::forests) {
                DecoratedForest p = forests_[i].concat(forests_[j]);
                int k = index_of(p.str());
                if (k < 0) throw std::logic_error("in-truncation product missing from basis");
                row.terms.push_back({k, Rational(1), 1.0});
            } else {
                WordCombo sh = shuffle(words_[i], words_[j]);
                for (const auto& [w, c] : sh.terms()) {
                    int k = index_of(word_str(alphabet_, w));
                    if (k < 0)
                        throw std::logic_error("in-truncation shuffle term missing from basis");
                    row.terms.push_back({k, c, c.to_double()});
                }
            }
            products_[static_cast<std::size_t>(i) * n + j] = row;
            products_[static_cast<std::size_t>(j) * n + i] = std::move(row);
        }
    }
}

}  // namespace roughforge
