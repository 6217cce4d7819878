#pragma once

#include <map>
#include <utility>

#include "roughforge/rational.hpp"

namespace roughforge {

/// Sparse linear combination of basis keys with exact rational coefficients.
/// Zero coefficients are never stored.
template <class K>
class LinearCombo {
public:
    using Map = std::map<K, Rational>;

    LinearCombo() = default;
    explicit LinearCombo(const K& k) { terms_[k] = Rational(1); }
    LinearCombo(const K& k, const Rational& c) { add(k, c); }

    const Map& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coeff(const K& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add(const K& k, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    LinearCombo& operator+=(const LinearCombo& o) {
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    LinearCombo& operator-=(const LinearCombo& o) {
        for (const auto& [k, c] : o.terms_) add(k, -c);
        return *this;
    }
    LinearCombo& operator*=(const Rational& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, v] : terms_) v *= c;
        return *this;
    }

    friend LinearCombo operator+(LinearCombo a, const LinearCombo& b) { return a += b; }
    friend LinearCombo operator-(LinearCombo a, const LinearCombo& b) { return a -= b; }
    friend LinearCombo operator*(LinearCombo a, const Rational& c) { return a *= c; }
    friend LinearCombo operator*(const Rational& c, LinearCombo a) { return a *= c; }

    friend bool operator==(const LinearCombo& a, const LinearCombo& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LinearCombo& a, const LinearCombo& b) { return !(a == b); }

    /// Bilinear extension of a key-level product.
    template <class F>
    static LinearCombo bilinear(const LinearCombo& a, const LinearCombo& b, F&& key_product) {
        LinearCombo out;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                LinearCombo p = key_product(ka, kb);
                p *= ca * cb;
                out += p;
            }
        return out;
    }

    template <class F>
    LinearCombo map_keys(F&& f) const {
        LinearCombo out;
        for (const auto& [k, c] : terms_) out.add(f(k), c);
        return out;
    }

private:
    Map terms_;
};

}  // namespace roughforge
