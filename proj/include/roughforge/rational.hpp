#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace roughforge {

/// Exact rational arithmetic on 128-bit integers, always stored reduced with
/// a positive denominator. Overflow throws instead of wrapping.
class Rational {
public:
    using Int = __int128;

    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    static Rational from_int128(Int n, Int d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        r.normalize();
        return r;
    }

    // Parses "p/q" or "p". Throws on malformed input or q == 0.
    static Rational parse(const std::string& text);

    Int num() const { return num_; }
    Int den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return from_int128(-num_, den_); }

    Rational& operator+=(const Rational& o) {
        num_ = add_checked(mul_checked(num_, o.den_), mul_checked(o.num_, den_));
        den_ = mul_checked(den_, o.den_);
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o) {
        num_ = mul_checked(num_, o.num_);
        den_ = mul_checked(den_, o.den_);
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw std::domain_error("rational division by zero");
        num_ = mul_checked(num_, o.den_);
        den_ = mul_checked(den_, o.num_);
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return mul_checked(a.num_, b.den_) < mul_checked(b.num_, a.den_);
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    Rational pow(int e) const;

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string str() const;

    // floor(1/x) for x in (0,1]; throws outside that range.
    long long floor_inverse() const;

private:
    Int num_, den_;

    void normalize();

    static Int mul_checked(Int a, Int b);
    static Int add_checked(Int a, Int b);
};

inline Rational rational_factorial(int n) {
    Rational r(1);
    for (int k = 2; k <= n; ++k) r *= Rational(k);
    return r;
}

inline Rational rational_binomial(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    Rational r(1);
    for (int j = 1; j <= k; ++j) r *= Rational(n - k + j, j);
    return r;
}

}  // namespace roughforge
