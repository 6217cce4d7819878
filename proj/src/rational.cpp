#include "roughforge/rational.hpp"

#include <algorithm>

namespace roughforge {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

void Rational::normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    Int g = gcd128(num_, den_);
    num_ /= g;
    den_ /= g;
}

Rational::Int Rational::mul_checked(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("rational overflow in multiplication");
    return r;
}

Rational::Int Rational::add_checked(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("rational overflow in addition");
    return r;
}

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    auto parse_int = [](const std::string& s) -> long long {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("malformed rational: " + s);
        return v;
    };
    if (slash == std::string::npos) return Rational(parse_int(text));
    long long p = parse_int(text.substr(0, slash));
    long long q = parse_int(text.substr(slash + 1));
    if (q == 0) throw std::domain_error("rational with zero denominator");
    return Rational(p, q);
}

Rational Rational::pow(int e) const {
    if (e < 0) {
        if (num_ == 0) throw std::domain_error("zero to negative power");
        return Rational::from_int128(den_, num_).pow(-e);
    }
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= *this;
    return r;
}

std::string Rational::str() const {
    auto int_str = [](Int v) {
        if (v == 0) return std::string("0");
        bool neg = v < 0;
        if (neg) v = -v;
        std::string s;
        while (v > 0) {
            s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
            v /= 10;
        }
        if (neg) s.push_back('-');
        std::reverse(s.begin(), s.end());
        return s;
    };
    if (den_ == 1) return int_str(num_);
    return int_str(num_) + "/" + int_str(den_);
}

long long Rational::floor_inverse() const {
    if (num_ <= 0 || *this > Rational(1))
        throw std::domain_error("floor_inverse requires a value in (0,1]");
    // floor(den/num)
    return static_cast<long long>(den_ / num_);
}

}  // namespace roughforge
