#pragma once

// Exact rational arithmetic on checked 64-bit integers.
//
// Every constant in the engine (metric coefficients, curvature-family
// weights, fluid ratios like 13/75) is an exact rational; floating point
// only ever appears at evaluation time. Overflow throws instead of
// wrapping silently.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gtorsion {

class RationalError : public std::runtime_error {
public:
    explicit RationalError(const std::string& what) : std::runtime_error(what) {}
};

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    bool is_integer() const { return den_ == 1; }
    bool is_negative() const { return num_ < 0; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    Rational operator-() const { return Rational(checked(-static_cast<__int128>(num_)), den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ +
                     static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return make(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.num_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return make(n, d);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw RationalError("rational division by zero");
        __int128 n = static_cast<__int128>(a.num_) * b.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.num_;
        return make(n, d);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ <
               static_cast<__int128>(b.num_) * a.den_;
    }

    // Integer power; exponent may be negative (base must be nonzero then).
    Rational pow_int(long long e) const {
        if (e < 0) {
            if (num_ == 0) throw RationalError("zero raised to a negative power");
            return Rational(1) / pow_int(-e);
        }
        Rational out(1);
        Rational base = *this;
        while (e > 0) {
            if (e & 1) out *= base;
            base = (e > 1) ? base * base : base;
            e >>= 1;
        }
        return out;
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Parse "p", "p/q", or a decimal literal like "2.5" into an exact value.
    static Rational from_decimal(const std::string& digits);

private:
    long long num_;
    long long den_;  // always > 0, gcd(|num|, den) == 1

    static long long checked(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw RationalError("rational arithmetic overflow");
        return static_cast<long long>(v);
    }

    static Rational make(__int128 n, __int128 d) {
        if (d == 0) throw RationalError("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num_ = checked(n);
        r.den_ = checked(d);
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() { *this = make(num_, den_); }
};

inline Rational Rational::from_decimal(const std::string& digits) {
    auto slash = digits.find('/');
    if (slash != std::string::npos) {
        long long n = std::stoll(digits.substr(0, slash));
        long long d = std::stoll(digits.substr(slash + 1));
        return Rational(n, d);
    }
    auto dot = digits.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(digits));
    std::string whole = digits.substr(0, dot);
    std::string frac = digits.substr(dot + 1);
    Rational scale(1);
    for (size_t i = 0; i < frac.size(); ++i) scale *= Rational(10);
    long long wholeval = whole.empty() ? 0 : std::stoll(whole);
    long long fracval = frac.empty() ? 0 : std::stoll(frac);
    Rational out = Rational(wholeval) + Rational(fracval) / scale;
    return out;
}

}  // namespace gtorsion
