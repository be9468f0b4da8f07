#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "mtc/errors.hpp"

namespace mtc {

// Exact rational with 64-bit numerator/denominator, always normalized:
// den > 0 and gcd(|num|, den) = 1.  Intermediates go through 128 bits;
// results that leave the 64-bit range throw Error rather than wrap.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n) {} // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d) { *this = make(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_nonnegative() const { return num_ >= 0; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // "p/q" with the denominator always spelled out ("0/1", "3/16", ...).
    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p/q" or a bare integer "p".
    static Rational parse(const std::string& s);

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw Error("rational division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Representative in [0, 1).
    Rational mod1() const {
        std::int64_t q = num_ / den_;
        std::int64_t r = num_ % den_;
        if (r < 0) { r += den_; --q; }
        (void)q;
        Rational out;
        out.num_ = r;
        out.den_ = den_;
        return out; // gcd unchanged by subtracting an integer
    }

    // Representative in [0, m).
    Rational mod(std::int64_t m) const {
        if (m <= 0) throw Error("modulus must be positive");
        Rational scaled = *this / Rational(m);
        return scaled.mod1() * Rational(m);
    }

private:
    using i128 = __int128;

    static i128 gcd128(i128 a, i128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational make(i128 n, i128 d) {
        if (d == 0) throw Error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw Error("rational overflow (exceeds 64-bit range after reduction)");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    std::size_t slash = s.find('/');
    auto to_i64 = [&s](const std::string& part) {
        if (part.empty()) throw ParseError("bad rational literal: '" + s + "'");
        char* end = nullptr;
        errno = 0;
        long long v = std::strtoll(part.c_str(), &end, 10);
        if (errno != 0 || end != part.c_str() + part.size())
            throw ParseError("bad rational literal: '" + s + "'");
        return static_cast<std::int64_t>(v);
    };
    if (slash == std::string::npos) return Rational(to_i64(s));
    return Rational(to_i64(s.substr(0, slash)), to_i64(s.substr(slash + 1)));
}

} // namespace mtc
