#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace loopline {

// Exact rational over 64-bit numerator/denominator. Tour lengths, event
// times and competitive ratios are compared exactly; floating point is
// only used for display.
class Rat {
public:
    constexpr Rat() = default;
    constexpr Rat(long long n) : num_(n) {}
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                    i128(a.den_) * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                    i128(a.den_) * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rat operator-() const { Rat r; r.num_ = -num_; r.den_ = den_; return r; }
    Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
    Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
    Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    // Canonical text form: "p" when integral, otherwise "p/q".
    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

    // Fixed-point display with the given number of fraction digits,
    // rounded half away from zero.
    std::string fixed(int digits) const {
        long long scale = 1;
        for (int i = 0; i < digits; ++i) scale *= 10;
        i128 scaled = i128(num_) * scale * 2;
        i128 q = scaled / den_;
        if (q >= 0) q = (q + 1) / 2; else q = (q - 1) / 2;
        long long v = (long long)q;
        bool neg = v < 0;
        unsigned long long a = neg ? -(unsigned long long)v : v;
        std::string frac = std::to_string(a % scale);
        while ((long long)frac.size() < digits) frac.insert(frac.begin(), '0');
        std::string out = (neg ? "-" : "") + std::to_string(a / scale);
        if (digits > 0) out += "." + frac;
        return out;
    }

    double to_double() const { return double(num_) / double(den_); }

    // Parses "p" or "p/q".
    static Rat parse(const std::string& text) {
        auto slash = text.find('/');
        try {
            if (slash == std::string::npos) return Rat(std::stoll(text));
            return Rat(std::stoll(text.substr(0, slash)),
                       std::stoll(text.substr(slash + 1)));
        } catch (const std::exception&) {
            throw std::invalid_argument("Rat: cannot parse '" + text + "'");
        }
    }

    // Exact conversion from a binary double (doubles are dyadic rationals).
    static Rat from_double_exact(double x);

private:
    using i128 = __int128;

    static Rat make(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        Rat r;
        r.num_ = narrow(n);
        r.den_ = narrow(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    static long long narrow(i128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw std::overflow_error("Rat: 64-bit overflow");
        return (long long)v;
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rat: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_ = 0;
    long long den_ = 1;
};

inline Rat Rat::from_double_exact(double x) {
    if (x != x) throw std::invalid_argument("Rat: NaN");
    Rat r(0);
    Rat scale(1);
    // Peel off the fractional part bit by bit; doubles have <= 52 of them.
    long long ip = (long long)x;
    double frac = x - double(ip);
    r = Rat(ip);
    for (int i = 0; i < 64 && frac != 0.0; ++i) {
        frac *= 2;
        scale = scale / Rat(2);
        long long bit = (long long)frac;
        if (bit != 0) { r += scale * Rat(bit); frac -= double(bit); }
    }
    return r;
}

}  // namespace loopline
