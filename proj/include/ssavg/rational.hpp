#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ssavg {

// Exact rational on 64-bit words. Intermediates go through __int128; a result
// that does not fit back into int64 throws. Denominators in this project stay
// tiny (Hurwitz weights divide 6, GL2 orders fit easily), so this is plenty.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    static Rational from128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        const __int128 lo = -(__int128)0x7fffffffffffffffLL - 1;
        const __int128 hi = (__int128)0x7fffffffffffffffLL;
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("Rational: overflow");
        Rational r;
        r.num = (long long)n;
        r.den = (long long)d;
        return r;
    }

    Rational operator+(const Rational& o) const {
        return from128((__int128)num * o.den + (__int128)o.num * den,
                       (__int128)den * o.den);
    }
    Rational operator-(const Rational& o) const {
        return from128((__int128)num * o.den - (__int128)o.num * den,
                       (__int128)den * o.den);
    }
    Rational operator*(const Rational& o) const {
        return from128((__int128)num * o.num, (__int128)den * o.den);
    }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw std::domain_error("Rational: division by zero");
        return from128((__int128)num * o.den, (__int128)den * o.num);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return (__int128)num * o.den < (__int128)o.num * den;
    }

    double to_double() const { return (double)num / (double)den; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

} // namespace ssavg
