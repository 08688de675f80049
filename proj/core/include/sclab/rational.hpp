#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "sclab/errors.hpp"

namespace sclab {

// Exact rational with int64 parts. Bounds and defects in this project stay
// tiny (denominators are products of small powers and the defect constant),
// so no big-integer backend is needed; overflow throws instead of wrapping.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw Error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(checked(a.num, b.den) + checked(b.num, a.den), checked(a.den, b.den));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(checked(a.num, b.den) - checked(b.num, a.den), checked(a.den, b.den));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(checked(a.num, b.num), checked(a.den, b.den));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw Error("rational division by zero");
        return Rational(checked(a.num, b.den), checked(a.den, b.num));
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        // dens are positive after normalize
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }

  private:
    static std::int64_t checked(std::int64_t a, std::int64_t b) {
        const __int128 p = static_cast<__int128>(a) * b;
        if (p > INT64_MAX || p < INT64_MIN) throw Error("rational overflow");
        return static_cast<std::int64_t>(p);
    }
};

}  // namespace sclab
