#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace divkit {

/// Exact chain coefficient. Always stored reduced with a positive denominator.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num(n), den(1) {}  // NOLINT(implicit)
    constexpr Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const auto g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    template <typename T = double>
    constexpr T value() const {
        return static_cast<T>(num) / static_cast<T>(den);
    }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

    friend constexpr Rational operator*(Rational a, Rational b) {
        return {a.num * b.num, a.den * b.den};
    }
    friend constexpr Rational operator/(Rational a, Rational b) {
        return {a.num * b.den, a.den * b.num};
    }
    friend constexpr Rational operator-(Rational a) { return {-a.num, a.den}; }
    friend constexpr bool operator==(Rational a, Rational b) {
        return a.num == b.num && a.den == b.den;
    }
};

}  // namespace divkit
