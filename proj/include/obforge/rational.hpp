#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace obforge {

// Exact rational arithmetic on int64. The pipeline never touches floating
// point; coefficients stay tiny, so int64 has huge headroom.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;  // always > 0, gcd(|num|, den) == 1

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    bool is_integer() const { return den == 1; }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    Rational operator+(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
    Rational operator-(const Rational& o) const { return {num * o.den - o.num * den, den * o.den}; }
    Rational operator*(const Rational& o) const { return {num * o.num, den * o.den}; }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw std::domain_error("rational division by zero");
        return {num * o.den, den * o.num};
    }
    Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

// Largest integer <= r.
inline std::int64_t floor_int(const Rational& r) {
    std::int64_t q = r.num / r.den;
    if (r.num % r.den != 0 && r.num < 0) --q;
    return q;
}

inline std::int64_t ceil_int(const Rational& r) {
    std::int64_t q = r.num / r.den;
    if (r.num % r.den != 0 && r.num > 0) ++q;
    return q;
}

}  // namespace obforge
