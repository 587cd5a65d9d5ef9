#pragma once

#include "edgericci/error.hpp"

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

namespace edgericci {

/// Exact fraction over 64-bit integers. Always normalized: gcd(num, den) == 1
/// and den > 0. Every operation that would leave the int64 range throws
/// ErrorCode::RationalOverflow instead of wrapping.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value) {} // NOLINT(implicit)

    Rational(std::int64_t num, std::int64_t den)
    {
        if (den == 0)
            throw Error(ErrorCode::InvalidParameter, "zero denominator");
        assign(static_cast<__int128>(num), static_cast<__int128>(den));
    }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    explicit operator double() const noexcept { return to_double(); }

    bool is_zero() const noexcept { return num_ == 0; }

    std::string str() const
    {
        if (den_ == 1)
            return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        Rational r;
        r.assign(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                 static_cast<__int128>(a.den_) * b.den_);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b)
    {
        Rational r;
        r.assign(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                 static_cast<__int128>(a.den_) * b.den_);
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b)
    {
        Rational r;
        r.assign(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b)
    {
        if (b.num_ == 0)
            throw Error(ErrorCode::InvalidParameter, "division by zero rational");
        Rational r;
        r.assign(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
        return r;
    }
    Rational operator-() const
    {
        Rational r;
        r.assign(-static_cast<__int128>(num_), den_);
        return r;
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept
    {
        const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        return lhs <=> rhs;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void assign(__int128 num, __int128 den)
    {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        __int128 a = num < 0 ? -num : num;
        __int128 b = den;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        const __int128 g = a == 0 ? 1 : a;
        num /= g;
        den /= g;
        constexpr __int128 lo = INT64_MIN + 1;
        constexpr __int128 hi = INT64_MAX;
        if (num < lo || num > hi || den > hi)
            throw Error(ErrorCode::RationalOverflow, "rational value exceeds 64-bit range");
        num_ = static_cast<std::int64_t>(num);
        den_ = static_cast<std::int64_t>(den);
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

/// lcm with overflow detection, used to scale measures onto an integer lattice.
inline std::int64_t checked_lcm(std::int64_t a, std::int64_t b)
{
    const std::int64_t g = std::gcd(a, b);
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a / g, b, &out))
        throw Error(ErrorCode::RationalOverflow, "lcm exceeds 64-bit range");
    return out;
}

} // namespace edgericci
