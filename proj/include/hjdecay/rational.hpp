#pragma once

#include "hjdecay/common.hpp"

#include <compare>
#include <cstdint>
#include <numeric>

namespace hjd {

/// Exact rational on int64 with overflow-checked arithmetic. Frequencies and
/// module coordinates stay small at desk scale; a genuine overflow is a hard
/// error rather than a silent wrap.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d)
    {
        if (d == 0) throw invalid_input("rational with zero denominator");
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    double to_double() const { return double(num_) / double(den_); }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        return Rational(checked(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_),
                        checked(__int128(a.den_) * b.den_));
    }
    friend Rational operator-(const Rational& a, const Rational& b)
    {
        return Rational(checked(__int128(a.num_) * b.den_ - __int128(b.num_) * a.den_),
                        checked(__int128(a.den_) * b.den_));
    }
    friend Rational operator*(const Rational& a, const Rational& b)
    {
        return Rational(checked(__int128(a.num_) * b.num_),
                        checked(__int128(a.den_) * b.den_));
    }
    friend Rational operator/(const Rational& a, const Rational& b)
    {
        if (b.num_ == 0) throw invalid_input("rational division by zero");
        return Rational(checked(__int128(a.num_) * b.den_),
                        checked(__int128(a.den_) * b.num_));
    }
    Rational operator-() const { return Rational(-num_, den_); }

    friend bool operator==(const Rational& a, const Rational& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const __int128 l = __int128(a.num_) * b.den_;
        const __int128 r = __int128(b.num_) * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const
    {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

private:
    static std::int64_t checked(__int128 v)
    {
        if (v > std::numeric_limits<std::int64_t>::max() ||
            v < std::numeric_limits<std::int64_t>::min())
            throw numerical_failure("rational arithmetic overflow");
        return std::int64_t(v);
    }

    void normalize()
    {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline std::int64_t lcm_checked(std::int64_t a, std::int64_t b)
{
    const __int128 l = __int128(a) / std::gcd(a, b) * b;
    if (l > std::numeric_limits<std::int64_t>::max())
        throw numerical_failure("lcm overflow");
    return std::int64_t(l);
}

} // namespace hjd
