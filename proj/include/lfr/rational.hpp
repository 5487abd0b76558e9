#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace lfr {

/// Exact rational on 64-bit numerator/denominator, always in lowest terms
/// with a positive denominator. Intermediates run through 128-bit integers
/// and overflow of the reduced result throws, so silent wraparound cannot
/// corrupt a load value.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den);

    /// Accepts "p/q" or a bare integer "p". Throws domain_error otherwise.
    static Rational parse(std::string_view text);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    bool is_integer() const noexcept { return den_ == 1; }
    bool is_zero() const noexcept { return num_ == 0; }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

    /// "p/q", or just "p" when integral.
    std::string str() const;
    double to_double() const noexcept;

private:
    std::int64_t num_;
    std::int64_t den_;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
/// max(a, 0) -- the [x]^+ clamp.
Rational pos_part(const Rational& a);

}  // namespace lfr
