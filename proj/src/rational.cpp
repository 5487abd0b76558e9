#include "lfr/rational.hpp"

#include <charconv>
#include <cstdio>
#include <limits>
#include <numeric>

#include "lfr/errors.hpp"

namespace lfr {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error(std::string("rational ") + what + " overflows 64 bits");
    }
    return static_cast<std::int64_t>(v);
}

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational from128(i128 num, i128 den, const char* what) {
    if (den == 0) throw domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational(narrow(num, what), narrow(den, what));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw domain_error("rational with zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::parse(std::string_view text) {
    const auto parse_int = [](std::string_view s) -> std::int64_t {
        std::int64_t v = 0;
        const char* first = s.data();
        const char* last = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) {
            throw domain_error("expected an integer or p/q rational, got '" +
                               std::string(s) + "'");
        }
        return v;
    };
    const std::size_t slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    return from128(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_, "sum");
}

Rational Rational::operator-(const Rational& o) const {
    return from128(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_,
                   "difference");
}

Rational Rational::operator*(const Rational& o) const {
    return from128(i128(num_) * o.num_, i128(den_) * o.den_, "product");
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw domain_error("division of rational by zero");
    return from128(i128(num_) * o.den_, i128(den_) * o.num_, "quotient");
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    const i128 lhs = i128(a.num_) * b.den_;
    const i128 rhs = i128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }

Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

Rational pos_part(const Rational& a) { return a.num() < 0 ? Rational(0) : a; }

}  // namespace lfr
