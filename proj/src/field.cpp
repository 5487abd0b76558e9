#include "lfr/field.hpp"

#include <string>

namespace lfr {

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

PrimeField::PrimeField(Elem modulus) : p_(modulus) {
    if (modulus > max_modulus) {
        throw field_error("field order " + std::to_string(modulus) +
                          " exceeds the supported cap " + std::to_string(max_modulus));
    }
    if (!is_prime(modulus)) {
        throw field_error("field order " + std::to_string(modulus) + " is not prime");
    }
}

Elem PrimeField::reduce_signed(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r);
}

Elem PrimeField::pow(Elem base, std::uint64_t exp) const noexcept {
    Elem result = 1 % p_;
    Elem b = base % p_;
    while (exp > 0) {
        if (exp & 1) result = mul(result, b);
        b = mul(b, b);
        exp >>= 1;
    }
    return result;
}

Elem PrimeField::inv(Elem a) const {
    if (a % p_ == 0) throw singular_matrix_error("inverse of zero in GF(p)");
    // Extended Euclid on (a, p); coefficients stay below p in magnitude.
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p_);
    std::int64_t new_r = static_cast<std::int64_t>(a % p_);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return reduce_signed(t);
}

}  // namespace lfr
