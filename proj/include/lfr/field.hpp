#pragma once

#include <cstdint>

#include "lfr/errors.hpp"

namespace lfr {

/// A single element of GF(p), stored reduced to [0, p-1].
using Elem = std::uint64_t;

bool is_prime(std::uint64_t n) noexcept;

/// Arithmetic mod a prime p. Values are plain integers in [0, p-1]; the field
/// object carries the modulus and performs every reduction exactly.
class PrimeField {
public:
    /// Largest accepted modulus. With p <= 2^31 - 1 the product of two reduced
    /// elements is < 2^62, so a product plus a reduced accumulator fits in a
    /// native 64-bit integer and no arbitrary-precision arithmetic is needed.
    static constexpr Elem max_modulus = (std::uint64_t{1} << 31) - 1;

    explicit PrimeField(Elem modulus);

    Elem modulus() const noexcept { return p_; }

    Elem reduce(std::uint64_t v) const noexcept { return v % p_; }
    /// Reduce a possibly negative value into [0, p-1].
    Elem reduce_signed(std::int64_t v) const noexcept;

    Elem add(Elem a, Elem b) const noexcept { return (a + b) % p_; }
    Elem sub(Elem a, Elem b) const noexcept { return (a + p_ - b) % p_; }
    Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const noexcept { return a * b % p_; }
    /// Fused a + b*c with both operands reduced; single division.
    Elem mul_add(Elem a, Elem b, Elem c) const noexcept { return (a + b * c) % p_; }

    Elem pow(Elem base, std::uint64_t exp) const noexcept;
    /// Multiplicative inverse; throws singular_matrix_error for 0.
    Elem inv(Elem a) const;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    Elem p_;
};

}  // namespace lfr
