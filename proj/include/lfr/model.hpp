#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lfr/matrix.hpp"
#include "lfr/rational.hpp"
#include "lfr/regime.hpp"

namespace lfr {

/// The (K, F, L, q) retrieval problem plus the per-user cache budget M.
/// Normalized fractions mu = M/F and lambda = L/F are derived exactly.
struct SystemConfig {
    int users;                 // K
    std::int64_t symbols;      // F, library length
    std::int64_t demand_rows;  // L, linear combinations per user
    Elem field_order;          // q, prime
    std::int64_t cache_size;   // M, symbols per cache

    SystemConfig(int users, std::int64_t symbols, std::int64_t demand_rows,
                 Elem field_order, std::int64_t cache_size);

    Rational mu() const { return Rational(cache_size, symbols); }
    Rational lambda() const { return Rational(demand_rows, symbols); }
    PrimeField field() const { return PrimeField(field_order); }
};

/// The library vector w: F symbols as an F x 1 column.
struct Library {
    FieldMatrix w;
};

/// One L x F demand matrix per user; user k wants D_k * w.
struct DemandSet {
    std::vector<FieldMatrix> matrices;
};

/// Uncoded per-user cache: placement rows are distinct standard basis
/// vectors, values are the selected library symbols.
struct CacheContents {
    struct UserCache {
        FieldMatrix placement;  // rows <= M, F columns
        FieldMatrix values;     // placement * w
    };
    std::vector<UserCache> users;
};

struct Segment {
    std::string label;
    std::int64_t start;
    std::int64_t length;

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Broadcast output: one coefficient row over w per transmitted symbol,
/// the transmitted values, and labeled ranges tying rows to delivery steps.
struct Transcript {
    FieldMatrix coeff;   // R x F
    FieldMatrix values;  // R x 1, equals coeff * w
    std::vector<Segment> segments;

    std::int64_t length() const { return static_cast<std::int64_t>(coeff.rows()); }
};

/// Least F making every placement quantity integral for the regime: mu*F,
/// lambda*F, and the subfile sizes alpha*F/g and (1-alpha)*F/(g+1) (top
/// branch: alpha*F/K and (1-alpha)*F). Every valid F is a multiple of it.
std::int64_t validate_divisibility(int users, const Rational& mu, const Rational& lambda,
                                   const Regime& regime);

/// Uniform library and demands from a 64-bit seed, reproducible across
/// platforms (mt19937_64 with rejection sampling; w first, then D_1..D_K
/// in row-major order).
std::pair<Library, DemandSet> random_instance(const SystemConfig& config,
                                              std::uint64_t seed);

/// Demands that select per-file combinations: D_k = [y_k1*I_L ... y_kN*I_L]
/// for a library of N files of L symbols each. Requires F = N*L.
DemandSet structured_scalar_demands(const SystemConfig& config, std::int64_t file_count,
                                    const std::vector<std::vector<Elem>>& coefficients);

}  // namespace lfr
