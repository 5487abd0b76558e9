#include "lfr/model.hpp"

#include <numeric>
#include <random>

#include "lfr/errors.hpp"

namespace lfr {

SystemConfig::SystemConfig(int users_, std::int64_t symbols_, std::int64_t demand_rows_,
                           Elem field_order_, std::int64_t cache_size_)
    : users(users_),
      symbols(symbols_),
      demand_rows(demand_rows_),
      field_order(field_order_),
      cache_size(cache_size_) {
    if (users < 1) throw config_error("need at least one user");
    if (symbols < 1) throw config_error("library must be nonempty");
    if (demand_rows < 1 || demand_rows > symbols)
        throw config_error("demand rows must lie in [1, F]");
    if (cache_size < 0 || cache_size > symbols)
        throw config_error("cache size must lie in [0, F]");
    PrimeField probe(field_order);  // validates primality and the modulus cap
    (void)probe;
}

namespace {

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
    std::int64_t g = std::gcd(a, b);
    __int128 wide = static_cast<__int128>(a / g) * b;
    if (wide > INT64_MAX) throw std::overflow_error("lcm overflow");
    return static_cast<std::int64_t>(wide);
}

}  // namespace

std::int64_t validate_divisibility(int users, const Rational& mu, const Rational& lambda,
                                   const Regime& regime) {
    if (regime.branch == Branch::top) {
        if (choose_regime(users, mu).branch != Branch::top)
            throw config_error("mu is outside the top branch");
    } else {
        Regime expect = choose_regime(users, mu);
        if (expect.branch != Branch::interpolate || expect.g != regime.g)
            throw config_error("mu is outside the regime's memory interval");
    }
    const Rational& alpha = regime.alpha;
    std::int64_t f = lcm_checked(mu.den(), lambda.den());
    if (regime.branch == Branch::top) {
        f = lcm_checked(f, (alpha / users).den());
        f = lcm_checked(f, (Rational(1) - alpha).den());
    } else {
        f = lcm_checked(f, (alpha / regime.g).den());
        f = lcm_checked(f, ((Rational(1) - alpha) / (regime.g + 1)).den());
    }
    return f;
}

namespace {

/// Uniform draw from [0, bound) by rejection, identical on every platform.
Elem draw_below(std::mt19937_64& rng, Elem bound) {
    const std::uint64_t span = UINT64_MAX - (UINT64_MAX % bound);
    for (;;) {
        std::uint64_t r = rng();
        if (r < span) return r % bound;
    }
}

FieldMatrix random_matrix(const PrimeField& field, std::size_t rows, std::size_t cols,
                          std::mt19937_64& rng) {
    FieldMatrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.set(i, j, draw_below(rng, field.modulus()));
    return m;
}

}  // namespace

std::pair<Library, DemandSet> random_instance(const SystemConfig& config, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PrimeField field = config.field();
    const auto f = static_cast<std::size_t>(config.symbols);
    const auto l = static_cast<std::size_t>(config.demand_rows);
    Library lib{random_matrix(field, f, 1, rng)};
    DemandSet demands;
    demands.matrices.reserve(static_cast<std::size_t>(config.users));
    for (int k = 0; k < config.users; ++k)
        demands.matrices.push_back(random_matrix(field, l, f, rng));
    return {std::move(lib), std::move(demands)};
}

DemandSet structured_scalar_demands(const SystemConfig& config, std::int64_t file_count,
                                    const std::vector<std::vector<Elem>>& coefficients) {
    if (file_count < 1 || config.symbols % file_count != 0)
        throw shape_error("file count must divide F");
    if (config.symbols / file_count != config.demand_rows)
        throw shape_error("scalar demands need F = N*L");
    if (std::ssize(coefficients) != config.users)
        throw shape_error("one coefficient row per user required");
    PrimeField field = config.field();
    const auto l = static_cast<std::size_t>(config.demand_rows);
    const auto n = static_cast<std::size_t>(file_count);
    DemandSet demands;
    demands.matrices.reserve(coefficients.size());
    for (const auto& row : coefficients) {
        if (row.size() != n) throw shape_error("coefficient row length must equal N");
        FieldMatrix d(field, l, n * l);
        for (std::size_t file = 0; file < n; ++file) {
            Elem c = field.reduce(row[file]);
            if (c == 0) continue;
            for (std::size_t i = 0; i < l; ++i) d.set(i, file * l + i, c);
        }
        demands.matrices.push_back(std::move(d));
    }
    return demands;
}

}  // namespace lfr
