#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <set>
#include <vector>

#include "lfr/errors.hpp"
#include "lfr/model.hpp"
#include "lfr/regime.hpp"

using lfr::Rational;
using lfr::Regime;
using lfr::SystemConfig;

TEST_CASE("rational normalization and arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(3, 4) + Rational(1, 4) == Rational(1));
    CHECK(Rational(1, 2) - Rational(2, 3) == Rational(-1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(1, 2) / Rational(3, 4) == Rational(2, 3));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK(lfr::min(Rational(5, 24), Rational(25, 72)) == Rational(5, 24));
    CHECK(lfr::pos_part(Rational(-3, 7)) == Rational(0));
    CHECK(lfr::pos_part(Rational(3, 7)) == Rational(3, 7));
    CHECK(Rational(47, 72).str() == "47/72");
    CHECK(Rational(-6, 3).str() == "-2");
    CHECK(Rational(1, 2).is_integer() == false);
    CHECK_THROWS_AS(Rational(1, 0), lfr::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), lfr::domain_error);
}

TEST_CASE("rational parsing") {
    CHECK(Rational::parse("47/72") == Rational(47, 72));
    CHECK(Rational::parse("3") == Rational(3));
    CHECK(Rational::parse("-5/10") == Rational(-1, 2));
    CHECK_THROWS_AS(Rational::parse("0.5"), lfr::domain_error);
    CHECK_THROWS_AS(Rational::parse("a/b"), lfr::domain_error);
    CHECK_THROWS_AS(Rational::parse(""), lfr::domain_error);
    CHECK_THROWS_AS(Rational::parse("1/"), lfr::domain_error);
    CHECK_THROWS_AS(Rational::parse("1/0"), lfr::domain_error);
}

TEST_CASE("config validation and derived fractions") {
    SystemConfig config(6, 72, 6, 7, 47);
    CHECK(config.mu() == Rational(47, 72));
    CHECK(config.lambda() == Rational(1, 12));
    CHECK(config.field().modulus() == 7);
    CHECK_THROWS_AS(SystemConfig(0, 72, 6, 7, 47), lfr::config_error);
    CHECK_THROWS_AS(SystemConfig(6, 0, 1, 7, 0), lfr::config_error);
    CHECK_THROWS_AS(SystemConfig(6, 72, 0, 7, 47), lfr::config_error);
    CHECK_THROWS_AS(SystemConfig(6, 72, 73, 7, 47), lfr::config_error);
    CHECK_THROWS_AS(SystemConfig(6, 72, 6, 7, -1), lfr::config_error);
    CHECK_THROWS_AS(SystemConfig(6, 72, 6, 7, 73), lfr::config_error);
    CHECK_THROWS_AS(SystemConfig(6, 72, 6, 4, 47), lfr::field_error);
}

namespace {

bool all_integral(int users, const Rational& mu, const Rational& lambda, const Regime& regime,
                  std::int64_t f) {
    auto integral = [&](const Rational& r) { return (r * f).is_integer(); };
    if (!integral(mu) || !integral(lambda)) return false;
    if (regime.branch == lfr::Branch::interpolate)
        return integral(regime.alpha / regime.g) &&
               integral((Rational(1) - regime.alpha) / (regime.g + 1));
    return integral(regime.alpha / users) && integral(Rational(1) - regime.alpha);
}

}  // namespace

TEST_CASE("validate_divisibility pinned values") {
    Regime example = lfr::choose_regime(6, Rational(47, 72));
    CHECK(example.g == 2);
    CHECK(example.alpha == Rational(1, 12));
    CHECK(lfr::validate_divisibility(6, Rational(47, 72), Rational(1, 12), example) == 72);

    Regime full = lfr::choose_regime(2, Rational(1));
    CHECK(lfr::validate_divisibility(2, Rational(1), Rational(1), full) == 1);

    Regime half = lfr::choose_regime(2, Rational(1, 2));
    CHECK(half.branch == lfr::Branch::top);
    std::int64_t f = lfr::validate_divisibility(2, Rational(1, 2), Rational(1, 2), half);
    CHECK(all_integral(2, Rational(1, 2), Rational(1, 2), half, f));
}

TEST_CASE("validate_divisibility is the least valid F and divides every valid F") {
    struct Case {
        int users;
        Rational mu;
        Rational lambda;
    };
    const Case cases[] = {
        {6, Rational(47, 72), Rational(1, 12)}, {5, Rational(3, 7), Rational(1, 5)},
        {4, Rational(2, 3), Rational(1, 3)},    {3, Rational(9, 10), Rational(1, 4)},
        {2, Rational(0), Rational(1, 2)},       {7, Rational(5, 6), Rational(2, 7)},
    };
    for (const Case& c : cases) {
        Regime regime = lfr::choose_regime(c.users, c.mu);
        std::int64_t f = lfr::validate_divisibility(c.users, c.mu, c.lambda, regime);
        CHECK(all_integral(c.users, c.mu, c.lambda, regime, f));
        for (std::int64_t probe = 1; probe < f; ++probe)
            CHECK_FALSE(all_integral(c.users, c.mu, c.lambda, regime, probe));
        CHECK(all_integral(c.users, c.mu, c.lambda, regime, 2 * f));
        CHECK(all_integral(c.users, c.mu, c.lambda, regime, 7 * f));
    }
}

TEST_CASE("validate_divisibility rejects a regime that does not match mu") {
    Regime top{lfr::Branch::top, 6, Rational(1, 2)};
    CHECK_THROWS_AS(lfr::validate_divisibility(6, Rational(47, 72), Rational(1, 12), top),
                    lfr::config_error);
    Regime wrong_g{lfr::Branch::interpolate, 3, Rational(1, 12)};
    CHECK_THROWS_AS(lfr::validate_divisibility(6, Rational(47, 72), Rational(1, 12), wrong_g),
                    lfr::config_error);
}

TEST_CASE("random instances are deterministic per seed") {
    SystemConfig config(4, 20, 3, 7, 10);
    auto [w1, d1] = lfr::random_instance(config, 99);
    auto [w2, d2] = lfr::random_instance(config, 99);
    CHECK(w1.w == w2.w);
    REQUIRE(d1.matrices.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(d1.matrices[k] == d2.matrices[k]);

    int differing = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto [a, da] = lfr::random_instance(config, 2 * seed);
        auto [b, db] = lfr::random_instance(config, 2 * seed + 1);
        if (!(a.w == b.w) || !(da.matrices == db.matrices)) ++differing;
    }
    CHECK(differing == 100);
}

TEST_CASE("random instances have the right shapes and live in the field") {
    SystemConfig config(3, 4, 2, 2, 2);
    auto [library, demands] = lfr::random_instance(config, 5);
    CHECK(library.w.rows() == 4);
    CHECK(library.w.cols() == 1);
    REQUIRE(demands.matrices.size() == 3);
    std::set<lfr::Elem> seen;
    for (const auto& d : demands.matrices) {
        CHECK(d.rows() == 2);
        CHECK(d.cols() == 4);
        for (lfr::Elem e : d.entries()) {
            CHECK(e < 2);
            seen.insert(e);
        }
    }
    CHECK(seen.size() == 2);  // both symbols appear across 24 uniform draws
}

TEST_CASE("structured scalar demands assemble block matrices") {
    SystemConfig config(2, 6, 2, 3, 0);
    lfr::DemandSet basis = lfr::structured_scalar_demands(config, 3, {{1, 0, 0}, {0, 0, 0}});
    CHECK(basis.matrices[0] ==
          lfr::FieldMatrix(lfr::PrimeField(3), 2, 6, {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0}));
    CHECK(basis.matrices[1] == lfr::FieldMatrix(lfr::PrimeField(3), 2, 6));

    SystemConfig tiny(1, 2, 1, 2, 0);
    lfr::DemandSet sum = lfr::structured_scalar_demands(tiny, 2, {{1, 1}});
    CHECK(sum.matrices[0] == lfr::FieldMatrix(lfr::PrimeField(2), 1, 2, {1, 1}));

    CHECK_THROWS_AS(lfr::structured_scalar_demands(config, 4, {{1, 0, 0, 0}, {0, 0, 0, 0}}),
                    lfr::shape_error);
    CHECK_THROWS_AS(lfr::structured_scalar_demands(config, 3, {{1, 0, 0}}), lfr::shape_error);
    CHECK_THROWS_AS(lfr::structured_scalar_demands(config, 3, {{1, 0}, {0, 0}}),
                    lfr::shape_error);
}
