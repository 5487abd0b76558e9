#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lfr/rational.hpp"
#include "lfr/regime.hpp"
#include "lfr/variant.hpp"

namespace lfr {

/// One point of the memory-load tradeoff: the best achievable normalized
/// load among the constructive variants, with the baseline alongside.
struct LoadPoint {
    Rational mu;
    Rational lambda;
    Rational rho_proposed;
    Rational rho_baseline;
    std::optional<Rational> rho_scalar;
    Regime regime;
    SchemeVariant chosen_variant;
};

/// C(n, k), zero when n < 0, k < 0, or n < k.
std::int64_t binomial(std::int64_t n, std::int64_t k);

/// min{K*lambda, 1 - mu}: the better of unicasting every demand and
/// broadcasting the uncached remainder of the library.
Rational baseline_load(int users, const Rational& mu, const Rational& lambda);

/// Load of a single proposed variant at (mu, lambda), as an exact rational.
/// corner_grouped / rho1 / rho2 require the interpolate regime (rho1 and
/// rho2 additionally alpha/g <= ceil(K/g)*lambda), rho3 the top regime.
Rational variant_load(int users, const Rational& mu, const Rational& lambda,
                      SchemeVariant variant);

/// Best achievable point: on the interpolate branch, ceil(K/g)*lambda when
/// alpha/g >= ceil(K/g)*lambda (corner) and min{rho1, rho2} otherwise (ties
/// go to rho1); on the top branch min{alpha/K, lambda} (rho3).
LoadPoint theorem_load(int users, const Rational& mu, const Rational& lambda);

/// Scalar retrieval load at memory point t/K for a library of N = 1/lambda
/// files: lambda * (C(K,t+1) - C(K-min{K,N}, t+1)) / C(K,t).
Rational scalar_lfr_load(int users, const Rational& lambda, std::int64_t t);

/// Piecewise-linear interpolation of the scalar points t/K, t in [0:K], at
/// an arbitrary mu; empty when 1/lambda is not a positive integer.
std::optional<Rational> scalar_envelope(int users, const Rational& lambda,
                                        const Rational& mu);

/// lambda * ceil(K/g) * C(g, t+1), the grouped scalar scheme at mu = t/g.
Rational grouped_scalar_load(int users, const Rational& lambda, int g, std::int64_t t);

/// True when the grouped scalar point at mu = t/g does not beat the
/// baseline; holds for every t in [g-2].
bool grouped_scalar_inferior(int users, const Rational& lambda, int g, std::int64_t t);

std::vector<LoadPoint> sweep_curve(int users, const Rational& lambda,
                                   const std::vector<Rational>& grid);

/// Uniform grid {0, 1/(n-1), ..., 1}; n >= 2.
std::vector<Rational> uniform_grid(int points);

/// CSV rows for a sweep. Exact rationals first (header
/// mu,rho_proposed,rho_baseline,rho_scalar,variant,g,alpha), then the same
/// numeric columns as 15-significant-digit decimals.
std::string curve_csv(const std::vector<LoadPoint>& points);

/// Self-contained SVG line chart of the sweep (mu on x, rho on y).
std::string curve_svg(const std::vector<LoadPoint>& points, const std::string& title);

}  // namespace lfr
