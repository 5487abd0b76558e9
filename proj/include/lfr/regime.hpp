#pragma once

#include "lfr/rational.hpp"

namespace lfr {

/// Memory regimes of the achievable-load curve. For mu below (K-1)/K the
/// cache size interpolates between the grouped corner points 1-1/g and
/// 1-1/(g+1); at and above (K-1)/K only a fraction of the library needs
/// per-user partitioning and the rest is cached by everyone.
enum class Branch { interpolate, top };

struct Regime {
    Branch branch;
    int g;           // group parameter; equals K on the top branch
    Rational alpha;  // split fraction within the regime, in [0,1]

    friend bool operator==(const Regime&, const Regime&) = default;
};

/// Resolve mu to its regime. Interpolate branch: the g in [K-1] with
/// (g-1)/g <= mu < g/(g+1) and alpha = g^2 - mu*g*(g+1). Shared interval
/// endpoints go to the larger g (alpha = 1), so mu = (K-1)/K already falls
/// on the top branch, where alpha = K*(1-mu). Throws domain_error for mu
/// outside [0,1].
Regime choose_regime(int users, const Rational& mu);

/// Exact memory fraction a regime represents; inverse of choose_regime.
Rational regime_mu(int users, const Regime& regime);

}  // namespace lfr
