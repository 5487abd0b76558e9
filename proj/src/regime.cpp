#include "lfr/regime.hpp"

#include <string>

#include "lfr/errors.hpp"

namespace lfr {

Regime choose_regime(int users, const Rational& mu) {
    if (users < 1) throw domain_error("need at least one user");
    if (mu < Rational(0) || mu > Rational(1)) {
        throw domain_error("mu = " + mu.str() + " outside [0,1]");
    }
    const Rational top_threshold(users - 1, users);
    if (mu >= top_threshold) {
        // alpha = K*(1-mu)
        return Regime{Branch::top, users, Rational(users) * (Rational(1) - mu)};
    }
    for (int g = 1; g <= users - 1; ++g) {
        const Rational lo(g - 1, g);
        const Rational hi(g, g + 1);
        if (mu >= lo && mu < hi) {
            // alpha = g^2 - mu*g*(g+1)
            const Rational alpha =
                Rational(std::int64_t(g) * g) - mu * Rational(std::int64_t(g) * (g + 1));
            return Regime{Branch::interpolate, g, alpha};
        }
    }
    throw domain_error("no regime covers mu = " + mu.str());  // unreachable
}

Rational regime_mu(int users, const Regime& regime) {
    const Rational alpha = regime.alpha;
    if (regime.branch == Branch::top) {
        return alpha * Rational(users - 1, users) + (Rational(1) - alpha);
    }
    const int g = regime.g;
    return alpha * Rational(g - 1, g) + (Rational(1) - alpha) * Rational(g, g + 1);
}

}  // namespace lfr
