#include "lfr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "lfr/errors.hpp"

namespace lfr {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

std::string decimal(const Rational& r) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", r.to_double());
    return buf;
}

void check_unit_interval(const Rational& x, const char* what) {
    if (x < Rational(0) || x > Rational(1))
        throw domain_error(std::string(what) + " must lie in [0,1]");
}

}  // namespace

std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || n < k) return 0;
    k = std::min(k, n - k);
    __int128 r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > INT64_MAX) throw std::overflow_error("binomial overflow");
    }
    return static_cast<std::int64_t>(r);
}

Rational baseline_load(int users, const Rational& mu, const Rational& lambda) {
    check_unit_interval(mu, "mu");
    check_unit_interval(lambda, "lambda");
    return min(Rational(users) * lambda, Rational(1) - mu);
}

Rational variant_load(int users, const Rational& mu, const Rational& lambda,
                      SchemeVariant variant) {
    check_unit_interval(mu, "mu");
    check_unit_interval(lambda, "lambda");
    switch (variant) {
        case SchemeVariant::baseline_unicast:
            return Rational(users) * lambda;
        case SchemeVariant::baseline_full:
            return Rational(1) - mu;
        default:
            break;
    }
    Regime regime = choose_regime(users, mu);
    const Rational& alpha = regime.alpha;
    if (variant == SchemeVariant::corner_grouped) {
        int g = regime.g;
        return min(Rational(ceil_div(users, g)) * lambda, Rational(1, g));
    }
    if (variant == SchemeVariant::rho3) {
        if (regime.branch != Branch::top)
            throw config_error("rho3 needs mu >= (K-1)/K");
        return min(alpha / users, lambda);
    }
    if (regime.branch != Branch::interpolate)
        throw config_error("rho1/rho2 need mu < (K-1)/K");
    int g = regime.g;
    Rational part1 = alpha / g;
    if (part1 > Rational(ceil_div(users, g)) * lambda)
        throw config_error("rho1/rho2 need alpha/g <= ceil(K/g)*lambda");
    Rational tail_cap = (Rational(1) - alpha) / (g + 1);
    int ceil_next = ceil_div(users, g + 1);
    if (variant == SchemeVariant::rho1)
        return part1 + min(Rational(ceil_next) * lambda, tail_cap);
    return Rational(ceil_div(users, g)) * min(part1, lambda) +
           min(Rational(ceil_next) * pos_part(lambda - part1), tail_cap);
}

LoadPoint theorem_load(int users, const Rational& mu, const Rational& lambda) {
    check_unit_interval(mu, "mu");
    check_unit_interval(lambda, "lambda");
    if (lambda.is_zero()) throw domain_error("lambda must be positive");
    LoadPoint point;
    point.mu = mu;
    point.lambda = lambda;
    point.regime = choose_regime(users, mu);
    point.rho_baseline = baseline_load(users, mu, lambda);
    const Regime& regime = point.regime;
    if (regime.branch == Branch::top) {
        point.chosen_variant = SchemeVariant::rho3;
        point.rho_proposed = min(regime.alpha / users, lambda);
        return point;
    }
    int g = regime.g;
    Rational corner = Rational(ceil_div(users, g)) * lambda;
    if (regime.alpha / g >= corner) {
        point.chosen_variant = SchemeVariant::corner_grouped;
        point.rho_proposed = corner;
        return point;
    }
    Rational r1 = variant_load(users, mu, lambda, SchemeVariant::rho1);
    Rational r2 = variant_load(users, mu, lambda, SchemeVariant::rho2);
    if (r1 <= r2) {
        point.chosen_variant = SchemeVariant::rho1;
        point.rho_proposed = r1;
    } else {
        point.chosen_variant = SchemeVariant::rho2;
        point.rho_proposed = r2;
    }
    return point;
}

Rational scalar_lfr_load(int users, const Rational& lambda, std::int64_t t) {
    if (lambda <= Rational(0) || lambda > Rational(1) || lambda.num() != 1)
        throw domain_error("scalar load needs lambda = 1/N for integer N");
    if (t < 0 || t > users) throw domain_error("t must lie in [0, K]");
    std::int64_t files = lambda.den();
    std::int64_t reach = std::min<std::int64_t>(users, files);
    std::int64_t served = binomial(users, t + 1) - binomial(users - reach, t + 1);
    return lambda * Rational(served, binomial(users, t));
}

std::optional<Rational> scalar_envelope(int users, const Rational& lambda,
                                        const Rational& mu) {
    if (lambda <= Rational(0) || lambda > Rational(1) || lambda.num() != 1)
        return std::nullopt;
    check_unit_interval(mu, "mu");
    Rational scaled = mu * users;
    std::int64_t t = scaled.num() / scaled.den();
    if (t >= users) return scalar_lfr_load(users, lambda, users);
    Rational lo = scalar_lfr_load(users, lambda, t);
    Rational hi = scalar_lfr_load(users, lambda, t + 1);
    Rational frac = scaled - Rational(t);
    return lo + frac * (hi - lo);
}

Rational grouped_scalar_load(int users, const Rational& lambda, int g, std::int64_t t) {
    if (g < 1 || g > users) throw domain_error("g must lie in [K]");
    if (t < 1 || t > g) throw domain_error("t must lie in [g]");
    return lambda * Rational(ceil_div(users, g)) * Rational(binomial(g, t + 1));
}

bool grouped_scalar_inferior(int users, const Rational& lambda, int g, std::int64_t t) {
    Rational mu(t, g);
    return grouped_scalar_load(users, lambda, g, t) >= baseline_load(users, mu, lambda);
}

std::vector<LoadPoint> sweep_curve(int users, const Rational& lambda,
                                   const std::vector<Rational>& grid) {
    std::vector<LoadPoint> points;
    points.reserve(grid.size());
    for (const Rational& mu : grid) {
        LoadPoint p = theorem_load(users, mu, lambda);
        p.rho_scalar = scalar_envelope(users, lambda, mu);
        points.push_back(std::move(p));
    }
    return points;
}

std::vector<Rational> uniform_grid(int points) {
    if (points < 2) throw domain_error("grid needs at least 2 points");
    std::vector<Rational> grid;
    grid.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) grid.emplace_back(i, points - 1);
    return grid;
}

std::string curve_csv(const std::vector<LoadPoint>& points) {
    std::string out =
        "mu,rho_proposed,rho_baseline,rho_scalar,variant,g,alpha,"
        "mu_dec,rho_proposed_dec,rho_baseline_dec,rho_scalar_dec\n";
    for (const LoadPoint& p : points) {
        out += p.mu.str();
        out += ',';
        out += p.rho_proposed.str();
        out += ',';
        out += p.rho_baseline.str();
        out += ',';
        if (p.rho_scalar) out += p.rho_scalar->str();
        out += ',';
        out += variant_name(p.chosen_variant);
        out += ',';
        out += std::to_string(p.regime.g);
        out += ',';
        out += p.regime.alpha.str();
        out += ',';
        out += decimal(p.mu);
        out += ',';
        out += decimal(p.rho_proposed);
        out += ',';
        out += decimal(p.rho_baseline);
        out += ',';
        if (p.rho_scalar) out += decimal(*p.rho_scalar);
        out += '\n';
    }
    return out;
}

namespace {

struct SvgMapper {
    double x0, y0, w, h, ymax;
    double x(double mu) const { return x0 + mu * w; }
    double y(double rho) const { return y0 + h - (ymax > 0 ? rho / ymax : 0) * h; }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string polyline(const SvgMapper& m, const std::vector<std::pair<double, double>>& pts,
                     const char* color) {
    if (pts.empty()) return "";
    std::string s = "  <polyline fill=\"none\" stroke=\"";
    s += color;
    s += "\" stroke-width=\"2\" points=\"";
    for (const auto& [mu, rho] : pts) {
        s += fmt(m.x(mu));
        s += ',';
        s += fmt(m.y(rho));
        s += ' ';
    }
    s += "\"/>\n";
    return s;
}

}  // namespace

std::string curve_svg(const std::vector<LoadPoint>& points, const std::string& title) {
    const double width = 760, height = 520;
    SvgMapper m{70, 50, width - 100, height - 120, 0};
    std::vector<std::pair<double, double>> proposed, baseline, scalar;
    for (const LoadPoint& p : points) {
        double mu = p.mu.to_double();
        proposed.emplace_back(mu, p.rho_proposed.to_double());
        baseline.emplace_back(mu, p.rho_baseline.to_double());
        if (p.rho_scalar) scalar.emplace_back(mu, p.rho_scalar->to_double());
        m.ymax = std::max({m.ymax, baseline.back().second, proposed.back().second});
        if (p.rho_scalar) m.ymax = std::max(m.ymax, scalar.back().second);
    }
    if (m.ymax == 0) m.ymax = 1;
    m.ymax *= 1.05;
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) +
         "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " +
         fmt(height) + "\">\n";
    s += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "  <text x=\"" + fmt(width / 2) + "\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" + title + "</text>\n";
    s += "  <line x1=\"" + fmt(m.x(0)) + "\" y1=\"" + fmt(m.y(0)) + "\" x2=\"" +
         fmt(m.x(1)) + "\" y2=\"" + fmt(m.y(0)) + "\" stroke=\"black\"/>\n";
    s += "  <line x1=\"" + fmt(m.x(0)) + "\" y1=\"" + fmt(m.y(0)) + "\" x2=\"" +
         fmt(m.x(0)) + "\" y2=\"" + fmt(m.y(m.ymax)) + "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double mu = i / 4.0;
        s += "  <line x1=\"" + fmt(m.x(mu)) + "\" y1=\"" + fmt(m.y(0)) + "\" x2=\"" +
             fmt(m.x(mu)) + "\" y2=\"" + fmt(m.y(0) + 5) + "\" stroke=\"black\"/>\n";
        s += "  <text x=\"" + fmt(m.x(mu)) + "\" y=\"" + fmt(m.y(0) + 20) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
             fmt(mu) + "</text>\n";
        double rho = m.ymax * i / 4.0;
        s += "  <line x1=\"" + fmt(m.x(0) - 5) + "\" y1=\"" + fmt(m.y(rho)) + "\" x2=\"" +
             fmt(m.x(0)) + "\" y2=\"" + fmt(m.y(rho)) + "\" stroke=\"black\"/>\n";
        s += "  <text x=\"" + fmt(m.x(0) - 10) + "\" y=\"" + fmt(m.y(rho) + 4) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
             fmt(rho) + "</text>\n";
    }
    s += "  <text x=\"" + fmt(m.x(0.5)) + "\" y=\"" + fmt(height - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
         "memory fraction mu</text>\n";
    s += "  <text x=\"18\" y=\"" + fmt(m.y(m.ymax / 2)) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 " + fmt(m.y(m.ymax / 2)) + ")\">"
         "normalized load rho</text>\n";
    s += polyline(m, baseline, "#d62728");
    s += polyline(m, proposed, "#1f77b4");
    s += polyline(m, scalar, "#2ca02c");
    const char* names[] = {"baseline", "proposed", "scalar"};
    const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c"};
    int shown = scalar.empty() ? 2 : 3;
    for (int i = 0; i < shown; ++i) {
        double ly = 60 + 20 * i;
        s += "  <line x1=\"" + fmt(width - 170) + "\" y1=\"" + fmt(ly) + "\" x2=\"" +
             fmt(width - 140) + "\" y2=\"" + fmt(ly) + "\" stroke=\"" + colors[i] +
             "\" stroke-width=\"2\"/>\n";
        s += "  <text x=\"" + fmt(width - 132) + "\" y=\"" + fmt(ly + 4) +
             "\" font-family=\"sans-serif\" font-size=\"12\">" + names[i] + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace lfr
