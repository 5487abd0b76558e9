#include "lfr/verify.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "lfr/errors.hpp"

namespace lfr {

std::vector<bool> decodability_report(const CacheContents& caches,
                                      const Transcript& transcript,
                                      const DemandSet& demands) {
    if (caches.users.size() != demands.matrices.size())
        throw shape_error("caches and demands must cover the same users");
    std::vector<bool> report;
    report.reserve(demands.matrices.size());
    for (std::size_t k = 0; k < demands.matrices.size(); ++k) {
        FieldMatrix side = vstack(caches.users[k].placement, transcript.coeff);
        report.push_back(rowspace_contains(side, demands.matrices[k]));
    }
    return report;
}

namespace {

bool advance_odometer(std::vector<Elem>& cells, Elem q) {
    for (std::size_t i = cells.size(); i-- > 0;) {
        if (++cells[i] < q) return true;
        cells[i] = 0;
    }
    return false;
}

}  // namespace

std::int64_t minrank_fixed_placement(const std::vector<FieldMatrix>& placements,
                                     const std::vector<FieldMatrix>& demands,
                                     std::uint64_t limit) {
    if (placements.size() != demands.size() || demands.empty())
        throw shape_error("need one placement per demand matrix");
    const PrimeField field = demands[0].field();
    const std::size_t cols = demands[0].cols();
    std::size_t total_cells = 0;
    std::size_t total_rows = 0;
    for (std::size_t k = 0; k < demands.size(); ++k) {
        if (demands[k].field() != field || placements[k].field() != field)
            throw field_error("mixed fields in minrank input");
        if (demands[k].cols() != cols || placements[k].cols() != cols)
            throw shape_error("mixed column counts in minrank input");
        total_cells += demands[k].rows() * placements[k].rows();
        total_rows += demands[k].rows();
    }
    const Elem q = field.modulus();
    std::uint64_t search = 1;
    for (std::size_t i = 0; i < total_cells; ++i) {
        if (search > limit / q)
            throw capacity_error("minrank search space exceeds the limit");
        search *= q;
    }
    if (search > limit) throw capacity_error("minrank search space exceeds the limit");

    std::vector<Elem> cells(total_cells, 0);
    std::int64_t best = static_cast<std::int64_t>(total_rows);
    do {
        FieldMatrix stacked(field, total_rows, cols);
        std::size_t row0 = 0;
        std::size_t cell0 = 0;
        for (std::size_t k = 0; k < demands.size(); ++k) {
            stacked.add_block(row0, 0, demands[k]);
            const FieldMatrix& p = placements[k];
            const std::size_t l = demands[k].rows();
            for (std::size_t r = 0; r < l; ++r)
                for (std::size_t i = 0; i < p.rows(); ++i) {
                    Elem t = cells[cell0 + r * p.rows() + i];
                    if (t == 0) continue;
                    for (std::size_t c = 0; c < cols; ++c)
                        if (p(i, c) != 0)
                            stacked.set(row0 + r, c,
                                        field.mul_add(stacked(row0 + r, c), t, p(i, c)));
                }
            row0 += l;
            cell0 += l * p.rows();
        }
        best = std::min(best, static_cast<std::int64_t>(rank(stacked)));
        if (best == 0) return 0;
    } while (advance_odometer(cells, q));
    return best;
}

Lemma1Report lemma1_exhaustive(int users_max) {
    Lemma1Report rep;
    for (int users = 2; users <= users_max; ++users)
        for (int g = 1; g <= users - 1; ++g)
            for (int k = 1; k <= users; ++k)
                for (int other : peers(k, g, users)) {
                    ++rep.checked;
                    if (mod1(other, g) == mod1(k, g) ||
                        mod1(other, g + 1) == mod1(k, g + 1))
                        ++rep.violations;
                }
    return rep;
}

SuiteReport end_to_end_suite(const std::vector<SuiteCase>& cases, int trials,
                             std::uint64_t seed, bool check_oracle) {
    SuiteReport report;
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        const SuiteCase& sc = cases[ci];
        CaseResult res{sc.config, sc.variant};
        res.trials = trials;
        SchemePlan plan = make_plan(sc.config, sc.variant);
        res.expected_length = expected_length(plan, sc.config);
        for (int t = 0; t < trials; ++t) {
            std::uint64_t trial_seed =
                seed ^ (0x9E3779B97F4A7C15ull * (ci * 1000003ull + static_cast<std::uint64_t>(t) + 1));
            auto [library, demands] = random_instance(sc.config, trial_seed);
            CacheContents caches = place(plan, sc.config, library);
            Transcript transcript = deliver(plan, sc.config, demands, library);
            res.actual_length = transcript.length();
            bool ok = res.actual_length == res.expected_length;
            DecodeContext context = make_decode_context(plan, sc.config, demands);
            for (int k = 1; ok && k <= sc.config.users; ++k) {
                FieldMatrix expect = mat_mul(demands.matrices[k - 1], library.w);
                ok = decode(k, context, sc.config, caches, transcript, demands) == expect;
            }
            if (check_oracle && t == 0) {
                res.oracle_checked = true;
                for (bool b : decodability_report(caches, transcript, demands))
                    ok = ok && b;
            }
            if (!ok) {
                ++res.decode_failures;
                if (report.failure_dumps.size() < 16)
                    report.failure_dumps.push_back(dump_to_json(
                        {sc.config, trial_seed, sc.variant, library, demands, transcript}));
            }
        }
        res.pass = res.decode_failures == 0;
        report.pass = report.pass && res.pass;
        report.cases.push_back(std::move(res));
    }
    return report;
}

nlohmann::json suite_report_to_json(const SuiteReport& report) {
    nlohmann::json cases = nlohmann::json::array();
    for (const CaseResult& r : report.cases)
        cases.push_back({{"config", config_to_json(r.config)},
                         {"variant", std::string(variant_name(r.variant))},
                         {"trials", r.trials},
                         {"decode_failures", r.decode_failures},
                         {"expected_length", r.expected_length},
                         {"actual_length", r.actual_length},
                         {"oracle_checked", r.oracle_checked},
                         {"pass", r.pass}});
    return {{"pass", report.pass},
            {"cases", std::move(cases)},
            {"failures", report.failure_dumps}};
}

namespace {

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

}  // namespace

std::vector<SuiteCase> grid_cases(int users, Elem field_order, std::int64_t max_symbols,
                                  std::int64_t max_rows, int min_points) {
    const std::vector<Rational> alphas = {Rational(0),      Rational(1),
                                          Rational(1, 2),   Rational(1, 3),
                                          Rational(2, 3),   Rational(1, 4),
                                          Rational(3, 4)};
    std::vector<Rational> mus;
    for (int g = 1; g <= users - 1; ++g)
        for (const Rational& a : alphas)
            mus.push_back((Rational(g) * g - a) / Rational(g * (g + 1)));
    for (const Rational& a : alphas) mus.push_back(Rational(1) - a / users);
    std::sort(mus.begin(), mus.end());
    mus.erase(std::unique(mus.begin(), mus.end()), mus.end());

    const std::vector<Rational> lambdas = {Rational(1, users), Rational(1, 2 * users),
                                           Rational(1, 3 * users)};
    std::vector<SuiteCase> out;
    int points = 0;
    for (const Rational& mu : mus) {
        for (const Rational& lambda : lambdas) {
            Regime regime = choose_regime(users, mu);
            std::int64_t f = validate_divisibility(users, mu, lambda, regime);
            if (f > max_symbols) continue;
            std::int64_t l = (lambda * f).num();
            std::int64_t m = (mu * f).num();
            if (l > max_rows) continue;
            SystemConfig config(users, f, l, field_order, m);
            bool any = false;
            for (SchemeVariant v : all_variants) {
                if (v == SchemeVariant::corner_grouped) {
                    std::int64_t f2 = lcm64(f, regime.g);
                    std::int64_t l2 = (lambda * f2).num();
                    if (f2 > max_symbols || l2 > max_rows) continue;
                    SystemConfig corner_config(users, f2, l2, field_order,
                                               (mu * f2).num());
                    try {
                        make_plan(corner_config, v);
                        out.push_back({corner_config, v});
                        any = true;
                    } catch (const config_error&) {
                    }
                    continue;
                }
                try {
                    make_plan(config, v);
                    out.push_back({config, v});
                    any = true;
                } catch (const config_error&) {
                }
            }
            if (any) ++points;
        }
    }
    if (points < min_points)
        throw capacity_error("feasible grid smaller than requested");
    return out;
}

ReplayResult verify_replay(const InstanceDump& dump) {
    try {
        SchemePlan plan = make_plan(dump.config, dump.variant);
        Transcript fresh = deliver(plan, dump.config, dump.demands, dump.library);
        if (!(fresh.coeff == dump.transcript.coeff) ||
            !(fresh.values == dump.transcript.values) ||
            fresh.segments != dump.transcript.segments)
            return {false, "stored transcript differs from re-derived delivery"};
        CacheContents caches = place(plan, dump.config, dump.library);
        DecodeContext context = make_decode_context(plan, dump.config, dump.demands);
        for (int k = 1; k <= dump.config.users; ++k) {
            FieldMatrix expect = mat_mul(dump.demands.matrices[k - 1], dump.library.w);
            if (!(decode(k, context, dump.config, caches, dump.transcript,
                         dump.demands) == expect))
                return {false, "user " + std::to_string(k) + " decodes incorrectly"};
        }
        return {true, "replay ok"};
    } catch (const std::exception& e) {
        return {false, e.what()};
    }
}

}  // namespace lfr
