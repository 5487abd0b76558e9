// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "lfr/analysis.hpp"
#include "lfr/errors.hpp"
#include "lfr/model.hpp"
#include "lfr/rational.hpp"
#include "lfr/schemes.hpp"
#include "lfr/verify.hpp"

using lfr::Rational;
using lfr::SchemeVariant;
using lfr::SystemConfig;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool run_example(const SystemConfig& config, SchemeVariant variant, std::uint64_t seed,
                 std::int64_t want_length) {
    lfr::SchemePlan plan = lfr::make_plan(config, variant);
    auto [library, demands] = lfr::random_instance(config, seed);
    lfr::CacheContents caches = lfr::place(plan, config, library);
    lfr::Transcript transcript = lfr::deliver(plan, config, demands, library);
    if (transcript.length() != want_length) return false;
    lfr::DecodeContext context = lfr::make_decode_context(plan, config, demands);
    for (int k = 1; k <= config.users; ++k)
        if (lfr::decode(k, context, config, caches, transcript, demands) !=
            mat_mul(demands.matrices[k - 1], library.w))
            return false;
    return true;
}

bool criterion1(std::string& detail) {
    Clock::time_point start = Clock::now();
    bool ok = lfr::baseline_load(6, Rational(47, 72), Rational(1, 12)) == Rational(25, 72);
    for (std::int64_t scale : {1, 2}) {
        SystemConfig config(6, 72 * scale, 6 * scale, 7, 47 * scale);
        for (SchemeVariant v : {SchemeVariant::rho1, SchemeVariant::rho2})
            ok = ok && run_example(config, v, 2024 + static_cast<std::uint64_t>(scale),
                                   15 * scale);
    }
    double elapsed = seconds_since(start);
    detail = "worked example at F=72 and F=144, " + std::to_string(elapsed) + "s";
    return ok && elapsed < 1.0;
}

struct SweepOutcome {
    std::vector<lfr::CaseResult> results;
    bool pass = false;
    double elapsed = 0;
    std::string detail;
};

SweepOutcome run_big_sweep() {
    SweepOutcome out;
    Clock::time_point start = Clock::now();
    bool ok = true;
    std::int64_t instances = 0;
    for (lfr::Elem q : {lfr::Elem(2), lfr::Elem(3), lfr::Elem(7)})
        for (int users = 2; users <= 10; ++users) {
            std::vector<lfr::SuiteCase> cases = lfr::grid_cases(users, q, 120, 12, 30);
            lfr::SuiteReport report = lfr::end_to_end_suite(
                cases, 20, 0xACCE5500u + q * 100 + static_cast<unsigned>(users));
            ok = ok && report.pass;
            for (const lfr::CaseResult& r : report.cases) {
                instances += r.trials;
                out.results.push_back(r);
            }
        }
    out.elapsed = seconds_since(start);
    out.pass = ok && out.elapsed < 300.0;
    out.detail = std::to_string(out.results.size()) + " cases, " +
                 std::to_string(instances) + " instances, " +
                 std::to_string(out.elapsed) + "s";
    return out;
}

bool criterion3(const SweepOutcome& sweep, std::string& detail) {
    std::int64_t checked = 0;
    for (const lfr::CaseResult& r : sweep.results) {
        Rational load = lfr::variant_load(r.config.users, r.config.mu(), r.config.lambda(),
                                          r.variant);
        if (Rational(r.actual_length, r.config.symbols) != load) {
            detail = "length mismatch at K=" + std::to_string(r.config.users);
            return false;
        }
        ++checked;
    }
    detail = std::to_string(checked) + " transcript lengths match the closed forms exactly";
    return checked > 0;
}

bool criterion4(std::string& detail) {
    const std::vector<std::pair<int, Rational>> sweeps = {
        {6, Rational(1, 15)}, {6, Rational(1, 10)}, {10, Rational(1, 50)},
        {10, Rational(1, 10)}};
    std::vector<Rational> grid = lfr::uniform_grid(101);
    for (const auto& [users, lambda] : sweeps)
        for (const lfr::LoadPoint& p : lfr::sweep_curve(users, lambda, grid))
            if (!(p.rho_proposed <= p.rho_baseline)) {
                detail = "dominance fails at K=" + std::to_string(users) +
                         ", mu=" + p.mu.str();
                return false;
            }
    detail = "proposed <= baseline on four 101-point sweeps";
    return true;
}

bool criterion5(std::string& detail) {
    int checked = 0;
    for (int users = 2; users <= 10; ++users)
        for (int g = 1; g <= users; ++g) {
            Rational mu = Rational(1) - Rational(1, g);
            Rational lambda(1, users);
            if (lfr::theorem_load(users, mu, lambda).rho_proposed !=
                lfr::baseline_load(users, mu, lambda)) {
                detail = "K=" + std::to_string(users) + ", g=" + std::to_string(g);
                return false;
            }
            ++checked;
        }
    detail = std::to_string(checked) + " corner points meet the baseline exactly";
    return true;
}

bool criterion6(std::string& detail) {
    Clock::time_point start = Clock::now();
    lfr::Lemma1Report report = lfr::lemma1_exhaustive(24);
    double elapsed = seconds_since(start);
    detail = std::to_string(report.checked) + " co-member pairs, " +
             std::to_string(report.violations) + " violations, " +
             std::to_string(elapsed) + "s";
    return report.violations == 0 && report.checked > 0 && elapsed < 10.0;
}

bool criterion7(std::string& detail) {
    int checked = 0;
    for (int users = 2; users <= 12; ++users)
        for (int g = 1; g <= users; ++g)
            for (std::int64_t t = 1; t <= g - 2; ++t)
                for (std::int64_t denom : {1, 2, 5}) {
                    Rational lambda(1, denom * users);
                    if (!lfr::grouped_scalar_inferior(users, lambda, g, t) ||
                        lfr::grouped_scalar_load(users, lambda, g, t) <
                            lfr::baseline_load(users, Rational(t, g), lambda)) {
                        detail = "grouped scalar beats baseline at K=" +
                                 std::to_string(users) + ", g=" + std::to_string(g) +
                                 ", t=" + std::to_string(t);
                        return false;
                    }
                    ++checked;
                }
    detail = std::to_string(checked) + " grouped scalar points stay at or above baseline";
    return checked > 0;
}

bool criterion8(std::string& detail) {
    std::vector<lfr::SuiteCase> cases;
    for (int users = 2; users <= 6; ++users)
        for (const lfr::SuiteCase& c : lfr::grid_cases(users, 3, 96, 8, 6))
            cases.push_back(c);
    int agreements = 0;
    for (int i = 0; i < 200; ++i) {
        const lfr::SuiteCase& c = cases[static_cast<std::size_t>(i) % cases.size()];
        lfr::SchemePlan plan = lfr::make_plan(c.config, c.variant);
        auto [library, demands] =
            lfr::random_instance(c.config, 9000 + static_cast<std::uint64_t>(i));
        lfr::CacheContents caches = lfr::place(plan, c.config, library);
        lfr::Transcript transcript = lfr::deliver(plan, c.config, demands, library);
        bool decoded = true;
        lfr::DecodeContext context = lfr::make_decode_context(plan, c.config, demands);
        for (int k = 1; k <= c.config.users && decoded; ++k)
            decoded = lfr::decode(k, context, c.config, caches, transcript, demands) ==
                      mat_mul(demands.matrices[k - 1], library.w);
        bool oracle = true;
        for (bool user_ok : lfr::decodability_report(caches, transcript, demands))
            oracle = oracle && user_ok;
        if (!decoded || !oracle) {
            detail = "decoder and oracle disagree on trial " + std::to_string(i);
            return false;
        }
        ++agreements;
    }

    int probes = 0;
    std::uint64_t seed = 41;
    while (probes < 50) {
        for (std::int64_t symbols : {2, 3}) {
            for (std::int64_t cache = 1; cache <= 2 && probes < 50; ++cache) {
                if (cache > symbols) continue;
                SystemConfig config(2, symbols, 1, 2, cache);
                for (SchemeVariant v : lfr::all_variants) {
                    lfr::SchemePlan plan;
                    try {
                        plan = lfr::make_plan(config, v);
                    } catch (const lfr::config_error&) {
                        continue;
                    }
                    auto [library, demands] = lfr::random_instance(config, seed++);
                    lfr::CacheContents caches = lfr::place(plan, config, library);
                    lfr::Transcript transcript = lfr::deliver(plan, config, demands, library);
                    std::vector<lfr::FieldMatrix> placements, ds;
                    for (int k = 0; k < 2; ++k) {
                        placements.push_back(caches.users[k].placement);
                        ds.push_back(demands.matrices[k]);
                    }
                    std::int64_t bound =
                        lfr::minrank_fixed_placement(placements, ds, 1u << 20);
                    if (bound > transcript.length()) {
                        detail = "minrank exceeds a transcript length at F=" +
                                 std::to_string(symbols) + ", M=" + std::to_string(cache);
                        return false;
                    }
                    ++probes;
                    if (probes >= 50) break;
                }
            }
        }
    }
    detail = std::to_string(agreements) + " oracle agreements, " + std::to_string(probes) +
             " minrank probes";
    return agreements == 200;
}

int report(int index, const char* name, bool pass, const std::string& detail) {
    std::printf("criterion %d (%s): %s — %s\n", index, name, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    return pass ? 0 : 1;
}

template <typename F>
int guarded(int index, const char* name, F&& run) {
    std::string detail;
    bool pass = false;
    try {
        pass = run(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    return report(index, name, pass, detail);
}

}  // namespace

int main() {
    int failures = 0;
    failures += guarded(1, "worked example", [](std::string& d) { return criterion1(d); });

    SweepOutcome sweep;
    try {
        sweep = run_big_sweep();
    } catch (const std::exception& e) {
        sweep.detail = std::string("exception: ") + e.what();
    }
    failures += report(2, "all variants decode across fields and user counts", sweep.pass,
                       sweep.detail);
    failures += guarded(3, "transcript lengths equal the closed forms",
                        [&](std::string& d) { return criterion3(sweep, d); });
    failures += guarded(4, "proposed load dominates the baseline",
                        [](std::string& d) { return criterion4(d); });
    failures += guarded(5, "corner points match the baseline",
                        [](std::string& d) { return criterion5(d); });
    failures += guarded(6, "block co-membership lemma", [](std::string& d) {
        return criterion6(d);
    });
    failures += guarded(7, "grouped scalar never beats the baseline",
                        [](std::string& d) { return criterion7(d); });
    failures += guarded(8, "oracle agreement and minrank lower bound",
                        [](std::string& d) { return criterion8(d); });

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
