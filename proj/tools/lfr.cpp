#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lfr/analysis.hpp"
#include "lfr/errors.hpp"
#include "lfr/json_io.hpp"
#include "lfr/schemes.hpp"
#include "lfr/verify.hpp"

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

lfr::Rational parse_ratio(const std::string& text, const char* what) {
    try {
        return lfr::Rational::parse(text);
    } catch (const lfr::domain_error&) {
        throw usage_error(std::string(what) + ": expected an exact rational like 47/72, got '" +
                          text + "'");
    }
}

std::vector<lfr::Rational> parse_ratio_list(const std::string& text, const char* what) {
    std::vector<lfr::Rational> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) out.push_back(parse_ratio(item, what));
    if (out.empty()) throw usage_error(std::string(what) + ": empty list");
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw usage_error("cannot open '" + path + "' for writing");
    out << text;
}

nlohmann::json segments_json(const lfr::Transcript& transcript) {
    nlohmann::json segments = nlohmann::json::array();
    for (const lfr::Segment& s : transcript.segments)
        segments.push_back({{"label", s.label}, {"start", s.start}, {"length", s.length}});
    return segments;
}

struct CurveArgs {
    int users = 0;
    std::string lambda;
    int grid = 0;
    std::string mu_list;
    std::string svg;
    std::string out;
};

int run_curve(const CurveArgs& args) {
    lfr::Rational lambda = parse_ratio(args.lambda, "--lambda");
    std::vector<lfr::Rational> grid;
    if (args.grid > 0)
        grid = lfr::uniform_grid(args.grid);
    else if (!args.mu_list.empty())
        grid = parse_ratio_list(args.mu_list, "--mu-list");
    else
        throw usage_error("curve needs --grid or --mu-list");
    std::sort(grid.begin(), grid.end());
    std::vector<lfr::LoadPoint> points = lfr::sweep_curve(args.users, lambda, grid);
    std::string csv = lfr::curve_csv(points);
    if (args.out.empty())
        std::cout << csv;
    else
        write_text(args.out, csv);
    if (!args.svg.empty())
        write_text(args.svg, lfr::curve_svg(points, "K=" + std::to_string(args.users) +
                                                        ", lambda=" + lambda.str()));
    return 0;
}

struct SimulateArgs {
    int users = 0;
    std::string mu;
    std::string lambda;
    std::uint64_t field = 7;
    std::string variant = "auto";
    std::uint64_t seed = 1;
    std::int64_t scale = 1;
    std::string dump;
};

int run_simulate(const SimulateArgs& args) {
    lfr::Rational mu = parse_ratio(args.mu, "--mu");
    lfr::Rational lambda = parse_ratio(args.lambda, "--lambda");
    lfr::Regime regime = lfr::choose_regime(args.users, mu);
    lfr::SchemeVariant variant;
    if (args.variant == "auto") {
        variant = lfr::theorem_load(args.users, mu, lambda).chosen_variant;
    } else if (auto parsed = lfr::parse_variant(args.variant)) {
        variant = *parsed;
    } else {
        throw usage_error("--variant: unknown variant '" + args.variant + "'");
    }
    std::int64_t base = lfr::validate_divisibility(args.users, mu, lambda, regime);
    if (variant == lfr::SchemeVariant::corner_grouped)
        base = base / std::gcd(base, static_cast<std::int64_t>(regime.g)) * regime.g;
    std::int64_t symbols = base * args.scale;
    std::int64_t rows = (lambda * symbols).num();
    std::int64_t cache = (mu * symbols).num();
    lfr::SystemConfig config(args.users, symbols, rows, args.field, cache);
    lfr::SchemePlan plan = lfr::make_plan(config, variant);

    auto [library, demands] = lfr::random_instance(config, args.seed);
    lfr::CacheContents caches = lfr::place(plan, config, library);
    lfr::Transcript transcript = lfr::deliver(plan, config, demands, library);
    std::int64_t expected = lfr::expected_length(plan, config);
    lfr::DecodeContext context = lfr::make_decode_context(plan, config, demands);

    nlohmann::json decoded = nlohmann::json::array();
    bool pass = transcript.length() == expected;
    for (int k = 1; k <= config.users; ++k) {
        bool ok;
        try {
            ok = lfr::decode(k, context, config, caches, transcript, demands) ==
                 lfr::mat_mul(demands.matrices[k - 1], library.w);
        } catch (const lfr::decode_error&) {
            ok = false;
        }
        decoded.push_back(ok);
        pass = pass && ok;
    }

    nlohmann::json summary = {
        {"config", lfr::config_to_json(config)},
        {"variant", std::string(lfr::variant_name(variant))},
        {"seed", args.seed},
        {"scale", args.scale},
        {"expected_length", expected},
        {"transcript_length", transcript.length()},
        {"rho", lfr::Rational(transcript.length(), symbols).str()},
        {"segments", segments_json(transcript)},
        {"decode", decoded},
        {"pass", pass},
    };
    if (!args.dump.empty())
        write_text(args.dump, lfr::dump_to_json({config, args.seed, variant, library, demands,
                                                 transcript})
                                      .dump(2) +
                                  "\n");
    std::cout << summary.dump(2) << "\n";
    return pass ? 0 : 1;
}

struct VerifyArgs {
    std::string suite = "quick";
    int kmax = 0;
    int trials = 0;
    std::uint64_t seed = 1;
    std::string report;
    std::string replay;
};

int run_replay(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot open replay file '" + path + "'");
    lfr::InstanceDump dump = lfr::dump_from_json(nlohmann::json::parse(in));
    lfr::ReplayResult result = lfr::verify_replay(dump);
    std::cout << nlohmann::json{{"pass", result.pass}, {"message", result.message}}.dump(2)
              << "\n";
    return result.pass ? 0 : 1;
}

nlohmann::json minrank_probes(std::uint64_t seed, bool& pass) {
    std::int64_t checked = 0;
    std::int64_t violations = 0;
    std::uint64_t instance = 0;
    for (std::int64_t symbols : {2, 3}) {
        for (std::int64_t cache = 1; cache <= std::min<std::int64_t>(2, symbols); ++cache) {
            lfr::SystemConfig config(2, symbols, 1, 2, cache);
            for (lfr::SchemeVariant variant : lfr::all_variants) {
                lfr::SchemePlan plan;
                try {
                    plan = lfr::make_plan(config, variant);
                } catch (const lfr::config_error&) {
                    continue;
                }
                auto [library, demands] = lfr::random_instance(config, seed + ++instance);
                lfr::CacheContents caches = lfr::place(plan, config, library);
                lfr::Transcript transcript = lfr::deliver(plan, config, demands, library);
                std::vector<lfr::FieldMatrix> placements;
                for (const auto& user : caches.users) placements.push_back(user.placement);
                std::int64_t bound =
                    lfr::minrank_fixed_placement(placements, demands.matrices, 1u << 20);
                ++checked;
                if (bound > transcript.length()) ++violations;
            }
        }
    }
    pass = pass && violations == 0;
    return {{"checked", checked}, {"violations", violations}};
}

int run_verify(const VerifyArgs& args) {
    if (!args.replay.empty()) return run_replay(args.replay);
    if (args.suite != "quick" && args.suite != "full")
        throw usage_error("--suite: expected quick or full");
    const bool full = args.suite == "full";
    const int kmax = args.kmax > 0 ? args.kmax : (full ? 24 : 12);
    const int trials = args.trials > 0 ? args.trials : (full ? 20 : 5);
    const std::vector<int> user_counts =
        full ? std::vector<int>{2, 3, 4, 5, 6, 7, 8, 9, 10} : std::vector<int>{2, 3, 4, 6};
    const std::vector<lfr::Elem> fields =
        full ? std::vector<lfr::Elem>{2, 3, 7} : std::vector<lfr::Elem>{3};
    const std::int64_t max_symbols = full ? 120 : 96;
    const std::int64_t max_rows = full ? 12 : 8;
    const int min_points = full ? 30 : 6;

    bool pass = true;
    nlohmann::json report;
    report["suite"] = args.suite;
    report["seed"] = args.seed;

    lfr::Lemma1Report lemma = lfr::lemma1_exhaustive(kmax);
    report["lemma1"] = {{"users_max", kmax},
                        {"checked", lemma.checked},
                        {"violations", lemma.violations}};
    pass = pass && lemma.violations == 0;

    nlohmann::json combos = nlohmann::json::array();
    nlohmann::json failures = nlohmann::json::array();
    for (int users : user_counts) {
        for (lfr::Elem field : fields) {
            std::vector<lfr::SuiteCase> cases =
                lfr::grid_cases(users, field, max_symbols, max_rows, min_points);
            std::uint64_t combo_seed =
                args.seed ^ (static_cast<std::uint64_t>(users) * 131 + field);
            lfr::SuiteReport suite =
                lfr::end_to_end_suite(cases, trials, combo_seed, /*check_oracle=*/!full);
            nlohmann::json failing = nlohmann::json::array();
            for (const lfr::CaseResult& result : suite.cases)
                if (!result.pass)
                    failing.push_back({{"config", lfr::config_to_json(result.config)},
                                       {"variant", std::string(lfr::variant_name(result.variant))},
                                       {"decode_failures", result.decode_failures}});
            combos.push_back({{"users", users},
                              {"field", field},
                              {"cases", cases.size()},
                              {"trials_per_case", trials},
                              {"pass", suite.pass},
                              {"failing_cases", failing}});
            for (const nlohmann::json& dump : suite.failure_dumps) failures.push_back(dump);
            pass = pass && suite.pass;
        }
    }
    report["end_to_end"] = combos;
    report["failure_dumps"] = failures;
    report["minrank_probes"] = minrank_probes(args.seed, pass);
    report["pass"] = pass;

    std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!args.report.empty()) {
        write_text(args.report, text);
        if (!pass) std::cerr << "verification failed; report written to " << args.report << "\n";
    }
    return pass ? 0 : 1;
}

struct Example1Args {
    std::uint64_t field = 7;
    std::uint64_t seed = 2024;
};

int run_example1(const Example1Args& args) {
    const int users = 6;
    const lfr::Rational mu(47, 72);
    const lfr::Rational lambda(1, 12);
    const std::int64_t symbols = 72;
    lfr::SystemConfig config(users, symbols, 6, args.field, 47);

    lfr::LoadPoint point = lfr::theorem_load(users, mu, lambda);
    lfr::Rational rho1 = lfr::variant_load(users, mu, lambda, lfr::SchemeVariant::rho1);
    lfr::Rational rho2 = lfr::variant_load(users, mu, lambda, lfr::SchemeVariant::rho2);
    lfr::Rational baseline = lfr::baseline_load(users, mu, lambda);

    std::cout << "K=6  mu=47/72  lambda=1/12  q=" << args.field << "  F=72  L=6  M=47\n\n";
    std::cout << "solution      formula            simulated\n";

    bool pass = rho1 == lfr::Rational(5, 24) && rho2 == lfr::Rational(5, 24) &&
                baseline == lfr::Rational(25, 72) && point.rho_proposed == lfr::Rational(5, 24);
    auto [library, demands] = lfr::random_instance(config, args.seed);
    for (lfr::SchemeVariant variant : {lfr::SchemeVariant::rho1, lfr::SchemeVariant::rho2}) {
        lfr::SchemePlan plan = lfr::make_plan(config, variant);
        lfr::CacheContents caches = lfr::place(plan, config, library);
        lfr::Transcript transcript = lfr::deliver(plan, config, demands, library);
        lfr::DecodeContext context = lfr::make_decode_context(plan, config, demands);
        int decoded = 0;
        for (int k = 1; k <= users; ++k)
            if (lfr::decode(k, context, config, caches, transcript, demands) ==
                lfr::mat_mul(demands.matrices[k - 1], library.w))
                ++decoded;
        lfr::Rational formula = variant == lfr::SchemeVariant::rho1 ? rho1 : rho2;
        std::int64_t formula_symbols = (formula * symbols).num();
        std::cout << lfr::variant_name(variant) << "          " << formula.str() << " ("
                  << formula_symbols << " symbols)   " << transcript.length() << " symbols, "
                  << decoded << "/" << users << " users decoded\n";
        pass = pass && transcript.length() == formula_symbols && decoded == users;
    }
    std::cout << "baseline      " << baseline.str() << " (" << (baseline * symbols).num()
              << " symbols)\n";
    std::cout << "best          " << point.rho_proposed.str() << " via "
              << lfr::variant_name(point.chosen_variant) << "\n\n";
    std::cout << (pass ? "all values match\n" : "MISMATCH\n");
    return pass ? 0 : 1;
}

struct MinrankArgs {
    int users = 2;
    std::int64_t symbols = 2;
    std::int64_t rows = 1;
    std::uint64_t field = 2;
    std::int64_t cache = 1;
    std::uint64_t seed = 1;
    std::uint64_t limit = 1u << 20;
    std::string variant = "baseline-unicast";
};

int run_minrank(const MinrankArgs& args) {
    auto parsed = lfr::parse_variant(args.variant);
    if (!parsed) throw usage_error("--variant: unknown variant '" + args.variant + "'");
    lfr::SystemConfig config(args.users, args.symbols, args.rows, args.field, args.cache);
    lfr::SchemePlan plan = lfr::make_plan(config, *parsed);
    auto [library, demands] = lfr::random_instance(config, args.seed);
    lfr::CacheContents caches = lfr::place(plan, config, library);
    lfr::Transcript transcript = lfr::deliver(plan, config, demands, library);
    std::vector<lfr::FieldMatrix> placements;
    for (const auto& user : caches.users) placements.push_back(user.placement);
    std::int64_t bound = lfr::minrank_fixed_placement(placements, demands.matrices, args.limit);
    bool holds = bound <= transcript.length();
    nlohmann::json out = {
        {"config", lfr::config_to_json(config)},
        {"variant", std::string(lfr::variant_name(*parsed))},
        {"seed", args.seed},
        {"minrank", bound},
        {"transcript_length", transcript.length()},
        {"lower_bound_holds", holds},
    };
    std::cout << out.dump(2) << "\n";
    return holds ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for cache-aided retrieval of general linear functions over GF(p)"};
    app.require_subcommand(1);

    CurveArgs curve_args;
    CLI::App* curve = app.add_subcommand("curve", "memory-load tradeoff sweep as CSV");
    curve->add_option("--users", curve_args.users, "number of users K")
        ->required()
        ->check(CLI::PositiveNumber);
    curve->add_option("--lambda", curve_args.lambda, "demand rows per library symbol, as p/q")
        ->required();
    CLI::Option* grid_opt =
        curve->add_option("--grid", curve_args.grid, "uniform mu grid with this many points");
    curve->add_option("--mu-list", curve_args.mu_list, "comma-separated exact mu values")
        ->excludes(grid_opt);
    curve->add_option("--svg", curve_args.svg, "also render a line chart to this file");
    curve->add_option("--out", curve_args.out, "write CSV here instead of stdout");

    SimulateArgs sim_args;
    CLI::App* simulate = app.add_subcommand("simulate", "run one place/deliver/decode instance");
    simulate->add_option("--users", sim_args.users, "number of users K")
        ->required()
        ->check(CLI::PositiveNumber);
    simulate->add_option("--mu", sim_args.mu, "cache fraction M/F, as p/q")->required();
    simulate->add_option("--lambda", sim_args.lambda, "demand fraction L/F, as p/q")->required();
    simulate->add_option("--field", sim_args.field, "prime field order (default 7)");
    simulate->add_option("--variant", sim_args.variant,
                         "auto|baseline-unicast|baseline-full|corner|rho1|rho2|rho3");
    simulate->add_option("--seed", sim_args.seed, "instance seed (default 1)");
    simulate->add_option("--scale", sim_args.scale, "use F = scale x minimal F")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--dump", sim_args.dump, "write a replayable JSON dump here");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "randomized and exhaustive self-checks");
    verify->add_option("--suite", verify_args.suite, "quick or full (default quick)");
    verify->add_option("--kmax", verify_args.kmax, "largest K for the co-membership sweep");
    verify->add_option("--trials", verify_args.trials, "random instances per case");
    verify->add_option("--seed", verify_args.seed, "suite seed (default 1)");
    verify->add_option("--report", verify_args.report, "also write the JSON report here");
    verify->add_option("--replay", verify_args.replay, "replay a JSON dump instead of the suite");

    Example1Args ex_args;
    CLI::App* example1 =
        app.add_subcommand("example1", "reproduce the worked K=6, mu=47/72, lambda=1/12 instance");
    example1->add_option("--field", ex_args.field, "prime field order (default 7)");
    example1->add_option("--seed", ex_args.seed, "instance seed (default 2024)");

    MinrankArgs minrank_args;
    CLI::App* minrank =
        app.add_subcommand("minrank", "brute-force linear-delivery lower bound on one instance");
    minrank->add_option("--users", minrank_args.users, "number of users K")
        ->check(CLI::PositiveNumber);
    minrank->add_option("--symbols", minrank_args.symbols, "library length F")
        ->check(CLI::PositiveNumber);
    minrank->add_option("--rows", minrank_args.rows, "demand rows L per user")
        ->check(CLI::PositiveNumber);
    minrank->add_option("--field", minrank_args.field, "prime field order (default 2)");
    minrank->add_option("--cache", minrank_args.cache, "cache symbols M per user");
    minrank->add_option("--seed", minrank_args.seed, "instance seed (default 1)");
    minrank->add_option("--limit", minrank_args.limit, "largest allowed search-space size");
    minrank->add_option("--variant", minrank_args.variant,
                        "scheme whose placement to probe (default baseline-unicast)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (curve->parsed()) return run_curve(curve_args);
        if (simulate->parsed()) return run_simulate(sim_args);
        if (verify->parsed()) return run_verify(verify_args);
        if (example1->parsed()) return run_example1(ex_args);
        if (minrank->parsed()) return run_minrank(minrank_args);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lfr::config_error& e) {
        std::cerr << "infeasible configuration: " << e.what() << "\n";
        return 3;
    } catch (const lfr::capacity_error& e) {
        std::cerr << "infeasible configuration: " << e.what() << "\n";
        return 3;
    } catch (const lfr::decode_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
