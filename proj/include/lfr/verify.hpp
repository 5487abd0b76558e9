#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lfr/json_io.hpp"
#include "lfr/schemes.hpp"

namespace lfr {

/// Rank oracle for decodability: user k can recover D_k * w iff its demand
/// rows lie in the span of its placement rows and the broadcast coefficient
/// rows. Independent of the constructive decoders.
std::vector<bool> decodability_report(const CacheContents& caches,
                                      const Transcript& transcript,
                                      const DemandSet& demands);

/// Exhaustive minimum of rank[D_1 + T_1 P_1; ...; D_K + T_K P_K] over all
/// side-information combinations T_k, a lower bound on any linear delivery
/// length for this fixed placement and demand. T tuples are enumerated in
/// lexicographic order of their flattened entries; stops early at rank 0.
/// Throws capacity_error when q^(total T entries) exceeds `limit`.
std::int64_t minrank_fixed_placement(const std::vector<FieldMatrix>& placements,
                                     const std::vector<FieldMatrix>& demands,
                                     std::uint64_t limit);

struct Lemma1Report {
    std::int64_t checked = 0;
    std::int64_t violations = 0;
};

/// For every K <= users_max, g in [K-1], user k and co-member k1 of its
/// step-1 block: k1 lies in a different class both mod g and mod g+1, so k1
/// caches both subfiles k misses.
Lemma1Report lemma1_exhaustive(int users_max);

struct SuiteCase {
    SystemConfig config;
    SchemeVariant variant;
};

struct CaseResult {
    SystemConfig config;
    SchemeVariant variant;
    int trials = 0;
    int decode_failures = 0;
    std::int64_t expected_length = 0;
    std::int64_t actual_length = 0;
    bool oracle_checked = false;
    bool pass = false;
};

struct SuiteReport {
    std::vector<CaseResult> cases;
    std::vector<nlohmann::json> failure_dumps;
    bool pass = true;
};

/// place -> deliver -> decode on `trials` seeded random instances per case;
/// every user must recover D_k * w exactly and the transcript row count must
/// equal the variant's closed form. `check_oracle` additionally runs the
/// rank-based decodability report on the first instance of each case.
/// Failures carry full replayable JSON dumps.
SuiteReport end_to_end_suite(const std::vector<SuiteCase>& cases, int trials,
                             std::uint64_t seed, bool check_oracle = false);

nlohmann::json suite_report_to_json(const SuiteReport& report);

/// Feasible configs around small-denominator memory points for one user
/// count: every variant that make_plan accepts at each (mu, lambda) point,
/// capped at max_symbols and max_rows. min_points counts distinct (mu,
/// lambda) pairs; throws capacity_error if the caps leave fewer.
std::vector<SuiteCase> grid_cases(int users, Elem field_order,
                                  std::int64_t max_symbols, std::int64_t max_rows,
                                  int min_points);

struct ReplayResult {
    bool pass = false;
    std::string message;
};

/// Re-derives the transcript from the dump's library and demands and
/// re-decodes every user against the stored transcript; any corruption
/// fails the replay.
ReplayResult verify_replay(const InstanceDump& dump);

}  // namespace lfr
