#pragma once

#include <cstdint>
#include <vector>

#include "lfr/model.hpp"
#include "lfr/variant.hpp"

namespace lfr {

/// Mod(b, a) with values in {1, ..., a}.
int mod1(int b, int a);

struct ColRange {
    std::int64_t begin = 0;
    std::int64_t length = 0;
};

/// Canonical column layout of w. Part 1 occupies the leading columns, one
/// range per subfile ordered by the index i of the excluded element (range
/// i-1 holds the subfile indexed by the set [g] minus {i}); part 2 follows,
/// ordered the same way. User k caches part-1 range i-1 iff i != Mod(k,g)
/// and part-2 range i-1 iff i != Mod(k,g+1). On the top branch part1 has K
/// per-user ranges and part2 is a single range cached by everyone.
struct PartitionLayout {
    Branch branch = Branch::interpolate;
    int g = 0;
    std::vector<ColRange> part1;
    std::vector<ColRange> part2;
};

struct SchemePlan {
    SchemeVariant variant = SchemeVariant::baseline_unicast;
    int users = 0;
    PartitionLayout layout;
};

/// Invertible change of basis on user k's unknown block B_k. The bottom
/// rows of t * [A | C] have an all-zero A-part, where A collects the demand
/// columns of the missing part-1 subfile.
struct UserTransform {
    FieldMatrix t;
    FieldMatrix t_inv;
    std::int64_t top_rows;
    std::int64_t bottom_rows;
};

/// Users a_k*g + j, j in [g] minus {Mod(k,g)}, capped at K: the co-members
/// of k's step-1 block, each of which caches both subfiles k misses.
std::vector<int> peers(int user, int g, int users);

/// Validates feasibility of the variant at the config's (mu, lambda) and
/// builds the column layout. Throws config_error on regime mismatch or,
/// for the corner scheme, when g does not divide F.
SchemePlan make_plan(const SystemConfig& config, SchemeVariant variant);

/// Uncoded placement for the plan: standard-basis selection rows plus the
/// selected symbols. Baselines cache the first M symbols; the corner scheme
/// caches all part-1 subfiles except Mod(k,g); the memory-shared layouts
/// cache all subfiles except one per part.
CacheContents place(const SchemePlan& plan, const SystemConfig& config,
                    const Library& library);

std::vector<UserTransform> build_transforms(const SchemePlan& plan,
                                            const SystemConfig& config,
                                            const DemandSet& demands);

Transcript deliver(const SchemePlan& plan, const SystemConfig& config,
                   const DemandSet& demands, const Library& library);

/// Exact transmitted-symbol count for the variant, as an integer.
std::int64_t expected_length(const SchemePlan& plan, const SystemConfig& config);

/// Demand-dependent decoding state shared by all users: the rho2 transforms
/// and each user's transformed masked demand T_k * D_k|missing. Build once
/// per (plan, demands) and reuse across decode calls.
struct DecodeContext {
    SchemePlan plan;
    std::vector<UserTransform> transforms;
    std::vector<FieldMatrix> bprime;
};

DecodeContext make_decode_context(const SchemePlan& plan, const SystemConfig& config,
                                  const DemandSet& demands);

/// Reconstructs D_k * w (L x 1) for 1-based user k from its cache and the
/// broadcast alone. Throws decode_error if the transcript lacks a segment
/// the variant requires.
FieldMatrix decode(int user, const DecodeContext& context, const SystemConfig& config,
                   const CacheContents& caches, const Transcript& transcript,
                   const DemandSet& demands);

FieldMatrix decode(int user, const SchemePlan& plan, const SystemConfig& config,
                   const CacheContents& caches, const Transcript& transcript,
                   const DemandSet& demands);

}  // namespace lfr
