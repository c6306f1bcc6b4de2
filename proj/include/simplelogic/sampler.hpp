#pragma once

#include <cstdint>

#include "simplelogic/rng.hpp"
#include "simplelogic/solver.hpp"
#include "simplelogic/types.hpp"

namespace simplelogic {

struct SamplerConfig {
    std::uint64_t seed = 0;
    // Facts-count lower bound: canonical draws #fact from U[1, #pred],
    // permissive from U[0, #pred] (and lets label-priority emit zero-fact
    // theories instead of redrawing).
    bool permissive_facts = false;
    // Number of independent supporting rules each true predicate receives in
    // the starred label-priority variant.
    int lp_star_multiplicity = 1;
    SolverOptions solver;
};

// One reasoning problem per call; every output satisfies validate_example
// under the configured facts bound.
Example sample_rp(RandomStream& rng, const SamplerConfig& config = {});
Example sample_lp(RandomStream& rng, const SamplerConfig& config = {});
Example sample_lp_star(RandomStream& rng, int multiplicity, const SamplerConfig& config = {});
Example sample_uniform_conditioned(RandomStream& rng, const SamplerConfig& config = {},
                                   int pred_count = 30, int rule_count = 120);

Example sample(SamplerKind kind, RandomStream& rng, const SamplerConfig& config = {});

struct StratifiedSpec {
    int depth_min = 0;
    int depth_max = 6;
    std::uint64_t per_depth = 80'000;
    SamplerKind sampler = SamplerKind::RP;
    int workers = 1;
    // Force an equal label split inside every depth bucket.
    bool balance_labels = false;
    // Candidates are drawn in batches of this size; parallelism and the
    // deterministic merge both operate on whole batches.
    std::uint64_t batch_size = 8192;
    // Progress guard: fail once an unfilled bucket's overall acceptance rate
    // drops below this after the warmup candidate count.
    double acceptance_floor = 1e-7;
    std::uint64_t warmup_candidates = 4'000'000;
};

// Rejection-samples candidates, bucketing by solver depth, until every depth
// bucket holds per_depth examples. Candidate i draws from the counter-based
// stream (seed, i), and buckets fill in candidate order, so the result is a
// pure function of (spec, config) regardless of worker count.
Dataset generate_stratified(const StratifiedSpec& spec, const SamplerConfig& config);

}  // namespace simplelogic
