#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "simplelogic/features.hpp"
#include "simplelogic/rng.hpp"
#include "simplelogic/types.hpp"

namespace simplelogic {

struct BinRange {
    std::int64_t low = 0;
    std::int64_t high = 0;  // inclusive

    bool contains(std::int64_t bin) const { return bin >= low && bin <= high; }
};

// Per-bin keep quotas for a balanced down-sample: inside the balanced range
// both labels get equal quotas; outside, the natural label mix is kept.
// The reference marginal is the source dataset's bin distribution.
struct BalancePlan {
    FeatureSpec feature;
    BinRange balanced_range;
    std::uint64_t target_size = 0;
    std::map<std::int64_t, double> reference_marginal;
    struct Quota {
        std::uint64_t positives = 0;  // used only inside the balanced range
        std::uint64_t negatives = 0;
        std::uint64_t total = 0;
        bool balanced = false;
    };
    std::map<std::int64_t, Quota> quotas;
};

// Smallest pre-sampling multiple of the source such that every in-range bin
// can fill an equal-label quota at the reference marginal; determined by the
// most label-skewed bin. Throws if an in-range bin has no minority mass.
double estimate_oversample_ratio(const ConditionalHistogram& histogram, const BinRange& range);

// Pre-sampling multiple needed to balance one conditional cell with positive
// rate p: 1 / (2 * min(p, 1 - p)).
double cell_oversample_ratio(double positive_rate);

BalancePlan make_balance_plan(const ConditionalHistogram& reference, const BinRange& range,
                              std::uint64_t target_size);

// Selects exactly plan.target_size examples from the pool by per-stratum
// reservoir sampling. Throws, naming the deficient (bin, label), if the pool
// cannot meet a quota.
Dataset balance_downsample(const Dataset& pool, const BalancePlan& plan, RandomStream& rng);

struct BalanceAudit {
    double max_bin_imbalance = 0.0;  // max |Pr(label=1|bin) - 0.5| over balanced bins
    double marginal_tv_distance = 0.0;
    std::uint64_t size = 0;
    bool size_exact = false;
    std::string to_json() const;
};

// Re-measures the three criteria on a balanced output.
BalanceAudit audit_balance(const Dataset& output, const BalancePlan& plan);

}  // namespace simplelogic
