#include "simplelogic/balance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace simplelogic {

namespace {

struct Reservoir {
    std::uint64_t capacity = 0;
    std::uint64_t seen = 0;
    std::vector<std::uint32_t> kept;  // pool indices

    void offer(std::uint32_t index, RandomStream& rng) {
        if (capacity == 0) return;
        if (kept.size() < capacity) {
            kept.push_back(index);
        } else {
            const std::uint64_t j = rng.next_u64() % (seen + 1);
            if (j < capacity) kept[static_cast<std::size_t>(j)] = index;
        }
        ++seen;
    }
};

}  // namespace

double cell_oversample_ratio(double positive_rate) {
    const double minority = std::min(positive_rate, 1.0 - positive_rate);
    if (minority <= 0.0) {
        throw std::domain_error("cell has no minority-label mass; it cannot be balanced");
    }
    return std::max(1.0, 1.0 / (2.0 * minority));
}

double estimate_oversample_ratio(const ConditionalHistogram& histogram, const BinRange& range) {
    double k = 1.0;
    bool any = false;
    for (const auto& [bin, counts] : histogram.bins()) {
        if (!range.contains(bin) || counts.total() == 0) continue;
        any = true;
        if (counts.positives == 0 || counts.negatives == 0) {
            throw std::domain_error("bin " + std::to_string(bin) +
                                    " has zero minority-label mass; range cannot be balanced");
        }
        k = std::max(k, cell_oversample_ratio(counts.positive_rate()));
    }
    if (!any) throw std::invalid_argument("histogram has no populated bins in the range");
    return k;
}

BalancePlan make_balance_plan(const ConditionalHistogram& reference, const BinRange& range,
                              std::uint64_t target_size) {
    if (target_size == 0) throw std::invalid_argument("target size must be positive");
    if (reference.total() == 0) throw std::invalid_argument("reference histogram is empty");

    BalancePlan plan;
    plan.feature = reference.spec();
    plan.balanced_range = range;
    plan.target_size = target_size;

    std::uint64_t assigned = 0;
    for (const auto& [bin, counts] : reference.bins()) {
        const double marginal =
            static_cast<double>(counts.total()) / static_cast<double>(reference.total());
        plan.reference_marginal[bin] = marginal;
        auto& quota = plan.quotas[bin];
        quota.balanced = range.contains(bin);
        auto raw = static_cast<std::uint64_t>(marginal * static_cast<double>(target_size));
        if (quota.balanced) {
            raw -= raw % 2;  // equal halves
            quota.positives = quota.negatives = raw / 2;
        }
        quota.total = raw;
        assigned += raw;
    }
    if (assigned > target_size) {
        throw std::logic_error("quota rounding exceeded the target size");
    }

    // Hand the rounding residue to the largest-marginal bins, a label pair at
    // a time inside the balanced range.
    std::vector<std::int64_t> order;
    for (const auto& [bin, _] : plan.quotas) order.push_back(bin);
    std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
        const double ma = plan.reference_marginal[a];
        const double mb = plan.reference_marginal[b];
        if (ma != mb) return ma > mb;
        return a < b;
    });
    std::uint64_t remainder = target_size - assigned;
    while (remainder > 0) {
        bool progressed = false;
        for (std::int64_t bin : order) {
            if (remainder == 0) break;
            auto& quota = plan.quotas[bin];
            if (quota.balanced) {
                if (remainder >= 2) {
                    ++quota.positives;
                    ++quota.negatives;
                    quota.total += 2;
                    remainder -= 2;
                    progressed = true;
                }
            } else {
                ++quota.total;
                --remainder;
                progressed = true;
            }
        }
        if (!progressed) {
            // Only balanced bins left and one slot to place: allow a single
            // off-by-one bin rather than missing the exact size.
            auto& quota = plan.quotas[order.front()];
            ++quota.positives;
            ++quota.total;
            remainder = 0;
        }
    }
    return plan;
}

Dataset balance_downsample(const Dataset& pool, const BalancePlan& plan, RandomStream& rng) {
    if (pool.examples.size() > 0xffffffffull) {
        throw std::invalid_argument("pool too large for 32-bit indexing");
    }

    // Reservoirs keyed by (bin, stratum): 0/1 = negative/positive inside the
    // balanced range, 2 = any label outside it.
    std::map<std::pair<std::int64_t, int>, Reservoir> reservoirs;
    for (const auto& [bin, quota] : plan.quotas) {
        if (quota.balanced) {
            reservoirs[{bin, 0}].capacity = quota.negatives;
            reservoirs[{bin, 1}].capacity = quota.positives;
        } else {
            reservoirs[{bin, 2}].capacity = quota.total;
        }
    }

    for (std::size_t i = 0; i < pool.examples.size(); ++i) {
        const Example& ex = pool.examples[i];
        const std::int64_t bin = plan.feature.bin_of(ex);
        auto quota_it = plan.quotas.find(bin);
        if (quota_it == plan.quotas.end()) continue;  // bin unseen in the reference
        const int stratum = quota_it->second.balanced ? (ex.label ? 1 : 0) : 2;
        reservoirs[{bin, stratum}].offer(static_cast<std::uint32_t>(i), rng);
    }

    for (const auto& [key, reservoir] : reservoirs) {
        if (reservoir.kept.size() < reservoir.capacity) {
            const char* label = key.second == 0   ? "negative"
                                : key.second == 1 ? "positive"
                                                  : "any-label";
            throw std::runtime_error(
                "pool cannot meet the quota for bin " + std::to_string(key.first) + " (" + label +
                "): need " + std::to_string(reservoir.capacity) + ", pool holds " +
                std::to_string(reservoir.kept.size()));
        }
    }

    std::vector<std::uint32_t> selected;
    selected.reserve(plan.target_size);
    for (const auto& [key, reservoir] : reservoirs) {
        selected.insert(selected.end(), reservoir.kept.begin(), reservoir.kept.end());
    }
    std::sort(selected.begin(), selected.end());

    Dataset out;
    out.metadata = pool.metadata;
    out.examples.reserve(selected.size());
    for (std::uint32_t idx : selected) out.examples.push_back(pool.examples[idx]);
    return out;
}

BalanceAudit audit_balance(const Dataset& output, const BalancePlan& plan) {
    BalanceAudit audit;
    audit.size = output.examples.size();
    audit.size_exact = audit.size == plan.target_size;

    const ConditionalHistogram histogram =
        conditional_label_histogram(output.examples, plan.feature);
    for (const auto& [bin, counts] : histogram.bins()) {
        if (!plan.balanced_range.contains(bin) || counts.total() == 0) continue;
        audit.max_bin_imbalance =
            std::max(audit.max_bin_imbalance, std::abs(counts.positive_rate() - 0.5));
    }

    double tv = 0.0;
    for (const auto& [bin, ref_marginal] : plan.reference_marginal) {
        tv += std::abs(histogram.marginal(bin) - ref_marginal);
    }
    for (const auto& [bin, counts] : histogram.bins()) {
        if (!plan.reference_marginal.contains(bin)) {
            tv += histogram.marginal(bin);
        }
    }
    audit.marginal_tv_distance = tv / 2.0;
    return audit;
}

std::string BalanceAudit::to_json() const {
    std::ostringstream out;
    out.precision(9);
    out << "{\"size\":" << size << ",\"size_exact\":" << (size_exact ? "true" : "false")
        << ",\"max_bin_imbalance\":" << max_bin_imbalance
        << ",\"marginal_tv_distance\":" << marginal_tv_distance << "}";
    return out.str();
}

}  // namespace simplelogic
