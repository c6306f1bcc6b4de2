#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simplelogic/types.hpp"

namespace simplelogic {

enum class FeatureName : std::uint8_t { PredCount, FactCount, RuleCount, BranchingFactor };

const char* to_string(FeatureName name);
FeatureName feature_name_from_string(const std::string& name);

int pred_count(const Example& example);
int fact_count(const Example& example);
int rule_count(const Example& example);

// (#fact + sum of rule body sizes) / (#fact + #rule); facts count as
// single-predicate rules. Always in [1, 3]. Throws on an empty theory.
double branching_factor(const Example& example);

// Feature values are rationals (num/den with small integers), so binning is
// done in exact integer arithmetic: bin k covers
// [(k - 1/2) * width, (k + 1/2) * width), width = width_num / width_den.
// Unit-width bins make bin index == feature value for the count features.
struct FeatureSpec {
    FeatureName name = FeatureName::RuleCount;
    std::int64_t width_num = 1;
    std::int64_t width_den = 1;

    static FeatureSpec counts(FeatureName name) { return {name, 1, 1}; }
    static FeatureSpec branching(std::int64_t width_num = 1, std::int64_t width_den = 10) {
        return {FeatureName::BranchingFactor, width_num, width_den};
    }

    std::int64_t bin_of(const Example& example) const;
    double bin_low(std::int64_t bin) const;
    double bin_high(std::int64_t bin) const;
};

FeatureSpec feature_spec_from_string(const std::string& name, double bin_width = 0.0);

struct LabelCounts {
    std::uint64_t positives = 0;
    std::uint64_t negatives = 0;

    std::uint64_t total() const { return positives + negatives; }
    double positive_rate() const {
        return total() == 0 ? 0.0 : static_cast<double>(positives) / static_cast<double>(total());
    }
};

// Per-bin label counts plus marginals. A mergeable monoid: partial histograms
// built over a partition of a dataset merge into the whole-dataset histogram.
class ConditionalHistogram {
public:
    ConditionalHistogram() = default;
    explicit ConditionalHistogram(FeatureSpec spec) : spec_(spec) {}

    void add(const Example& example);
    void merge(const ConditionalHistogram& other);

    const FeatureSpec& spec() const { return spec_; }
    const std::map<std::int64_t, LabelCounts>& bins() const { return bins_; }
    std::uint64_t total() const { return total_; }

    std::optional<LabelCounts> bin_counts(std::int64_t bin) const;
    double conditional_positive(std::int64_t bin) const;
    double marginal(std::int64_t bin) const;

private:
    FeatureSpec spec_;
    std::map<std::int64_t, LabelCounts> bins_;
    std::uint64_t total_ = 0;
};

ConditionalHistogram conditional_label_histogram(const std::vector<Example>& examples,
                                                 const FeatureSpec& spec);

// One condition per feature: either an exact bin or a half-open value
// interval [low, high).
struct CellCondition {
    FeatureSpec feature;
    bool is_interval = false;
    std::int64_t bin = 0;
    double low = 0.0;
    double high = 0.0;

    static CellCondition exact_bin(FeatureSpec f, std::int64_t b) { return {f, false, b, 0, 0}; }
    static CellCondition interval(FeatureSpec f, double lo, double hi) {
        return {f, true, 0, lo, hi};
    }

    bool matches(const Example& example) const;
};

struct JointCell {
    double positive_rate = 0.0;
    std::uint64_t positives = 0;
    std::uint64_t support = 0;
    bool low_confidence = false;  // support below the configured minimum
};

JointCell joint_conditional(const std::vector<Example>& examples,
                            const std::vector<CellCondition>& cell,
                            std::uint64_t min_support = 100);

// CSV with one row per bin: feature,bin_low,bin_high,positives,negatives,
// conditional_prob,marginal_prob.
std::string histogram_to_csv(const ConditionalHistogram& histogram);

}  // namespace simplelogic
