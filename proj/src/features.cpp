#include "simplelogic/features.hpp"

#include <sstream>
#include <stdexcept>

namespace simplelogic {

namespace {

// value = num/den; bin = round(value / width) in exact integer arithmetic.
// round() takes half away from zero, so bin k is [(k-1/2)w, (k+1/2)w).
std::int64_t bin_of_rational(std::int64_t num, std::int64_t den, std::int64_t width_num,
                             std::int64_t width_den) {
    const std::int64_t n = num * width_den;
    const std::int64_t d = den * width_num;
    // floor((2n + d) / (2d)) for non-negative values
    return (2 * n + d) / (2 * d);
}

void feature_value(const Example& example, FeatureName name, std::int64_t& num,
                   std::int64_t& den) {
    switch (name) {
        case FeatureName::PredCount:
            num = static_cast<std::int64_t>(example.theory.predicates.size());
            den = 1;
            return;
        case FeatureName::FactCount:
            num = static_cast<std::int64_t>(example.theory.facts.size());
            den = 1;
            return;
        case FeatureName::RuleCount:
            num = static_cast<std::int64_t>(example.theory.rules.size());
            den = 1;
            return;
        case FeatureName::BranchingFactor: {
            // Average clause length: a rule counts body plus head predicates,
            // a fact counts as a one-predicate rule.
            std::int64_t length_total = 0;
            for (const Rule& r : example.theory.rules) length_total += r.body_size + 1;
            num = static_cast<std::int64_t>(example.theory.facts.size()) + length_total;
            den = static_cast<std::int64_t>(example.theory.facts.size() +
                                            example.theory.rules.size());
            if (den == 0) {
                throw std::invalid_argument("branching_factor undefined: no facts and no rules");
            }
            return;
        }
    }
    throw std::invalid_argument("unknown feature");
}

}  // namespace

const char* to_string(FeatureName name) {
    switch (name) {
        case FeatureName::PredCount: return "pred_count";
        case FeatureName::FactCount: return "fact_count";
        case FeatureName::RuleCount: return "rule_count";
        case FeatureName::BranchingFactor: return "branching_factor";
    }
    return "?";
}

FeatureName feature_name_from_string(const std::string& name) {
    if (name == "pred_count") return FeatureName::PredCount;
    if (name == "fact_count") return FeatureName::FactCount;
    if (name == "rule_count") return FeatureName::RuleCount;
    if (name == "branching_factor") return FeatureName::BranchingFactor;
    throw std::invalid_argument("unknown feature: " + name);
}

int pred_count(const Example& example) {
    return static_cast<int>(example.theory.predicates.size());
}

int fact_count(const Example& example) { return static_cast<int>(example.theory.facts.size()); }

int rule_count(const Example& example) { return static_cast<int>(example.theory.rules.size()); }

double branching_factor(const Example& example) {
    std::int64_t num = 0, den = 0;
    feature_value(example, FeatureName::BranchingFactor, num, den);
    return static_cast<double>(num) / static_cast<double>(den);
}

std::int64_t FeatureSpec::bin_of(const Example& example) const {
    std::int64_t num = 0, den = 0;
    feature_value(example, name, num, den);
    return bin_of_rational(num, den, width_num, width_den);
}

double FeatureSpec::bin_low(std::int64_t bin) const {
    return (2.0 * static_cast<double>(bin) - 1.0) * static_cast<double>(width_num) /
           (2.0 * static_cast<double>(width_den));
}

double FeatureSpec::bin_high(std::int64_t bin) const {
    return (2.0 * static_cast<double>(bin) + 1.0) * static_cast<double>(width_num) /
           (2.0 * static_cast<double>(width_den));
}

FeatureSpec feature_spec_from_string(const std::string& name, double bin_width) {
    const FeatureName fname = feature_name_from_string(name);
    if (fname == FeatureName::BranchingFactor) {
        if (bin_width == 0.0) return FeatureSpec::branching();
        // Decimal widths become exact rationals (e.g. 0.05 -> 5/100).
        std::int64_t den = 1;
        double w = bin_width;
        while (den < 1'000'000 && w != static_cast<double>(static_cast<std::int64_t>(w))) {
            w *= 10;
            den *= 10;
        }
        const auto num = static_cast<std::int64_t>(w);
        if (num <= 0) throw std::invalid_argument("bin width must be positive");
        return FeatureSpec::branching(num, den);
    }
    return FeatureSpec::counts(fname);
}

void ConditionalHistogram::add(const Example& example) {
    LabelCounts& counts = bins_[spec_.bin_of(example)];
    if (example.label) {
        ++counts.positives;
    } else {
        ++counts.negatives;
    }
    ++total_;
}

void ConditionalHistogram::merge(const ConditionalHistogram& other) {
    for (const auto& [bin, counts] : other.bins_) {
        LabelCounts& mine = bins_[bin];
        mine.positives += counts.positives;
        mine.negatives += counts.negatives;
    }
    total_ += other.total_;
}

std::optional<LabelCounts> ConditionalHistogram::bin_counts(std::int64_t bin) const {
    auto it = bins_.find(bin);
    if (it == bins_.end()) return std::nullopt;
    return it->second;
}

double ConditionalHistogram::conditional_positive(std::int64_t bin) const {
    auto counts = bin_counts(bin);
    return counts ? counts->positive_rate() : 0.0;
}

double ConditionalHistogram::marginal(std::int64_t bin) const {
    auto counts = bin_counts(bin);
    if (!counts || total_ == 0) return 0.0;
    return static_cast<double>(counts->total()) / static_cast<double>(total_);
}

ConditionalHistogram conditional_label_histogram(const std::vector<Example>& examples,
                                                 const FeatureSpec& spec) {
    ConditionalHistogram histogram(spec);
    for (const Example& ex : examples) histogram.add(ex);
    return histogram;
}

bool CellCondition::matches(const Example& example) const {
    if (!is_interval) return feature.bin_of(example) == bin;
    std::int64_t num = 0, den = 0;
    feature_value(example, feature.name, num, den);
    const double v = static_cast<double>(num) / static_cast<double>(den);
    return v >= low && v < high;
}

JointCell joint_conditional(const std::vector<Example>& examples,
                            const std::vector<CellCondition>& cell, std::uint64_t min_support) {
    JointCell out;
    for (const Example& ex : examples) {
        bool inside = true;
        for (const CellCondition& cond : cell) {
            if (!cond.matches(ex)) {
                inside = false;
                break;
            }
        }
        if (!inside) continue;
        ++out.support;
        if (ex.label) ++out.positives;
    }
    out.positive_rate =
        out.support == 0 ? 0.0 : static_cast<double>(out.positives) / static_cast<double>(out.support);
    out.low_confidence = out.support < min_support;
    return out;
}

std::string histogram_to_csv(const ConditionalHistogram& histogram) {
    std::ostringstream out;
    out << "feature,bin_low,bin_high,positives,negatives,conditional_prob,marginal_prob\n";
    out.precision(9);
    for (const auto& [bin, counts] : histogram.bins()) {
        out << to_string(histogram.spec().name) << ',' << histogram.spec().bin_low(bin) << ','
            << histogram.spec().bin_high(bin) << ',' << counts.positives << ','
            << counts.negatives << ',' << counts.positive_rate() << ','
            << histogram.marginal(bin) << '\n';
    }
    return out.str();
}

}  // namespace simplelogic
