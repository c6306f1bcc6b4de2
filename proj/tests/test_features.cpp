#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "simplelogic/features.hpp"
#include "simplelogic/rng.hpp"
#include "simplelogic/sampler.hpp"

using namespace simplelogic;

namespace {

Example example_with(std::vector<PredicateId> facts, std::vector<Rule> rules, bool label = true) {
    Example ex;
    ex.theory.predicates = {0, 1, 2, 3, 4, 5, 6, 7};
    ex.theory.facts = std::move(facts);
    ex.theory.rules = std::move(rules);
    ex.label = label;
    return ex;
}

}  // namespace

TEST_CASE("count features") {
    const Example ex = example_with({0}, {Rule({0}, 1), Rule({1}, 2)});
    CHECK(pred_count(ex) == 8);
    CHECK(fact_count(ex) == 1);
    CHECK(rule_count(ex) == 2);
    CHECK(rule_count(example_with({0}, {})) == 0);
}

TEST_CASE("branching factor averages clause lengths with facts as unit clauses") {
    // 2 facts (length 1 each) + rules of body sizes 1 and 3 (lengths 2 and 4):
    // (2 + 2 + 4) / (2 + 2) = 2.0
    const Example ex = example_with({0, 1}, {Rule({2}, 3), Rule({0, 1, 2}, 4)});
    CHECK(branching_factor(ex) == doctest::Approx(2.0));

    // facts only: every clause has length 1
    CHECK(branching_factor(example_with({0, 1, 2}, {})) == doctest::Approx(1.0));

    // a single body-3 rule and no facts: length 4 clause
    const Example top = example_with({}, {Rule({0, 1, 2}, 3)});
    CHECK(branching_factor(top) == doctest::Approx(4.0));

    CHECK_THROWS_AS(branching_factor(example_with({}, {})), std::invalid_argument);
}

TEST_CASE("branching factor stays within [1, 4]") {
    RandomStream rng(6, 0);
    SamplerConfig config;
    for (int i = 0; i < 500; ++i) {
        RandomStream stream(6, static_cast<std::uint64_t>(i));
        const double bf = branching_factor(sample_rp(stream, config));
        CHECK(bf >= 1.0);
        CHECK(bf <= 4.0);
    }
}

TEST_CASE("branching bins are exact at decimal boundaries") {
    const FeatureSpec spec = FeatureSpec::branching();
    // 13 facts + 40 body-3 rules: (13 + 160)/53 ... construct exact 2.65 = 53/20
    // instead via a direct rational: 5 facts + 10 rules of length 4 + 5 rules
    // of length 2 gives (5 + 40 + 10)/20 = 55/20 = 2.75 exactly.
    std::vector<Rule> rules;
    for (int i = 0; i < 10; ++i) rules.push_back(Rule({0, 1, 2}, 3));
    for (int i = 0; i < 5; ++i) rules.push_back(Rule({0}, 1));
    const Example at_275 = example_with({0, 1, 2, 3, 4}, rules);
    CHECK(branching_factor(at_275) == doctest::Approx(2.75));
    CHECK(spec.bin_of(at_275) == 28);  // [2.75, 2.85)

    // 5 facts + 16 rules of length 4 + 0 of length 2: (5+64)/21 = 3.2857 -> bin 33
    std::vector<Rule> rules2(16, Rule({0, 1, 2}, 3));
    const Example ex2 = example_with({0, 1, 2, 3, 4}, rules2);
    CHECK(spec.bin_of(ex2) == 33);

    // Exact 2.65 = 53/20: 5 facts + 10 length-4 + 5 length-1.6? Use
    // denominators directly: 15 facts + 5 length-4 rules = (15+20)/20 = 1.75
    // -> boundary of bin 18 [1.75, 1.85).
    std::vector<PredicateId> many_facts;
    for (PredicateId p = 0; p < 15; ++p) many_facts.push_back(p);
    std::vector<Rule> rules3(5, Rule({20, 21, 22}, 23));
    Example ex3;
    ex3.theory.facts = many_facts;
    ex3.theory.rules = rules3;
    CHECK(branching_factor(ex3) == doctest::Approx(1.75));
    CHECK(FeatureSpec::branching().bin_of(ex3) == 18);
}

TEST_CASE("unit bins for count features") {
    const FeatureSpec spec = FeatureSpec::counts(FeatureName::RuleCount);
    const Example ex = example_with({0}, {Rule({0}, 1), Rule({1}, 2), Rule({2}, 3)});
    CHECK(spec.bin_of(ex) == 3);
    CHECK(spec.bin_low(3) == doctest::Approx(2.5));
    CHECK(spec.bin_high(3) == doctest::Approx(3.5));
}

TEST_CASE("degenerate histogram: all positives in one bin") {
    std::vector<Example> data(2, example_with({0}, {Rule({0}, 1), Rule({1}, 2), Rule({2}, 3),
                                                    Rule({3}, 4), Rule({4}, 5)}));
    const auto hist =
        conditional_label_histogram(data, FeatureSpec::counts(FeatureName::RuleCount));
    CHECK(hist.conditional_positive(5) == doctest::Approx(1.0));
    CHECK(hist.marginal(5) == doctest::Approx(1.0));
    CHECK(hist.total() == 2);
}

TEST_CASE("histogram counts partition the dataset and marginals sum to one") {
    SamplerConfig config;
    std::vector<Example> data;
    for (int i = 0; i < 2000; ++i) {
        RandomStream rng(14, static_cast<std::uint64_t>(i));
        data.push_back(sample_rp(rng, config));
    }
    const auto hist = conditional_label_histogram(data, FeatureSpec::branching());
    std::uint64_t total = 0;
    double marginal_sum = 0.0;
    for (const auto& [bin, counts] : hist.bins()) {
        total += counts.total();
        marginal_sum += hist.marginal(bin);
    }
    CHECK(total == data.size());
    CHECK(marginal_sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("histograms are order-independent and merge like a monoid") {
    SamplerConfig config;
    std::vector<Example> data;
    for (int i = 0; i < 1000; ++i) {
        RandomStream rng(15, static_cast<std::uint64_t>(i));
        data.push_back(sample_rp(rng, config));
    }
    const FeatureSpec spec = FeatureSpec::counts(FeatureName::FactCount);
    const auto whole = conditional_label_histogram(data, spec);

    std::vector<Example> shuffled = data;
    RandomStream rng(16, 0);
    rng.shuffle(shuffled);
    const auto permuted = conditional_label_histogram(shuffled, spec);
    CHECK(whole.bins().size() == permuted.bins().size());
    for (const auto& [bin, counts] : whole.bins()) {
        auto other = permuted.bin_counts(bin);
        REQUIRE(other.has_value());
        CHECK(other->positives == counts.positives);
        CHECK(other->negatives == counts.negatives);
    }

    ConditionalHistogram merged(spec);
    const std::size_t half = data.size() / 2;
    ConditionalHistogram left(spec), right(spec);
    for (std::size_t i = 0; i < half; ++i) left.add(data[i]);
    for (std::size_t i = half; i < data.size(); ++i) right.add(data[i]);
    merged.merge(left);
    merged.merge(right);
    CHECK(merged.total() == whole.total());
    for (const auto& [bin, counts] : whole.bins()) {
        auto other = merged.bin_counts(bin);
        REQUIRE(other.has_value());
        CHECK(other->positives == counts.positives);
        CHECK(other->negatives == counts.negatives);
    }
}

TEST_CASE("joint cells report support separately from probability") {
    std::vector<Example> data;
    data.push_back(example_with({0, 1}, {Rule({0}, 1)}, true));   // f=2, r=1
    data.push_back(example_with({0, 1}, {Rule({0}, 1)}, false));  // f=2, r=1
    data.push_back(example_with({0}, {}, false));                 // f=1, r=0

    const std::vector<CellCondition> cell_f2r1 = {
        CellCondition::exact_bin(FeatureSpec::counts(FeatureName::FactCount), 2),
        CellCondition::exact_bin(FeatureSpec::counts(FeatureName::RuleCount), 1)};
    const JointCell c = joint_conditional(data, cell_f2r1, 100);
    CHECK(c.support == 2);
    CHECK(c.positive_rate == doctest::Approx(0.5));
    CHECK(c.low_confidence);  // support below 100

    const std::vector<CellCondition> empty_cell = {
        CellCondition::exact_bin(FeatureSpec::counts(FeatureName::FactCount), 7)};
    const JointCell none = joint_conditional(data, empty_cell, 100);
    CHECK(none.support == 0);
    CHECK(none.positive_rate == 0.0);

    const std::vector<CellCondition> zero_rate_cell = {
        CellCondition::exact_bin(FeatureSpec::counts(FeatureName::FactCount), 1)};
    const JointCell zero_rate = joint_conditional(data, zero_rate_cell, 100);
    CHECK(zero_rate.support == 1);  // distinct from the empty cell
    CHECK(zero_rate.positive_rate == 0.0);
}

TEST_CASE("interval cells are half-open") {
    const Example ex = example_with({0, 1}, {Rule({2}, 3), Rule({0, 1, 2}, 4)});  // bf = 2.0
    const CellCondition in = CellCondition::interval(FeatureSpec::branching(), 2.0, 2.1);
    const CellCondition out = CellCondition::interval(FeatureSpec::branching(), 1.9, 2.0);
    CHECK(in.matches(ex));
    CHECK_FALSE(out.matches(ex));
}

TEST_CASE("csv output carries one row per bin with exact counts") {
    std::vector<Example> data;
    data.push_back(example_with({0}, {Rule({0}, 1)}, true));
    data.push_back(example_with({0}, {Rule({0}, 1)}, false));
    data.push_back(example_with({0}, {}, true));
    const auto hist =
        conditional_label_histogram(data, FeatureSpec::counts(FeatureName::RuleCount));
    const std::string csv = histogram_to_csv(hist);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "feature,bin_low,bin_high,positives,negatives,conditional_prob,marginal_prob");
    std::getline(in, line);
    CHECK(line.substr(0, 11) == "rule_count,");
    int rows = 1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 2);
}

TEST_CASE("feature specs parse from strings") {
    CHECK(feature_spec_from_string("rule_count").name == FeatureName::RuleCount);
    const FeatureSpec bf = feature_spec_from_string("branching_factor", 0.05);
    CHECK(bf.width_num * 20 == bf.width_den);
    CHECK_THROWS_AS(feature_spec_from_string("entropy"), std::invalid_argument);
}
