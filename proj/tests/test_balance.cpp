#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "simplelogic/balance.hpp"
#include "simplelogic/jsonl.hpp"

using namespace simplelogic;

namespace {

// Pool entries need only a rule count and a label; the bodies are irrelevant
// to balancing. The query is salted so pool entries stay distinguishable.
Example stub_example(int rules, bool label, int salt = 0) {
    Example ex;
    ex.theory.predicates = {0, 1, 2, 3, 4};
    ex.theory.facts = {0};
    for (int i = 0; i < rules; ++i) ex.theory.rules.push_back(Rule({0}, 1));
    ex.label = label;
    ex.query = static_cast<PredicateId>(salt % 5);
    ex.depth = static_cast<std::int16_t>(salt);
    return ex;
}

Dataset stub_pool(const std::map<int, std::pair<int, int>>& per_bin) {
    Dataset pool;
    int salt = 0;
    for (const auto& [rules, counts] : per_bin) {
        for (int i = 0; i < counts.first; ++i) {
            pool.examples.push_back(stub_example(rules, true, salt++));
        }
        for (int i = 0; i < counts.second; ++i) {
            pool.examples.push_back(stub_example(rules, false, salt++));
        }
    }
    return pool;
}

ConditionalHistogram histogram_of(const Dataset& ds) {
    return conditional_label_histogram(ds.examples, FeatureSpec::counts(FeatureName::RuleCount));
}

}  // namespace

TEST_CASE("cell oversample ratios reproduce the joint-removal escalation") {
    CHECK(cell_oversample_ratio(0.5) == doctest::Approx(1.0));
    CHECK(cell_oversample_ratio(0.908) == doctest::Approx(5.43).epsilon(0.01));
    CHECK(cell_oversample_ratio(0.975) == doctest::Approx(20.0).epsilon(0.01));
    CHECK(cell_oversample_ratio(0.991) == doctest::Approx(55.6).epsilon(0.01));
    CHECK_THROWS_AS(cell_oversample_ratio(1.0), std::domain_error);
}

TEST_CASE("oversample ratio is driven by the most skewed in-range bin") {
    const Dataset pool = stub_pool({{10, {500, 500}}, {80, {927, 73}}});
    const auto hist = histogram_of(pool);
    CHECK(estimate_oversample_ratio(hist, {0, 80}) == doctest::Approx(1.0 / (2 * 0.073)));
    // Restricting the range to the balanced bin drops the requirement to 1.
    CHECK(estimate_oversample_ratio(hist, {0, 10}) == doctest::Approx(1.0));
}

TEST_CASE("zero minority mass in range is an error") {
    const Dataset pool = stub_pool({{10, {500, 500}}, {90, {50, 0}}});
    const auto hist = histogram_of(pool);
    CHECK_THROWS_AS(estimate_oversample_ratio(hist, {0, 90}), std::domain_error);
    CHECK(estimate_oversample_ratio(hist, {0, 80}) == doctest::Approx(1.0));
}

TEST_CASE("plan quotas are equal-label in range and sum to the target") {
    const Dataset pool = stub_pool({{5, {400, 100}}, {10, {300, 200}}, {90, {70, 30}}});
    const auto hist = histogram_of(pool);
    const BalancePlan plan = make_balance_plan(hist, {0, 80}, 101);
    std::uint64_t total = 0;
    for (const auto& [bin, quota] : plan.quotas) {
        total += quota.total;
        if (quota.balanced) {
            CHECK(bin <= 80);
            // one odd bin may carry the rounding slot
            CHECK(quota.positives + quota.negatives == quota.total);
            CHECK(std::llabs(static_cast<long long>(quota.positives) -
                             static_cast<long long>(quota.negatives)) <= 1);
        }
    }
    CHECK(total == 101);
}

TEST_CASE("downsampling hits the three balance criteria on a skewed pool") {
    // 10x pool, heavily positive at high rule counts.
    const Dataset pool = stub_pool({{5, {3000, 3000}},
                                    {20, {4500, 1500}},
                                    {50, {5500, 500}},
                                    {90, {800, 200}}});
    const auto hist = histogram_of(pool);
    const BalancePlan plan = make_balance_plan(hist, {0, 80}, 1950);
    RandomStream rng(77, 0);
    const Dataset out = balance_downsample(pool, plan, rng);
    REQUIRE(out.examples.size() == 1950);

    const BalanceAudit audit = audit_balance(out, plan);
    CHECK(audit.size_exact);
    CHECK(audit.max_bin_imbalance <= 0.01);
    CHECK(audit.marginal_tv_distance <= 0.01);

    // Out-of-range bin keeps its natural mix (roughly 4:1).
    const auto out_hist = histogram_of(out);
    const auto c90 = out_hist.bin_counts(90);
    REQUIRE(c90.has_value());
    CHECK(c90->positive_rate() > 0.6);

    // Balancing is a filter: every output line exists in the pool.
    std::multiset<std::string> pool_lines;
    for (const Example& ex : pool.examples) pool_lines.insert(example_to_jsonl(ex));
    for (const Example& ex : out.examples) {
        auto it = pool_lines.find(example_to_jsonl(ex));
        REQUIRE(it != pool_lines.end());
        pool_lines.erase(it);
    }
}

TEST_CASE("an already balanced pool passes through with intact marginals") {
    const Dataset pool = stub_pool({{5, {500, 500}}, {20, {300, 300}}, {40, {200, 200}}});
    const auto hist = histogram_of(pool);
    const BalancePlan plan = make_balance_plan(hist, {0, 80}, 2000);
    RandomStream rng(5, 0);
    const Dataset out = balance_downsample(pool, plan, rng);
    const BalanceAudit audit = audit_balance(out, plan);
    CHECK(out.examples.size() == 2000);
    CHECK(audit.max_bin_imbalance <= 0.001);
    CHECK(audit.marginal_tv_distance <= 0.001);
}

TEST_CASE("a deficient pool fails loudly, naming the bin and label") {
    const Dataset pool = stub_pool({{5, {1000, 1000}}, {70, {990, 10}}});
    const auto hist = histogram_of(pool);
    const BalancePlan plan = make_balance_plan(hist, {0, 80}, 1500);
    RandomStream rng(6, 0);
    CHECK_THROWS_WITH_AS(balance_downsample(pool, plan, rng), doctest::Contains("bin 70"),
                         std::runtime_error);
}

TEST_CASE("downsampling is deterministic per seed") {
    const Dataset pool = stub_pool({{5, {2000, 2000}}, {30, {1500, 500}}});
    const auto hist = histogram_of(pool);
    const BalancePlan plan = make_balance_plan(hist, {0, 80}, 400);
    RandomStream a(9, 1), b(9, 1), c(10, 1);
    const Dataset out_a = balance_downsample(pool, plan, a);
    const Dataset out_b = balance_downsample(pool, plan, b);
    const Dataset out_c = balance_downsample(pool, plan, c);
    CHECK(out_a.examples.size() == out_b.examples.size());
    bool all_equal = out_a.examples.size() == out_c.examples.size();
    for (std::size_t i = 0; i < out_a.examples.size(); ++i) {
        CHECK(out_a.examples[i] == out_b.examples[i]);
        if (all_equal && !(out_a.examples[i] == out_c.examples[i])) all_equal = false;
    }
    CHECK_FALSE(all_equal);  // a different seed picks a different subset
}

// Dropping only the per-bin minority surplus (no marginal preservation)
// collapses coverage of the skewed bins; the balanced pipeline exists to
// avoid exactly this.
TEST_CASE("naive minimal dropping collapses skewed-bin coverage") {
    auto naive_keep = [](const LabelCounts& c) {
        return 2 * std::min(c.positives, c.negatives);
    };
    const Dataset pool = stub_pool({{38, {3423, 3437}}, {80, {2152, 170}}});
    const auto hist = histogram_of(pool);

    const auto c38 = *hist.bin_counts(38);
    const auto c80 = *hist.bin_counts(80);
    const double keep38 = static_cast<double>(naive_keep(c38)) / static_cast<double>(c38.total());
    const double keep80 = static_cast<double>(naive_keep(c80)) / static_cast<double>(c80.total());
    CHECK(naive_keep(c38) == 6846);
    CHECK(naive_keep(c80) == 340);
    CHECK(keep38 > 0.97);
    CHECK(keep80 < 0.16);
}
