#include "simplelogic/oracle.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace simplelogic {

namespace {

constexpr int kInfinity = std::numeric_limits<int>::max() / 2;
constexpr int kUncomputed = -2;

struct Enumerator {
    const Theory& theory;
    const OracleLimits& limits;
    std::vector<std::vector<int>> rules_heading;  // predicate -> rule indices
    std::vector<char> is_fact;
    // memo[p][b]: minimum proof-tree depth of p using trees of height <= b,
    // kInfinity if none exists at that budget.
    std::vector<std::vector<int>> min_depth_memo;
    std::uint64_t nodes = 0;
    bool budget_pruned = false;

    Enumerator(const Theory& t, const OracleLimits& lim) : theory(t), limits(lim) {
        std::size_t bound = kVocabularySize;
        for (PredicateId p : t.predicates) bound = std::max(bound, static_cast<std::size_t>(p) + 1);
        rules_heading.resize(bound);
        is_fact.assign(bound, 0);
        for (std::size_t r = 0; r < t.rules.size(); ++r) {
            rules_heading[t.rules[r].head].push_back(static_cast<int>(r));
        }
        for (PredicateId f : t.facts) is_fact[f] = 1;
        min_depth_memo.assign(bound, std::vector<int>(static_cast<std::size_t>(lim.depth_cap) + 1,
                                                      kUncomputed));
    }

    void charge() {
        if (++nodes > limits.node_budget) {
            throw std::runtime_error("brute_force_oracle: node budget exceeded");
        }
    }

    int min_proof_depth(PredicateId p, int budget) {
        charge();
        if (is_fact[p]) return 0;
        if (budget == 0) {
            if (!rules_heading[p].empty()) budget_pruned = true;
            return kInfinity;
        }
        int& memo = min_depth_memo[p][static_cast<std::size_t>(budget)];
        if (memo != kUncomputed) return memo;
        int best = kInfinity;
        for (int ri : rules_heading[p]) {
            const Rule& rule = theory.rules[static_cast<std::size_t>(ri)];
            int deepest_child = 0;
            for (PredicateId b : rule.body()) {
                const int d = min_proof_depth(b, budget - 1);
                deepest_child = std::max(deepest_child, d);
                if (deepest_child >= kInfinity) break;
            }
            if (deepest_child < kInfinity) best = std::min(best, 1 + deepest_child);
        }
        memo = best;
        return best;
    }
};

}  // namespace

OracleResult brute_force_oracle(const Theory& theory, PredicateId query,
                                const OracleLimits& limits) {
    Enumerator e(theory, limits);
    OracleResult result;
    const int query_depth = e.min_proof_depth(query, limits.depth_cap);
    if (query_depth < kInfinity) {
        result.label = true;
        result.depth = query_depth;
    } else {
        // An unprovable query's depth is the saturation depth; derive it by
        // proving every predicate independently, top down.
        result.label = false;
        int saturation = 0;
        for (PredicateId p : theory.predicates) {
            const int d = e.min_proof_depth(p, limits.depth_cap);
            if (d < kInfinity) saturation = std::max(saturation, d);
        }
        result.depth = saturation;
    }
    // Minimal proof trees never repeat an atom along a path, so a budget of
    // at least the predicate count decides everything exactly; pruning below
    // that may have cost us an answer.
    result.cap_hit =
        e.budget_pruned && limits.depth_cap < static_cast<int>(theory.predicates.size());
    result.nodes_visited = e.nodes;
    return result;
}

}  // namespace simplelogic
