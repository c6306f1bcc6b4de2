#pragma once

#include "simplelogic/types.hpp"

namespace simplelogic {

struct OracleResult {
    bool label = false;
    int depth = 0;
    // True when the depth budget was small enough (below the predicate
    // count) that pruning may have changed the answer.
    bool cap_hit = false;
    std::uint64_t nodes_visited = 0;
};

struct OracleLimits {
    int depth_cap = 10;
    std::uint64_t node_budget = 50'000'000;
};

// Exhaustive proof-tree enumeration, memoized over (predicate, budget).
// Intended for tiny theories (<= 8 predicates); used to cross-check the
// fixed-point solver. Deliberately shares no code with it.
OracleResult brute_force_oracle(const Theory& theory, PredicateId query,
                                const OracleLimits& limits = {});

}  // namespace simplelogic
