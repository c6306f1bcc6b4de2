#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "simplelogic/types.hpp"

namespace simplelogic {

// Minimum proof-tree depth per provable predicate. A fact has depth 0; a rule
// application has depth 1 + max over its body depths. Predicates absent from
// the map are unprovable.
class ProofDepthMap {
public:
    ProofDepthMap() = default;
    explicit ProofDepthMap(std::vector<std::pair<PredicateId, int>> entries);

    std::optional<int> depth_of(PredicateId p) const;
    bool provable(PredicateId p) const { return depth_of(p).has_value(); }
    const std::vector<std::pair<PredicateId, int>>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<std::pair<PredicateId, int>> entries_;  // sorted by predicate
};

struct SolverOptions {
    // Clamp on reported failure depths. Saturation depth is intrinsically
    // bounded by the predicate count, so with default-sized theories this
    // almost never binds.
    int failure_depth_cap = 25;
};

ProofDepthMap forward_chain(const Theory& theory);

// Depth charged to an unprovable query: the forward-chaining saturation
// depth (maximum proof depth over all provable predicates), i.e. the number
// of derivation rounds needed before unprovability is certain. Throws if the
// query is provable.
int failure_depth(const Theory& theory, PredicateId query, const SolverOptions& options = {});

std::pair<bool, int> label_and_depth(const Theory& theory, PredicateId query,
                                     const SolverOptions& options = {});

}  // namespace simplelogic
