#include "simplelogic/solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace simplelogic {

namespace {

constexpr int kUnproved = -1;

// Per-call scratch indexed by global predicate id. Reused across calls on the
// same thread; generation workloads call the solver millions of times.
struct Workspace {
    std::vector<int> depth;            // kUnproved or proof depth
    std::vector<int> epoch;            // lazy reset tag for `depth`
    std::vector<int> occurs_offset;    // CSR index: predicate -> rule slots
    std::vector<int> occurs;           // rule indices, one entry per body atom
    std::vector<int> csr_cursor;
    std::vector<int> remaining;        // unsatisfied body atoms per rule
    std::vector<PredicateId> frontier; // BFS queue, processed round by round
    int current_epoch = 0;

    void begin(int vocab_size) {
        if (depth.size() < static_cast<std::size_t>(vocab_size)) {
            depth.assign(static_cast<std::size_t>(vocab_size), kUnproved);
            epoch.assign(static_cast<std::size_t>(vocab_size), 0);
            current_epoch = 1;
        } else {
            ++current_epoch;
        }
    }

    bool proved(PredicateId p) const {
        return epoch[p] == current_epoch && depth[p] != kUnproved;
    }

    int depth_of(PredicateId p) const { return depth[p]; }

    void set_depth(PredicateId p, int d) {
        epoch[p] = current_epoch;
        depth[p] = d;
    }
};

thread_local Workspace tls_workspace;

int max_predicate_bound(const Theory& theory) {
    int bound = kVocabularySize;
    for (PredicateId p : theory.predicates) bound = std::max(bound, static_cast<int>(p) + 1);
    return bound;
}

// Round-based fixed point: depth-d predicates are exactly those first
// derivable once all depth-(d-1) knowledge is in, so the shallowest proof
// tree falls out of plain BFS ordering.
void run_forward_chain(const Theory& theory, Workspace& ws) {
    ws.begin(max_predicate_bound(theory));

    const int rule_count = static_cast<int>(theory.rules.size());
    ws.remaining.resize(static_cast<std::size_t>(rule_count));

    // CSR adjacency from body atom to rule index.
    auto& offsets = ws.occurs_offset;
    offsets.assign(ws.depth.size() + 1, 0);
    for (const Rule& r : theory.rules) {
        for (PredicateId b : r.body()) ++offsets[static_cast<std::size_t>(b) + 1];
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
    ws.occurs.resize(static_cast<std::size_t>(offsets.back()));
    ws.csr_cursor.assign(offsets.begin(), offsets.end() - 1);
    for (int r = 0; r < rule_count; ++r) {
        for (PredicateId b : theory.rules[static_cast<std::size_t>(r)].body()) {
            ws.occurs[static_cast<std::size_t>(ws.csr_cursor[b]++)] = r;
        }
    }
    for (int r = 0; r < rule_count; ++r) {
        ws.remaining[static_cast<std::size_t>(r)] =
            static_cast<int>(theory.rules[static_cast<std::size_t>(r)].body_size);
    }

    auto& frontier = ws.frontier;
    frontier.clear();
    for (PredicateId f : theory.facts) {
        if (!ws.proved(f)) {
            ws.set_depth(f, 0);
            frontier.push_back(f);
        }
    }

    std::size_t head_idx = 0;
    while (head_idx < frontier.size()) {
        const PredicateId p = frontier[head_idx++];
        const int d = ws.depth_of(p);
        for (int slot = offsets[p]; slot < offsets[static_cast<std::size_t>(p) + 1]; ++slot) {
            const int r = ws.occurs[static_cast<std::size_t>(slot)];
            if (--ws.remaining[static_cast<std::size_t>(r)] == 0) {
                const PredicateId h = theory.rules[static_cast<std::size_t>(r)].head;
                if (!ws.proved(h)) {
                    // Bodies complete in depth order, so the atom that just
                    // landed carries the max body depth.
                    ws.set_depth(h, d + 1);
                    frontier.push_back(h);
                }
            }
        }
    }
}

}  // namespace

ProofDepthMap::ProofDepthMap(std::vector<std::pair<PredicateId, int>> entries)
    : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end());
}

std::optional<int> ProofDepthMap::depth_of(PredicateId p) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const auto& e, PredicateId key) { return e.first < key; });
    if (it == entries_.end() || it->first != p) return std::nullopt;
    return it->second;
}

ProofDepthMap forward_chain(const Theory& theory) {
    Workspace& ws = tls_workspace;
    run_forward_chain(theory, ws);
    std::vector<std::pair<PredicateId, int>> entries;
    entries.reserve(ws.frontier.size());
    for (PredicateId p : ws.frontier) entries.emplace_back(p, ws.depth_of(p));
    return ProofDepthMap(std::move(entries));
}

int failure_depth(const Theory& theory, PredicateId query, const SolverOptions& options) {
    Workspace& ws = tls_workspace;
    run_forward_chain(theory, ws);
    if (ws.proved(query)) {
        throw std::invalid_argument("failure_depth: query is provable");
    }

    // Unprovability is only certain once forward chaining saturates, so a
    // failing query's depth is the saturation depth: the maximum proof depth
    // over everything provable. (This reproduces the reference corpus depths,
    // including theories whose unprovable predicates depend on each other
    // cyclically.)
    int saturation = 0;
    for (PredicateId p : ws.frontier) saturation = std::max(saturation, ws.depth_of(p));
    return std::min(saturation, options.failure_depth_cap);
}

std::pair<bool, int> label_and_depth(const Theory& theory, PredicateId query,
                                     const SolverOptions& options) {
    const ProofDepthMap map = forward_chain(theory);
    if (auto d = map.depth_of(query)) return {true, *d};
    return {false, failure_depth(theory, query, options)};
}

}  // namespace simplelogic
