#include "simplelogic/sampler.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <stdexcept>

#include "simplelogic/parallel.hpp"

namespace simplelogic {

namespace {

std::vector<PredicateId> sample_predicate_set(RandomStream& rng, int count) {
    std::vector<int> picked = rng.sample_indices(kVocabularySize, count);
    std::vector<PredicateId> preds(picked.begin(), picked.end());
    std::sort(preds.begin(), preds.end());
    return preds;
}

template <typename T>
std::vector<T> sample_subset(RandomStream& rng, const std::vector<T>& pool, int k) {
    std::vector<int> picked = rng.sample_indices(static_cast<int>(pool.size()), k);
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i : picked) out.push_back(pool[static_cast<std::size_t>(i)]);
    return out;
}

template <typename T>
const T& sample_one(RandomStream& rng, const std::vector<T>& pool) {
    return pool[rng.uniform_below(static_cast<std::uint32_t>(pool.size()))];
}

void finish_with_solver(Example& ex, const SamplerConfig& config) {
    const auto [label, depth] = label_and_depth(ex.theory, ex.query, config.solver);
    ex.label = label;
    ex.depth = static_cast<std::int16_t>(depth);
}

Example sample_lp_impl(RandomStream& rng, int multiplicity, const SamplerConfig& config) {
    if (multiplicity < 1) throw std::invalid_argument("lp multiplicity must be >= 1");

    for (;;) {
        Example ex;
        ex.sampler = multiplicity > 1 ? SamplerKind::LPStar : SamplerKind::LP;

        const int pred_num = rng.uniform_int(kMinPredicates, kMaxPredicates);
        ex.theory.predicates = sample_predicate_set(rng, pred_num);
        const auto& preds = ex.theory.predicates;
        const int rule_num = rng.uniform_int(0, kRulesPerPredicate * pred_num);
        const int max_rules = kRulesPerPredicate * pred_num;

        // Group predicates into l non-empty layers, uniformly over
        // assignments conditioned on no layer being empty.
        const int layer_count = rng.uniform_int(1, std::max(1, pred_num / 2));
        std::vector<std::vector<PredicateId>> layers;
        for (;;) {
            layers.assign(static_cast<std::size_t>(layer_count), {});
            for (PredicateId p : preds) {
                layers[rng.uniform_below(static_cast<std::uint32_t>(layer_count))].push_back(p);
            }
            if (std::none_of(layers.begin(), layers.end(),
                             [](const auto& l) { return l.empty(); })) {
                break;
            }
        }

        // Assign labels layer by layer; every predicate above layer 1 gets
        // supporting rule(s) drawn from same-label predecessors.
        std::vector<char> truth(kVocabularySize, 0);
        auto& rules = ex.theory.rules;
        std::vector<PredicateId> candidates;
        for (std::size_t i = 0; i < layers.size(); ++i) {
            for (PredicateId p : layers[i]) {
                bool q = rng.coin();
                if (i > 0) {
                    candidates.clear();
                    for (PredicateId c : layers[i - 1]) {
                        if ((truth[c] != 0) == q) candidates.push_back(c);
                    }
                    if (candidates.empty() && q) {
                        // No true predecessor can support p; demote it.
                        q = false;
                        for (PredicateId c : layers[i - 1]) candidates.push_back(c);
                    }
                    if (!candidates.empty()) {
                        const int repeats = q ? multiplicity : 1;
                        for (int rep = 0; rep < repeats; ++rep) {
                            if (static_cast<int>(rules.size()) >= max_rules) break;
                            const int k = std::min(rng.uniform_int(1, kMaxBodySize),
                                                   static_cast<int>(candidates.size()));
                            Rule rule;
                            for (PredicateId b : sample_subset(rng, candidates, k)) {
                                rule.push_body(b);
                            }
                            rule.head = p;
                            rules.push_back(rule);
                        }
                    }
                }
                truth[p] = q ? 1 : 0;
            }
        }

        // Fill the remaining quota with random rules, rejecting any that
        // would prove a false predicate from all-true premises.
        while (static_cast<int>(rules.size()) < rule_num) {
            const int body_num = rng.uniform_int(1, kMaxBodySize);
            std::vector<PredicateId> body = sample_subset(rng, preds, body_num);
            const PredicateId head = sample_one(rng, preds);
            if (std::find(body.begin(), body.end(), head) != body.end()) continue;
            if (truth[head] == 0 &&
                std::all_of(body.begin(), body.end(),
                            [&](PredicateId b) { return truth[b] != 0; })) {
                continue;
            }
            Rule rule;
            for (PredicateId b : body) rule.push_body(b);
            rule.head = head;
            rules.push_back(rule);
        }

        for (PredicateId p : layers[0]) {
            if (truth[p]) ex.theory.facts.push_back(p);
        }
        if (ex.theory.facts.empty() && !config.permissive_facts) continue;

        ex.query = sample_one(rng, preds);
        finish_with_solver(ex, config);
        assert(ex.label == (truth[ex.query] != 0));
        return ex;
    }
}

}  // namespace

Example sample_rp(RandomStream& rng, const SamplerConfig& config) {
    Example ex;
    ex.sampler = SamplerKind::RP;

    const int pred_num = rng.uniform_int(kMinPredicates, kMaxPredicates);
    ex.theory.predicates = sample_predicate_set(rng, pred_num);
    const auto& preds = ex.theory.predicates;

    const int rule_num = rng.uniform_int(0, kRulesPerPredicate * pred_num);
    while (static_cast<int>(ex.theory.rules.size()) < rule_num) {
        const int body_num = rng.uniform_int(1, kMaxBodySize);
        std::vector<PredicateId> body = sample_subset(rng, preds, body_num);
        const PredicateId head = sample_one(rng, preds);
        if (std::find(body.begin(), body.end(), head) != body.end()) continue;
        Rule rule;
        for (PredicateId b : body) rule.push_body(b);
        rule.head = head;
        ex.theory.rules.push_back(rule);
    }

    const int fact_min = config.permissive_facts ? 0 : 1;
    const int fact_num = rng.uniform_int(fact_min, pred_num);
    ex.theory.facts = sample_subset(rng, preds, fact_num);

    ex.query = sample_one(rng, preds);
    finish_with_solver(ex, config);
    return ex;
}

Example sample_lp(RandomStream& rng, const SamplerConfig& config) {
    return sample_lp_impl(rng, 1, config);
}

Example sample_lp_star(RandomStream& rng, int multiplicity, const SamplerConfig& config) {
    return sample_lp_impl(rng, multiplicity, config);
}

Example sample_uniform_conditioned(RandomStream& rng, const SamplerConfig& config, int pred_count,
                                   int rule_count) {
    if (pred_count < kMinPredicates || pred_count > kMaxPredicates) {
        throw std::invalid_argument("pred_count must be in [5, 30]");
    }
    if (rule_count < 0 || rule_count > kRulesPerPredicate * pred_count) {
        throw std::invalid_argument("rule_count must be in [0, 4 * pred_count]");
    }

    Example ex;
    ex.sampler = SamplerKind::Uniform;
    ex.theory.predicates = sample_predicate_set(rng, pred_count);
    const auto& preds = ex.theory.predicates;

    for (int r = 0; r < rule_count; ++r) {
        const int body_num = rng.uniform_int(1, kMaxBodySize);
        std::vector<PredicateId> body = sample_subset(rng, preds, body_num);
        Rule rule;
        for (PredicateId b : body) rule.push_body(b);
        do {
            rule.head = sample_one(rng, preds);
        } while (std::find(body.begin(), body.end(), rule.head) != body.end());
        ex.theory.rules.push_back(rule);
    }

    // Uniform over fact subsets (conditioned non-empty unless permissive).
    for (;;) {
        ex.theory.facts.clear();
        for (PredicateId p : preds) {
            if (rng.coin()) ex.theory.facts.push_back(p);
        }
        if (!ex.theory.facts.empty() || config.permissive_facts) break;
    }

    ex.query = sample_one(rng, preds);
    finish_with_solver(ex, config);
    return ex;
}

Example sample(SamplerKind kind, RandomStream& rng, const SamplerConfig& config) {
    switch (kind) {
        case SamplerKind::RP: return sample_rp(rng, config);
        case SamplerKind::LP: return sample_lp(rng, config);
        case SamplerKind::LPStar: return sample_lp_star(rng, config.lp_star_multiplicity, config);
        case SamplerKind::Uniform: return sample_uniform_conditioned(rng, config);
    }
    throw std::invalid_argument("unknown sampler kind");
}

Dataset generate_stratified(const StratifiedSpec& spec, const SamplerConfig& config) {
    if (spec.per_depth < 1) throw std::invalid_argument("per_depth must be >= 1");
    if (spec.depth_min < 0 || spec.depth_max < spec.depth_min) {
        throw std::invalid_argument("invalid depth range");
    }
    if (spec.workers < 1) throw std::invalid_argument("workers must be >= 1");

    const auto start = std::chrono::steady_clock::now();
    const int n_depths = spec.depth_max - spec.depth_min + 1;
    const std::uint64_t pos_quota = spec.balance_labels ? (spec.per_depth + 1) / 2 : 0;
    const std::uint64_t neg_quota = spec.balance_labels ? spec.per_depth / 2 : 0;

    struct Bucket {
        std::vector<Example> examples;
        std::uint64_t positives = 0;
        bool full(std::uint64_t per_depth) const { return examples.size() >= per_depth; }
    };
    std::vector<Bucket> buckets(static_cast<std::size_t>(n_depths));

    auto all_full = [&] {
        return std::all_of(buckets.begin(), buckets.end(),
                           [&](const Bucket& b) { return b.full(spec.per_depth); });
    };

    std::vector<Example> batch(static_cast<std::size_t>(spec.batch_size));
    std::uint64_t next_candidate = 0;
    while (!all_full()) {
        const std::uint64_t base = next_candidate;
        parallel_for_range(batch.size(), spec.workers, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                RandomStream rng(config.seed, base + i);
                batch[i] = sample(spec.sampler, rng, config);
            }
        });
        next_candidate += batch.size();

        for (const Example& ex : batch) {
            const int d = ex.depth;
            if (d < spec.depth_min || d > spec.depth_max) continue;
            Bucket& bucket = buckets[static_cast<std::size_t>(d - spec.depth_min)];
            if (bucket.full(spec.per_depth)) continue;
            if (spec.balance_labels) {
                const std::uint64_t negatives = bucket.examples.size() - bucket.positives;
                if (ex.label && bucket.positives >= pos_quota) continue;
                if (!ex.label && negatives >= neg_quota) continue;
            }
            bucket.positives += ex.label ? 1 : 0;
            bucket.examples.push_back(ex);
            if (all_full()) break;
        }

        if (next_candidate >= spec.warmup_candidates) {
            for (int d = 0; d < n_depths; ++d) {
                const Bucket& bucket = buckets[static_cast<std::size_t>(d)];
                if (bucket.full(spec.per_depth)) continue;
                const double rate =
                    static_cast<double>(bucket.examples.size()) / static_cast<double>(next_candidate);
                if (rate < spec.acceptance_floor) {
                    throw std::runtime_error(
                        "generate_stratified: acceptance rate for depth " +
                        std::to_string(d + spec.depth_min) + " fell below the floor (" +
                        std::to_string(rate) + " after " + std::to_string(next_candidate) +
                        " candidates)");
                }
            }
        }
    }

    Dataset dataset;
    dataset.metadata.seed = config.seed;
    dataset.metadata.sampler = spec.sampler;
    dataset.metadata.workers = spec.workers;
    dataset.metadata.depth_min = spec.depth_min;
    dataset.metadata.depth_max = spec.depth_max;
    dataset.metadata.per_depth = spec.per_depth;
    dataset.metadata.balance_labels = spec.balance_labels;
    dataset.metadata.permissive_facts = config.permissive_facts;
    dataset.examples.reserve(static_cast<std::size_t>(n_depths) * spec.per_depth);
    for (int d = 0; d < n_depths; ++d) {
        Bucket& bucket = buckets[static_cast<std::size_t>(d)];
        dataset.metadata.per_depth_counts[d + spec.depth_min] = bucket.examples.size();
        dataset.metadata.per_depth_acceptance[d + spec.depth_min] =
            static_cast<double>(bucket.examples.size()) / static_cast<double>(next_candidate);
        std::move(bucket.examples.begin(), bucket.examples.end(),
                  std::back_inserter(dataset.examples));
        bucket.examples.clear();
    }
    dataset.metadata.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return dataset;
}

}  // namespace simplelogic
