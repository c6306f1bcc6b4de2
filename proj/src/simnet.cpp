#include "simplelogic/simnet.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "simplelogic/jsonl.hpp"
#include "simplelogic/parallel.hpp"
#include "simplelogic/solver.hpp"

namespace simplelogic {

namespace {

constexpr int kDims = SignatureSet::kDims;

double dot63(const double* a, const double* b) {
    double s = 0.0;
    for (int i = 0; i < kDims; ++i) s += a[i] * b[i];
    return s;
}

void place_slot(double* position, int slot_offset, const SignatureSet& signatures, int sig_id,
                double value) {
    const auto& sig = signatures.of(sig_id);
    std::copy(sig.begin(), sig.end(), position + slot_offset);
    position[slot_offset + LayerState::kValueOffset] = value;
}

// Exponents this far below the running maximum are beneath double rounding
// noise for any softmax in this model.
constexpr double kExpCutoff = -50.0;

}  // namespace

SignatureSet generate_signatures(RandomStream& rng, int count, int max_trials,
                                 std::vector<int>* trials_out) {
    if (count < 1 || count > SignatureSet::kFullCount) {
        throw std::invalid_argument("signature count must be in [1, 152]");
    }
    std::vector<std::array<double, kDims>> vectors;
    vectors.reserve(static_cast<std::size_t>(count));
    if (trials_out) trials_out->clear();

    while (static_cast<int>(vectors.size()) < count) {
        bool accepted = false;
        for (int trial = 1; trial <= max_trials; ++trial) {
            std::array<double, kDims> v;
            double norm2 = 0.0;
            for (double& x : v) {
                x = rng.normal();
                norm2 += x * x;
            }
            if (norm2 == 0.0) continue;
            const double inv = 1.0 / std::sqrt(norm2);
            for (double& x : v) x *= inv;

            bool ok = true;
            for (const auto& u : vectors) {
                if (dot63(u.data(), v.data()) >= 0.5) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                vectors.push_back(v);
                if (trials_out) trials_out->push_back(trial);
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            throw std::runtime_error("generate_signatures: exceeded " +
                                     std::to_string(max_trials) + " trials for vector " +
                                     std::to_string(vectors.size()));
        }
    }
    return SignatureSet(std::move(vectors));
}

void ConstructedModelConfig::validate() const {
    if (!(beta > min_beta())) {
        throw std::invalid_argument("beta must exceed 300 ln 10 (~690.776)");
    }
    if (layer_count < 3) throw std::invalid_argument("layer_count must be at least 3");
    if (key_dim <= 0.0) throw std::invalid_argument("key_dim must be positive");
}

EncodedExample encode_input(const Example& example, const SignatureSet& signatures) {
    int max_id = 0;
    for (PredicateId p : example.theory.predicates) max_id = std::max(max_id, static_cast<int>(p));
    if (signatures.count() <= std::max(max_id, SignatureSet::kFalseDummy)) {
        throw std::invalid_argument("signature set does not cover the example's predicates");
    }

    std::size_t body_total = 0;
    for (const Rule& r : example.theory.rules) body_total += r.body_size;
    const std::size_t count =
        1 + example.theory.facts.size() + example.theory.rules.size() + body_total + 2;

    EncodedExample encoded;
    encoded.state.resize(count);
    encoded.slots.resize(count);
    encoded.query_position = 0;

    constexpr int kTop = SignatureSet::kTrueDummy;
    constexpr int kBot = SignatureSet::kFalseDummy;
    const std::array<int, 3> slot_offsets = {LayerState::kSlotA, LayerState::kSlotB,
                                             LayerState::kSlotC};

    std::size_t pos = 0;
    auto emit = [&](std::array<int, 3> body, std::array<double, 3> body_values, int head) {
        double* row = encoded.state.at(pos);
        for (int s = 0; s < 3; ++s) place_slot(row, slot_offsets[static_cast<std::size_t>(s)],
                                               signatures, body[static_cast<std::size_t>(s)],
                                               body_values[static_cast<std::size_t>(s)]);
        place_slot(row, LayerState::kSlotR, signatures, head, 0.0);
        encoded.slots[pos] = {static_cast<std::int16_t>(body[0]), static_cast<std::int16_t>(body[1]),
                              static_cast<std::int16_t>(body[2]), static_cast<std::int16_t>(head)};
        ++pos;
    };

    // [CLS]: query -> query, padded with the true dummy.
    emit({example.query, kTop, kTop}, {0.0, 1.0, 1.0}, example.query);
    // Facts as true -> fact; a fact is given rather than derived, so its
    // truth cell starts at 1 and the first reasoning step can already use it.
    for (PredicateId f : example.theory.facts) {
        emit({kTop, kTop, kTop}, {1.0, 1.0, 1.0}, f);
        encoded.state.at(pos - 1)[LayerState::kSlotR + LayerState::kValueOffset] = 1.0;
    }
    // Rules, short bodies padded with the true dummy.
    for (const Rule& r : example.theory.rules) {
        std::array<int, 3> body = {kTop, kTop, kTop};
        std::array<double, 3> values = {1.0, 1.0, 1.0};
        for (std::size_t i = 0; i < r.body_size; ++i) {
            body[i] = r.body_storage[i];
            values[i] = 0.0;
        }
        emit(body, values, r.head);
    }
    // Auxiliary false -> p per body occurrence, so every left-hand-side
    // predicate occurs as some RHS.
    for (const Rule& r : example.theory.rules) {
        for (PredicateId b : r.body()) {
            emit({kBot, kTop, kTop}, {0.0, 1.0, 1.0}, b);
        }
    }
    // Anchors giving both dummies a broadcast source: the true anchor refires
    // every layer, the false anchor never fires.
    emit({kTop, kTop, kTop}, {1.0, 1.0, 1.0}, kTop);
    emit({kBot, kBot, kBot}, {0.0, 0.0, 0.0}, kBot);

    return encoded;
}

void AttentionAudit::merge(const AttentionAudit& other) {
    min_true_broadcast = std::min(min_true_broadcast, other.min_true_broadcast);
    max_false_broadcast = std::max(max_false_broadcast, other.max_false_broadcast);
    true_slots += other.true_slots;
    false_slots += other.false_slots;
}

void reasoning_layer_step(EncodedExample& encoded, const ConstructedModelConfig& config,
                          AttentionAudit* audit) {
    config.validate();
    LayerState& state = encoded.state;
    const std::size_t n = state.positions;
    const double scale = config.beta / std::sqrt(config.key_dim);

    // Whether each signature id currently has a true RHS; only consulted for
    // the audit classification.
    std::array<bool, SignatureSet::kFullCount> truly_broadcast{};
    if (audit) {
        for (std::size_t j = 0; j < n; ++j) {
            if (state.at(j)[LayerState::kSlotR + LayerState::kValueOffset] > 0.5) {
                truly_broadcast[static_cast<std::size_t>(encoded.slots[j].r)] = true;
            }
        }
    }

    std::vector<double> logits(n);
    const std::array<int, 3> slot_offsets = {LayerState::kSlotA, LayerState::kSlotB,
                                             LayerState::kSlotC};

    // Queries use only L signatures and keys/values use only R slots, so
    // adding the attention output into L value cells as we go cannot disturb
    // later scores.
    for (int head = 0; head < 3; ++head) {
        const int offset = slot_offsets[static_cast<std::size_t>(head)];
        for (std::size_t i = 0; i < n; ++i) {
            const double* q = state.at(i) + offset;
            double max_logit = -1e300;
            for (std::size_t j = 0; j < n; ++j) {
                const double* r = state.at(j) + LayerState::kSlotR;
                const double logit =
                    scale * (dot63(q, r) + 0.25 * r[LayerState::kValueOffset]);
                logits[j] = logit;
                max_logit = std::max(max_logit, logit);
            }
            double weight_sum = 0.0;
            double value_sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double shifted = logits[j] - max_logit;
                if (shifted < kExpCutoff) continue;
                const double w = std::exp(shifted);
                weight_sum += w;
                value_sum += w * state.at(j)[LayerState::kSlotR + LayerState::kValueOffset];
            }
            const double broadcast = value_sum / weight_sum;
            state.at(i)[offset + LayerState::kValueOffset] += broadcast;

            if (audit) {
                const std::int16_t sid = head == 0   ? encoded.slots[i].a
                                         : head == 1 ? encoded.slots[i].b
                                                     : encoded.slots[i].c;
                if (truly_broadcast[static_cast<std::size_t>(sid)]) {
                    audit->min_true_broadcast = std::min(audit->min_true_broadcast, broadcast);
                    ++audit->true_slots;
                } else {
                    audit->max_false_broadcast = std::max(audit->max_false_broadcast, broadcast);
                    ++audit->false_slots;
                }
            }
        }
    }

    // Local inference: R^v = 10[relu(sum - 2.3) - relu(sum - 2.4)], then the
    // LHS values reset for the next round.
    for (std::size_t i = 0; i < n; ++i) {
        double* row = state.at(i);
        const double sum = row[LayerState::kSlotA + LayerState::kValueOffset] +
                           row[LayerState::kSlotB + LayerState::kValueOffset] +
                           row[LayerState::kSlotC + LayerState::kValueOffset];
        const double relu_lo = std::max(0.0, sum - 2.3);
        const double relu_hi = std::max(0.0, sum - 2.4);
        row[LayerState::kSlotR + LayerState::kValueOffset] = 10.0 * (relu_lo - relu_hi);
        row[LayerState::kSlotA + LayerState::kValueOffset] = 0.0;
        row[LayerState::kSlotB + LayerState::kValueOffset] = 0.0;
        row[LayerState::kSlotC + LayerState::kValueOffset] = 0.0;
    }
}

ModelRun run_constructed_model(const Example& example, const SignatureSet& signatures,
                               const ConstructedModelConfig& config, bool record_trace) {
    config.validate();
    EncodedExample encoded = encode_input(example, signatures);

    ModelRun run;
    const int steps = config.reasoning_steps();
    for (int step = 0; step < steps; ++step) {
        reasoning_layer_step(encoded, config);
        if (record_trace) {
            std::vector<PredicateId> proved;
            for (std::size_t j = 0; j < encoded.state.positions; ++j) {
                const std::int16_t r = encoded.slots[j].r;
                if (r < kVocabularySize &&
                    encoded.state.at(j)[LayerState::kSlotR + LayerState::kValueOffset] > 0.5) {
                    proved.push_back(static_cast<PredicateId>(r));
                }
            }
            std::sort(proved.begin(), proved.end());
            proved.erase(std::unique(proved.begin(), proved.end()), proved.end());
            run.proved_per_step.push_back(std::move(proved));
        }
    }

    run.label = encoded.state.at(encoded.query_position)[LayerState::kSlotR +
                                                         LayerState::kValueOffset] > 0.5;
    return run;
}

AgreementReport verify_agreement(const std::vector<Example>& examples,
                                 const SignatureSet& signatures,
                                 const ConstructedModelConfig& config, int workers) {
    config.validate();

    struct PerExample {
        bool solver_label;
        bool model_label;
        int depth;
    };
    std::vector<PerExample> rows(examples.size());

    std::atomic<std::size_t> depth_violation{examples.size()};
    parallel_for_range(examples.size(), workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto [label, depth] = label_and_depth(examples[i].theory, examples[i].query);
            if (depth > config.max_depth()) {
                std::size_t expected = examples.size();
                depth_violation.compare_exchange_strong(expected, i);
                return;
            }
            const ModelRun run = run_constructed_model(examples[i], signatures, config);
            rows[i] = {label, run.label, depth};
        }
    });
    if (depth_violation.load() != examples.size()) {
        const std::size_t i = depth_violation.load();
        const auto [label, depth] = label_and_depth(examples[i].theory, examples[i].query);
        throw std::invalid_argument(
            "verify_agreement: example " + std::to_string(i) + " needs depth " +
            std::to_string(depth) + " but the " + std::to_string(config.layer_count) +
            "-layer model only supports depth <= " + std::to_string(config.max_depth()));
    }

    AgreementReport report;
    report.total = examples.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto& [depth_total, depth_correct] = report.per_depth[rows[i].depth];
        ++depth_total;
        const bool ok = rows[i].solver_label == rows[i].model_label;
        if (ok) {
            ++report.correct;
            ++depth_correct;
        } else {
            report.disagreements.push_back({i, rows[i].depth, rows[i].solver_label,
                                            rows[i].model_label,
                                            example_to_jsonl(examples[i])});
        }
    }
    return report;
}

std::string AgreementReport::to_json() const {
    std::ostringstream out;
    out.precision(9);
    out << "{\"total\":" << total << ",\"correct\":" << correct << ",\"accuracy\":" << accuracy()
        << ",\"per_depth\":{";
    bool first = true;
    for (const auto& [depth, counts] : per_depth) {
        if (!first) out << ',';
        first = false;
        out << '"' << depth << "\":{\"total\":" << counts.first
            << ",\"correct\":" << counts.second << '}';
    }
    out << "},\"disagreements\":[";
    for (std::size_t i = 0; i < disagreements.size(); ++i) {
        if (i) out << ',';
        const Disagreement& d = disagreements[i];
        out << "{\"index\":" << d.index << ",\"depth\":" << d.depth
            << ",\"solver_label\":" << (d.solver_label ? 1 : 0)
            << ",\"model_label\":" << (d.model_label ? 1 : 0) << ",\"example\":" << d.example_jsonl
            << '}';
    }
    out << "]}";
    return out.str();
}

}  // namespace simplelogic
