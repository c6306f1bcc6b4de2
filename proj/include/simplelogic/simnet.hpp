#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "simplelogic/rng.hpp"
#include "simplelogic/types.hpp"

namespace simplelogic {

// Near-orthogonal unit vectors identifying predicates inside the constructed
// network. Indices 0..149 are vocabulary predicates; 150 and 151 are the
// always-true and always-false dummy predicates.
class SignatureSet {
public:
    static constexpr int kDims = 63;
    static constexpr int kTrueDummy = kVocabularySize;
    static constexpr int kFalseDummy = kVocabularySize + 1;
    static constexpr int kFullCount = kVocabularySize + 2;

    explicit SignatureSet(std::vector<std::array<double, kDims>> vectors)
        : vectors_(std::move(vectors)) {}

    int count() const { return static_cast<int>(vectors_.size()); }
    const std::array<double, kDims>& of(int id) const { return vectors_[static_cast<std::size_t>(id)]; }

private:
    std::vector<std::array<double, kDims>> vectors_;
};

// Rejection-samples random unit vectors until all pairwise dot products stay
// below 0.5. Deterministic per stream. `trials_out`, when given, receives the
// number of draws each accepted vector took.
SignatureSet generate_signatures(RandomStream& rng, int count = SignatureSet::kFullCount,
                                 int max_trials = 10'000, std::vector<int>* trials_out = nullptr);

struct ConstructedModelConfig {
    int layer_count = 12;           // total layers; parsing + (n-2) reasoning + output
    double beta = default_beta();   // attention sharpness
    double key_dim = 64.0;          // softmax scale denominator is sqrt(key_dim)

    static double default_beta() { return 300.0 * std::log(10.0) + 1.0; }
    static double min_beta() { return 300.0 * std::log(10.0); }
    int reasoning_steps() const { return layer_count - 1; }
    int max_depth() const { return layer_count - 2; }
    void validate() const;
};

// Token states: one 768-wide vector per meaningful position, laid out as
// L_A || L_B || L_C || R || 0^512 with 63 signature dims + 1 value cell per
// 64-wide slot.
struct LayerState {
    static constexpr int kWidth = 768;
    static constexpr int kSlotWidth = 64;
    static constexpr int kValueOffset = SignatureSet::kDims;  // within a slot
    static constexpr int kSlotA = 0;
    static constexpr int kSlotB = 64;
    static constexpr int kSlotC = 128;
    static constexpr int kSlotR = 192;

    std::vector<double> data;
    std::size_t positions = 0;

    double* at(std::size_t pos) { return data.data() + pos * kWidth; }
    const double* at(std::size_t pos) const { return data.data() + pos * kWidth; }
    void resize(std::size_t n) {
        positions = n;
        data.assign(n * kWidth, 0.0);
    }
};

// Which signature ids the encoder placed in each slot; bookkeeping for trace
// extraction and audits, not used by the numeric forward pass.
struct SlotIds {
    std::int16_t a = 0, b = 0, c = 0, r = 0;
};

struct EncodedExample {
    LayerState state;
    std::vector<SlotIds> slots;
    std::size_t query_position = 0;
};

// Structural encoding of an example: [CLS] holds query->query, facts become
// true->fact, rules pad short bodies with the true dummy, every body
// occurrence emits an auxiliary false->predicate vector, and one anchor per
// dummy keeps the dummies broadcastable. Fact and dummy-true value cells
// start at 1; everything else starts at 0.
EncodedExample encode_input(const Example& example, const SignatureSet& signatures);

// Extrema of the attention broadcast, split by whether a slot's predicate had
// a true same-signature RHS when the step ran.
struct AttentionAudit {
    double min_true_broadcast = 1.0;
    double max_false_broadcast = 0.0;
    std::uint64_t true_slots = 0;
    std::uint64_t false_slots = 0;

    void merge(const AttentionAudit& other);
};

// One reasoning layer: three-head broadcast attention adds RHS truth into
// matching LHS value cells, then the position-wise two-layer network with
// rectified-linear activation rewrites R^v and zeroes the LHS values.
void reasoning_layer_step(EncodedExample& encoded, const ConstructedModelConfig& config,
                          AttentionAudit* audit = nullptr);

struct ModelRun {
    bool label = false;
    // proved[k] = predicates whose R value exceeded 0.5 after step k+1.
    std::vector<std::vector<PredicateId>> proved_per_step;
};

ModelRun run_constructed_model(const Example& example, const SignatureSet& signatures,
                               const ConstructedModelConfig& config, bool record_trace = false);

struct Disagreement {
    std::size_t index = 0;
    int depth = 0;
    bool solver_label = false;
    bool model_label = false;
    std::string example_jsonl;
};

struct AgreementReport {
    std::uint64_t total = 0;
    std::uint64_t correct = 0;
    std::map<int, std::pair<std::uint64_t, std::uint64_t>> per_depth;  // depth -> (total, correct)
    std::vector<Disagreement> disagreements;

    double accuracy() const {
        return total == 0 ? 1.0 : static_cast<double>(correct) / static_cast<double>(total);
    }
    std::string to_json() const;
};

// Runs the constructed model against the solver over a whole dataset.
// Throws if any example needs more than layer_count - 2 reasoning steps.
AgreementReport verify_agreement(const std::vector<Example>& examples,
                                 const SignatureSet& signatures,
                                 const ConstructedModelConfig& config, int workers = 1);

}  // namespace simplelogic
