#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace simplelogic {

// Index into the 150-word vocabulary.
using PredicateId = std::uint16_t;

constexpr int kVocabularySize = 150;
constexpr int kMinPredicates = 5;
constexpr int kMaxPredicates = 30;
constexpr int kMaxBodySize = 3;
// Storage capacity one above the legal bound, so validation can report
// an oversized body instead of the type making it unrepresentable.
constexpr int kRuleBodyCapacity = kMaxBodySize + 1;
constexpr int kRulesPerPredicate = 4;

enum class SamplerKind : std::uint8_t { RP, LP, LPStar, Uniform };

const char* to_string(SamplerKind kind);
SamplerKind sampler_kind_from_string(const std::string& name);

// Definite clause: body_1 ∧ ... ∧ body_n → head, 1 <= n <= 3.
// Body order is preserved; it is part of the rendered text.
struct Rule {
    std::array<PredicateId, kRuleBodyCapacity> body_storage{};
    std::uint8_t body_size = 0;
    PredicateId head = 0;

    Rule() = default;
    Rule(std::initializer_list<PredicateId> body, PredicateId head_pred) : head(head_pred) {
        for (PredicateId p : body) body_storage[body_size++] = p;
    }

    std::span<const PredicateId> body() const { return {body_storage.data(), body_size}; }

    void push_body(PredicateId p) { body_storage[body_size++] = p; }

    bool operator==(const Rule& other) const {
        return head == other.head && body_size == other.body_size &&
               std::equal(body().begin(), body().end(), other.body().begin());
    }
};

// Facts + rules over a predicate set. `predicates` is sorted and unique and
// may contain predicates that occur in no fact or rule. Fact order is
// preserved for rendering.
struct Theory {
    std::vector<PredicateId> predicates;
    std::vector<PredicateId> facts;
    std::vector<Rule> rules;

    bool operator==(const Theory&) const = default;
};

struct Example {
    Theory theory;
    PredicateId query = 0;
    bool label = false;
    std::int16_t depth = 0;
    SamplerKind sampler = SamplerKind::Uniform;

    bool operator==(const Example&) const = default;
};

struct DatasetMetadata {
    std::uint64_t seed = 0;
    SamplerKind sampler = SamplerKind::Uniform;
    int workers = 1;
    int depth_min = 0;
    int depth_max = 0;
    std::uint64_t per_depth = 0;
    bool balance_labels = false;
    bool permissive_facts = false;
    std::map<int, std::uint64_t> per_depth_counts;
    std::map<int, double> per_depth_acceptance;
    double wall_seconds = 0.0;
};

struct Dataset {
    std::vector<Example> examples;
    DatasetMetadata metadata;
};

// The fixed 150-adjective lexicon. PredicateId <-> word is a bijection.
class Vocabulary {
public:
    static const Vocabulary& builtin();
    static Vocabulary from_words(std::vector<std::string> words);
    static Vocabulary load(const std::string& path);

    int size() const { return static_cast<int>(words_.size()); }
    const std::string& word(PredicateId id) const { return words_[id]; }
    // Returns -1 if the word is not in the vocabulary.
    int lookup(const std::string& word) const;
    const std::vector<std::string>& words() const { return words_; }

private:
    std::vector<std::string> words_;
    std::map<std::string, PredicateId> index_;
};

}  // namespace simplelogic
