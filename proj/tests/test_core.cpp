#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "simplelogic/jsonl.hpp"
#include "simplelogic/rng.hpp"
#include "simplelogic/sampler.hpp"
#include "simplelogic/validate.hpp"

using namespace simplelogic;

namespace {

// preds {0..5}, facts {0}, rules 0->1, 1&2->3; query 1 is provable at depth 1.
Example small_example() {
    Example ex;
    ex.theory.predicates = {0, 1, 2, 3, 4, 5};
    ex.theory.facts = {0};
    ex.theory.rules = {Rule({0}, 1), Rule({1, 2}, 3)};
    ex.query = 1;
    ex.label = true;
    ex.depth = 1;
    ex.sampler = SamplerKind::RP;
    return ex;
}

}  // namespace

TEST_CASE("builtin vocabulary is a 150-word bijection") {
    const Vocabulary& vocab = Vocabulary::builtin();
    REQUIRE(vocab.size() == kVocabularySize);
    for (int i = 0; i < vocab.size(); ++i) {
        CHECK(vocab.lookup(vocab.word(static_cast<PredicateId>(i))) == i);
    }
    CHECK(vocab.lookup("zorply") == -1);
}

TEST_CASE("vocabulary file round-trips against the builtin list") {
    const Vocabulary loaded = Vocabulary::load(std::string(SOURCE_DATA_DIR) + "/vocabulary.txt");
    CHECK(loaded.words() == Vocabulary::builtin().words());
}

TEST_CASE("well-formed example validates cleanly") {
    CHECK(validate_example(small_example()).ok());
}

TEST_CASE("oversized rule body is reported") {
    Example ex = small_example();
    Rule bad;
    bad.push_body(0);
    bad.push_body(1);
    bad.push_body(2);
    bad.push_body(4);
    bad.head = 5;
    ex.theory.rules.push_back(bad);
    const auto report = validate_example(ex);
    CHECK_FALSE(report.ok());
    CHECK(report.has("body-size"));
}

TEST_CASE("flipped label is reported as a mismatch") {
    Example ex = small_example();
    ex.label = !ex.label;
    const auto report = validate_example(ex);
    CHECK_FALSE(report.ok());
    CHECK(report.has("label-mismatch"));
}

TEST_CASE("wrong depth is reported as a mismatch") {
    Example ex = small_example();
    ex.depth = 3;
    CHECK(validate_example(ex).has("depth-mismatch"));
}

TEST_CASE("head inside the body is reported") {
    Example ex = small_example();
    ex.theory.rules.push_back(Rule({1, 3}, 3));
    CHECK(validate_example(ex).has("head-in-body"));
}

TEST_CASE("zero facts is permissive-only") {
    Example ex = small_example();
    ex.theory.facts.clear();
    ex.query = 2;
    ex.label = false;
    ex.depth = 0;
    CHECK(validate_example(ex).has("fact-count-range"));
    ValidateOptions permissive;
    permissive.permissive_facts = true;
    CHECK(validate_example(ex, permissive).ok());
}

TEST_CASE("predicate count bounds are enforced") {
    Example ex = small_example();
    ex.theory.predicates = {0, 1, 2, 3};  // only 4
    CHECK(validate_example(ex).has("pred-count-range"));
}

TEST_CASE("jsonl round-trips an example exactly") {
    const Example ex = small_example();
    const std::string line = example_to_jsonl(ex);
    CHECK(line ==
          R"({"preds":[0,1,2,3,4,5],"facts":[0],"rules":[[[0],1],[[1,2],3]],"query":1,"label":1,)"
          R"("depth":1,"sampler":"RP"})");
    CHECK(example_from_jsonl(line) == ex);
}

TEST_CASE("jsonl round-trips random sampled examples for every sampler tag") {
    SamplerConfig config;
    config.lp_star_multiplicity = 3;
    for (SamplerKind kind :
         {SamplerKind::RP, SamplerKind::LP, SamplerKind::LPStar, SamplerKind::Uniform}) {
        for (int i = 0; i < 50; ++i) {
            RandomStream rng(99, static_cast<std::uint64_t>(i));
            const Example ex = sample(kind, rng, config);
            CHECK(example_from_jsonl(example_to_jsonl(ex)) == ex);
        }
    }
}

TEST_CASE("jsonl rejects malformed predicate ids") {
    CHECK_THROWS(example_from_jsonl(
        R"({"preds":[900],"facts":[],"rules":[],"query":900,"label":0,"depth":0,"sampler":"RP"})"));
}
