#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "simplelogic/features.hpp"
#include "simplelogic/sampler.hpp"
#include "simplelogic/textcodec.hpp"
#include "simplelogic/validate.hpp"

using namespace simplelogic;

namespace {

const Vocabulary& vocab() { return Vocabulary::builtin(); }

PredicateId id_of(const std::string& word) {
    const int id = vocab().lookup(word);
    REQUIRE(id >= 0);
    return static_cast<PredicateId>(id);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string block_path(int i) {
    return std::string(TEST_DATA_DIR) + "/blocks/block" + std::to_string(i) + ".txt";
}

Example sample_for(SamplerKind kind, std::uint64_t seed, std::uint64_t stream) {
    SamplerConfig config;
    config.seed = seed;
    RandomStream rng(seed, stream);
    return sample(kind, rng, config);
}

}  // namespace

TEST_CASE("fact and rule sentences render exactly") {
    Example ex;
    ex.theory.predicates = {id_of("shiny")};
    ex.theory.facts = {id_of("shiny")};
    ex.query = id_of("shiny");
    ex.label = true;
    ex.depth = 0;
    ex.sampler = SamplerKind::RP;

    const std::string ifthen = render_example(ex, TemplateProfile::IfThen, vocab());
    CHECK(ifthen.find("Alice shiny.") != std::string::npos);
    CHECK(ifthen.find("Query: Alice is shiny ?") != std::string::npos);

    const std::string compact = render_example(ex, TemplateProfile::Compact, vocab());
    CHECK(compact.find("Alice is shiny.") != std::string::npos);
    CHECK(compact.find("Query: Alice is shiny.") != std::string::npos);

    Example with_rule = ex;
    with_rule.theory.predicates = {id_of("hypocritical"), id_of("lonely"), id_of("messy"),
                                   id_of("shiny")};
    with_rule.theory.rules = {
        Rule({id_of("messy"), id_of("hypocritical"), id_of("lonely")}, id_of("shiny"))};
    CHECK(render_example(with_rule, TemplateProfile::IfThen, vocab())
              .find("If messy and hypocritical and lonely, then shiny.") != std::string::npos);
    CHECK(render_example(with_rule, TemplateProfile::Compact, vocab())
              .find("messy and hypocritical and lonely, shiny.") != std::string::npos);
}

TEST_CASE("single-fact zero-rule example renders one fact and the query") {
    Example ex;
    ex.theory.predicates = {id_of("happy")};
    ex.theory.facts = {id_of("happy")};
    ex.query = id_of("happy");
    ex.label = true;
    const std::string text = render_example(ex, TemplateProfile::Compact, vocab());
    CHECK(text.find("Alice is happy.") != std::string::npos);
    CHECK(text.find("Rules:\n") != std::string::npos);  // empty rules section
}

TEST_CASE("round trip is the identity for every sampler and profile") {
    for (SamplerKind kind : {SamplerKind::RP, SamplerKind::LP, SamplerKind::Uniform}) {
        for (TemplateProfile profile : {TemplateProfile::IfThen, TemplateProfile::Compact}) {
            for (int i = 0; i < 300; ++i) {
                const Example ex = sample_for(kind, 51, static_cast<std::uint64_t>(i));
                const Example back = parse_example(render_example(ex, profile, vocab()), profile,
                                                   vocab());
                CHECK(back == ex);
            }
        }
    }
}

TEST_CASE("rendering is injective over a batch") {
    std::set<std::string> seen;
    for (int i = 0; i < 500; ++i) {
        const Example ex = sample_for(SamplerKind::RP, 52, static_cast<std::uint64_t>(i));
        CHECK(seen.insert(render_example(ex, TemplateProfile::IfThen, vocab())).second);
    }
}

TEST_CASE("the four reference blocks parse and solve to their stated answers") {
    const std::pair<bool, int> expected[4] = {{true, 3}, {true, 6}, {false, 3}, {false, 6}};
    for (int i = 1; i <= 4; ++i) {
        const Example ex =
            parse_example(read_file(block_path(i)), TemplateProfile::IfThen, vocab());
        CHECK(ex.label == expected[i - 1].first);
        CHECK(ex.depth == expected[i - 1].second);
        const auto report = validate_example(ex);
        INFO("block ", i, ": ", report.to_string());
        CHECK(report.ok());
    }
}

TEST_CASE("block one details: fact count and the proof depth of dull") {
    const Example ex = parse_example(read_file(block_path(1)), TemplateProfile::IfThen, vocab());
    CHECK(fact_count(ex) == 3);
    CHECK(ex.sampler == SamplerKind::RP);
    const ProofDepthMap map = forward_chain(ex.theory);
    CHECK(map.depth_of(static_cast<PredicateId>(id_of("dull"))) == 3);
}

TEST_CASE("block three is a failure-depth-3 query") {
    const Example ex = parse_example(read_file(block_path(3)), TemplateProfile::IfThen, vocab());
    CHECK_FALSE(ex.label);
    CHECK(failure_depth(ex.theory, ex.query) == 3);
}

TEST_CASE("out-of-vocabulary words fail with a position") {
    const std::string text = "Rules: If zorply, then shiny.\nFacts: Alice shiny.\n"
                             "Query: Alice is shiny ?\n";
    try {
        parse_example(text, TemplateProfile::IfThen, vocab());
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(std::string(e.what()).find("zorply") != std::string::npos);
    }
}

TEST_CASE("malformed blocks report useful errors") {
    CHECK_THROWS_AS(parse_example("Rules:\nFacts:\n", TemplateProfile::IfThen, vocab()),
                    ParseError);  // no query
    CHECK_THROWS_AS(parse_example("Rules: If a then b.\nQuery: Alice is happy ?\n",
                                  TemplateProfile::IfThen, vocab()),
                    ParseError);  // missing ', then'
    CHECK_THROWS_AS(
        parse_example("Query: Alice is happy ?\nQuery: Alice is happy ?\n",
                      TemplateProfile::IfThen, vocab()),
        ParseError);  // duplicate section
    CHECK_THROWS_AS(parse_example("Rules: If happy and lucky and tame and calm, then shiny.\n"
                                  "Query: Alice is shiny ?\n",
                                  TemplateProfile::IfThen, vocab()),
                    ParseError);  // body too long
}

TEST_CASE("model input carries CLS and exactly two SEP markers") {
    for (int i = 0; i < 100; ++i) {
        const Example ex = sample_for(SamplerKind::RP, 53, static_cast<std::uint64_t>(i));
        const std::string text = render_model_input(ex, TemplateProfile::Compact, vocab());
        REQUIRE(text.rfind("[CLS]", 0) == 0);
        std::size_t seps = 0, pos = 0;
        while ((pos = text.find("[SEP]", pos)) != std::string::npos) {
            ++seps;
            pos += 5;
        }
        CHECK(seps == 2);
    }
}

TEST_CASE("zero-rule model input puts facts directly before the separator") {
    Example ex;
    ex.theory.predicates = {id_of("happy"), id_of("lucky")};
    ex.theory.facts = {id_of("happy")};
    ex.query = id_of("lucky");
    ex.label = false;
    const std::string text = render_model_input(ex, TemplateProfile::IfThen, vocab());
    CHECK(text.find("Alice happy. [SEP]") != std::string::npos);
}

TEST_CASE("model input round-trips the reasoning content") {
    for (SamplerKind kind : {SamplerKind::RP, SamplerKind::LP}) {
        for (TemplateProfile profile : {TemplateProfile::IfThen, TemplateProfile::Compact}) {
            for (int i = 0; i < 200; ++i) {
                const Example ex = sample_for(kind, 54, static_cast<std::uint64_t>(i));
                const Example back =
                    parse_model_input(render_model_input(ex, profile, vocab()), profile, vocab());
                CHECK(back.theory.facts == ex.theory.facts);
                CHECK(back.theory.rules == ex.theory.rules);
                CHECK(back.query == ex.query);
                CHECK(back.label == ex.label);
                CHECK(back.depth == ex.depth);
            }
        }
    }
}

TEST_CASE("corpus files round-trip block sequences") {
    std::vector<Example> batch;
    for (int i = 0; i < 25; ++i) {
        batch.push_back(sample_for(SamplerKind::LP, 55, static_cast<std::uint64_t>(i)));
    }
    const std::string corpus = render_corpus(batch, TemplateProfile::IfThen, vocab());
    const std::vector<Example> back = parse_corpus(corpus, TemplateProfile::IfThen, vocab());
    REQUIRE(back.size() == batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) CHECK(back[i] == batch[i]);
}

TEST_CASE("corpus errors carry absolute line numbers") {
    const std::string corpus =
        "Rules:\nFacts: Alice happy.\nQuery: Alice is happy ?\n"
        "\n"
        "Rules:\nFacts: Alice zorply.\nQuery: Alice is happy ?\n";
    try {
        parse_corpus(corpus, TemplateProfile::IfThen, vocab());
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 6);
    }
}
