#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "simplelogic/balance.hpp"
#include "simplelogic/features.hpp"
#include "simplelogic/jsonl.hpp"
#include "simplelogic/manifest.hpp"
#include "simplelogic/oracle.hpp"
#include "simplelogic/sampler.hpp"
#include "simplelogic/simnet.hpp"
#include "simplelogic/textcodec.hpp"
#include "simplelogic/validate.hpp"

namespace py = pybind11;
using namespace simplelogic;

namespace {

Rule make_rule(const std::vector<PredicateId>& body, PredicateId head) {
    if (body.empty() || body.size() > kRuleBodyCapacity) {
        throw std::invalid_argument("rule body must hold 1..4 predicates");
    }
    Rule r;
    for (PredicateId b : body) r.push_body(b);
    r.head = head;
    return r;
}

SamplerConfig make_config(std::uint64_t seed, bool permissive_facts, int lp_multiplicity) {
    SamplerConfig config;
    config.seed = seed;
    config.permissive_facts = permissive_facts;
    config.lp_star_multiplicity = lp_multiplicity;
    return config;
}

}  // namespace

PYBIND11_MODULE(_simplelogic, m) {
    m.doc() = "Propositional forward-chaining dataset toolkit (C++ core)";

    py::enum_<SamplerKind>(m, "SamplerKind")
        .value("RP", SamplerKind::RP)
        .value("LP", SamplerKind::LP)
        .value("LPSTAR", SamplerKind::LPStar)
        .value("UNIFORM", SamplerKind::Uniform);

    py::class_<Rule>(m, "Rule")
        .def(py::init(&make_rule), py::arg("body"), py::arg("head"))
        .def_property_readonly(
            "body",
            [](const Rule& r) {
                return std::vector<PredicateId>(r.body().begin(), r.body().end());
            })
        .def_readonly("head", &Rule::head)
        .def("__eq__", [](const Rule& a, const Rule& b) { return a == b; })
        .def("__repr__", [](const Rule& r) {
            std::string s = "Rule([";
            for (std::size_t i = 0; i < r.body_size; ++i) {
                if (i) s += ", ";
                s += std::to_string(r.body_storage[i]);
            }
            return s + "] -> " + std::to_string(r.head) + ")";
        });

    py::class_<Theory>(m, "Theory")
        .def(py::init([](std::vector<PredicateId> predicates, std::vector<PredicateId> facts,
                         std::vector<Rule> rules) {
                 Theory t;
                 t.predicates = std::move(predicates);
                 std::sort(t.predicates.begin(), t.predicates.end());
                 t.facts = std::move(facts);
                 t.rules = std::move(rules);
                 return t;
             }),
             py::arg("predicates"), py::arg("facts"), py::arg("rules"))
        .def_readonly("predicates", &Theory::predicates)
        .def_readonly("facts", &Theory::facts)
        .def_readonly("rules", &Theory::rules);

    py::class_<Example>(m, "Example")
        .def_readonly("theory", &Example::theory)
        .def_readonly("query", &Example::query)
        .def_readonly("label", &Example::label)
        .def_readonly("depth", &Example::depth)
        .def_readonly("sampler", &Example::sampler)
        .def("to_jsonl", &example_to_jsonl)
        .def_static("from_jsonl", &example_from_jsonl)
        .def("__eq__", [](const Example& a, const Example& b) { return a == b; });

    m.def(
        "label_and_depth",
        [](const Theory& t, PredicateId query) { return label_and_depth(t, query); },
        py::arg("theory"), py::arg("query"),
        "Forward-chaining label plus proof/failure depth for a query");
    m.def(
        "brute_force_oracle",
        [](const Theory& t, PredicateId query, int depth_cap) {
            const OracleResult r = brute_force_oracle(t, query, {.depth_cap = depth_cap});
            return py::make_tuple(r.label, r.depth, r.cap_hit);
        },
        py::arg("theory"), py::arg("query"), py::arg("depth_cap") = 10);

    m.def(
        "validate_example",
        [](const Example& ex, bool permissive_facts) {
            ValidateOptions options;
            options.permissive_facts = permissive_facts;
            std::vector<std::string> codes;
            for (const Violation& v : validate_example(ex, options).violations) {
                codes.push_back(v.code + ": " + v.message);
            }
            return codes;
        },
        py::arg("example"), py::arg("permissive_facts") = false,
        "Constraint violations; empty when the example is valid");

    m.def(
        "sample",
        [](const std::string& kind, std::uint64_t seed, std::uint64_t stream,
           bool permissive_facts, int lp_multiplicity) {
            RandomStream rng(seed, stream);
            return sample(sampler_kind_from_string(kind), rng,
                          make_config(seed, permissive_facts, lp_multiplicity));
        },
        py::arg("kind"), py::arg("seed"), py::arg("stream") = 0,
        py::arg("permissive_facts") = false, py::arg("lp_multiplicity") = 2,
        "One example from the rp|lp|lpstar|uniform sampler");

    m.def(
        "generate_stratified",
        [](const std::string& kind, std::uint64_t per_depth, int depth_min, int depth_max,
           std::uint64_t seed, int workers, bool balance_labels, bool permissive_facts,
           int lp_multiplicity) {
            StratifiedSpec spec;
            spec.sampler = sampler_kind_from_string(kind);
            spec.per_depth = per_depth;
            spec.depth_min = depth_min;
            spec.depth_max = depth_max;
            spec.workers = workers;
            spec.balance_labels = balance_labels;
            return generate_stratified(spec, make_config(seed, permissive_facts, lp_multiplicity))
                .examples;
        },
        py::arg("kind"), py::arg("per_depth"), py::arg("depth_min") = 0, py::arg("depth_max") = 6,
        py::arg("seed") = 0, py::arg("workers") = 1, py::arg("balance_labels") = false,
        py::arg("permissive_facts") = false, py::arg("lp_multiplicity") = 2);

    m.def("rule_count", &rule_count);
    m.def("fact_count", &fact_count);
    m.def("pred_count", &pred_count);
    m.def("branching_factor", &branching_factor);

    m.def(
        "conditional_histogram",
        [](const std::vector<Example>& examples, const std::string& feature, double bin_width) {
            const auto hist = conditional_label_histogram(
                examples, feature_spec_from_string(feature, bin_width));
            py::dict out;
            for (const auto& [bin, counts] : hist.bins()) {
                out[py::make_tuple(hist.spec().bin_low(bin), hist.spec().bin_high(bin))] =
                    py::make_tuple(counts.positives, counts.negatives);
            }
            return out;
        },
        py::arg("examples"), py::arg("feature"), py::arg("bin_width") = 0.0,
        "Per-bin (positives, negatives) keyed by (bin_low, bin_high)");

    m.def(
        "render_example",
        [](const Example& ex, const std::string& profile) {
            return render_example(ex, template_profile_from_string(profile),
                                  Vocabulary::builtin());
        },
        py::arg("example"), py::arg("profile") = "ifthen");
    m.def(
        "parse_example",
        [](const std::string& text, const std::string& profile) {
            return parse_example(text, template_profile_from_string(profile),
                                 Vocabulary::builtin());
        },
        py::arg("text"), py::arg("profile") = "ifthen");
    m.def(
        "render_model_input",
        [](const Example& ex, const std::string& profile) {
            return render_model_input(ex, template_profile_from_string(profile),
                                      Vocabulary::builtin());
        },
        py::arg("example"), py::arg("profile") = "ifthen");

    m.def(
        "verify_constructed_model",
        [](const std::vector<Example>& examples, std::uint64_t seed, int layers, double beta,
           int workers) {
            ConstructedModelConfig config;
            config.layer_count = layers;
            if (beta > 0) config.beta = beta;
            RandomStream rng(seed, 0);
            const SignatureSet signatures = generate_signatures(rng);
            const AgreementReport report = verify_agreement(examples, signatures, config, workers);
            py::dict out;
            out["total"] = report.total;
            out["correct"] = report.correct;
            out["accuracy"] = report.accuracy();
            out["disagreements"] = report.disagreements.size();
            return out;
        },
        py::arg("examples"), py::arg("seed") = 0, py::arg("layers") = 12, py::arg("beta") = 0.0,
        py::arg("workers") = 1,
        "Accuracy of the fixed-weight network against the symbolic solver");

    m.attr("VOCABULARY") = Vocabulary::builtin().words();
    m.attr("__version__") = kToolkitVersion;
}
