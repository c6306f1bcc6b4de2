#include "simplelogic/validate.hpp"

#include <algorithm>
#include <sstream>

namespace simplelogic {

namespace {

bool contains(const std::vector<PredicateId>& sorted_ids, PredicateId p) {
    return std::binary_search(sorted_ids.begin(), sorted_ids.end(), p);
}

void add(ValidationReport& report, std::string code, std::string message) {
    report.violations.push_back({std::move(code), std::move(message)});
}

}  // namespace

bool ValidationReport::has(const std::string& code) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.code == code; });
}

std::string ValidationReport::to_string() const {
    std::ostringstream out;
    for (const Violation& v : violations) out << v.code << ": " << v.message << "\n";
    return out.str();
}

ValidationReport validate_theory(const Theory& theory, const ValidateOptions& options) {
    ValidationReport report;

    const int pred_count = static_cast<int>(theory.predicates.size());
    if (pred_count < kMinPredicates || pred_count > kMaxPredicates) {
        add(report, "pred-count-range",
            "|predicates| = " + std::to_string(pred_count) + ", expected " +
                std::to_string(kMinPredicates) + ".." + std::to_string(kMaxPredicates));
    }
    if (!std::is_sorted(theory.predicates.begin(), theory.predicates.end()) ||
        std::adjacent_find(theory.predicates.begin(), theory.predicates.end()) !=
            theory.predicates.end()) {
        add(report, "pred-set-malformed", "predicate list must be sorted and duplicate-free");
    }
    for (PredicateId p : theory.predicates) {
        if (p >= kVocabularySize) {
            add(report, "pred-out-of-vocabulary",
                "predicate id " + std::to_string(p) + " outside the vocabulary");
        }
    }

    const int fact_count = static_cast<int>(theory.facts.size());
    const int min_facts = options.permissive_facts ? 0 : 1;
    if (fact_count < min_facts || fact_count > pred_count) {
        add(report, "fact-count-range",
            "|facts| = " + std::to_string(fact_count) + ", expected " + std::to_string(min_facts) +
                "..|predicates|");
    }
    {
        std::vector<PredicateId> seen;
        for (PredicateId f : theory.facts) {
            if (!contains(theory.predicates, f)) {
                add(report, "fact-unknown-predicate",
                    "fact predicate " + std::to_string(f) + " not in the predicate set");
            }
            if (std::find(seen.begin(), seen.end(), f) != seen.end()) {
                add(report, "fact-duplicate", "fact " + std::to_string(f) + " repeated");
            }
            seen.push_back(f);
        }
    }

    const int rule_count = static_cast<int>(theory.rules.size());
    if (rule_count > kRulesPerPredicate * pred_count) {
        add(report, "rule-count-range",
            "|rules| = " + std::to_string(rule_count) + " exceeds 4x|predicates|");
    }
    for (std::size_t i = 0; i < theory.rules.size(); ++i) {
        const Rule& r = theory.rules[i];
        const std::string where = "rule #" + std::to_string(i);
        if (r.body_size < 1 || r.body_size > kMaxBodySize) {
            add(report, "body-size",
                where + " has body size " + std::to_string(static_cast<int>(r.body_size)));
        }
        for (std::size_t a = 0; a < r.body_size; ++a) {
            for (std::size_t b = a + 1; b < r.body_size; ++b) {
                if (r.body_storage[a] == r.body_storage[b]) {
                    add(report, "body-duplicate", where + " repeats a body predicate");
                }
            }
            if (r.body_storage[a] == r.head) {
                add(report, "head-in-body", where + " has its head in its body");
            }
            if (!contains(theory.predicates, r.body_storage[a])) {
                add(report, "rule-unknown-predicate", where + " uses a predicate outside the set");
            }
        }
        if (!contains(theory.predicates, r.head)) {
            add(report, "rule-unknown-predicate", where + " heads a predicate outside the set");
        }
    }

    return report;
}

ValidationReport validate_example(const Example& example, const ValidateOptions& options) {
    ValidationReport report = validate_theory(example.theory, options);

    if (!contains(example.theory.predicates, example.query)) {
        add(report, "query-unknown-predicate",
            "query " + std::to_string(example.query) + " not in the predicate set");
        return report;  // solver agreement is meaningless without a valid query
    }

    const auto [label, depth] = label_and_depth(example.theory, example.query, options.solver);
    if (label != example.label) {
        add(report, "label-mismatch",
            std::string("stored label ") + (example.label ? "True" : "False") +
                " but the solver derives " + (label ? "True" : "False"));
    } else if (depth != example.depth) {
        add(report, "depth-mismatch",
            "stored depth " + std::to_string(example.depth) + " but the solver derives " +
                std::to_string(depth));
    }
    return report;
}

}  // namespace simplelogic
