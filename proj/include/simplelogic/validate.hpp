#pragma once

#include <string>
#include <vector>

#include "simplelogic/solver.hpp"
#include "simplelogic/types.hpp"

namespace simplelogic {

struct Violation {
    std::string code;     // stable identifier, e.g. "body-size"
    std::string message;  // human-readable detail
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(const std::string& code) const;
    std::string to_string() const;
};

struct ValidateOptions {
    // Canonical datasets require at least one fact; the permissive reading
    // admits zero-fact theories.
    bool permissive_facts = false;
    SolverOptions solver;
};

ValidationReport validate_theory(const Theory& theory, const ValidateOptions& options = {});

// Full example check, including label/depth agreement with the solver.
ValidationReport validate_example(const Example& example, const ValidateOptions& options = {});

}  // namespace simplelogic
