#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "simplelogic/solver.hpp"
#include "simplelogic/types.hpp"

namespace simplelogic {

// Two coexisting sentence grammars:
//   Compact:  fact "Alice is x."  rule "a and b, c."          query "Query: Alice is q."
//   IfThen:   fact "Alice x."     rule "If a and b, then c."  query "Query: Alice is q ?"
enum class TemplateProfile : std::uint8_t { Compact, IfThen };

const char* to_string(TemplateProfile profile);
TemplateProfile template_profile_from_string(const std::string& name);

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Multi-line block:
//   Rules: ... Facts: ... Query: ... Label: ... Proof Depth: ... From: ...
//   Predicates: ...
// parse_example accepts the sections in any order; everything except Query is
// optional. Label and depth are always recomputed by the solver.
std::string render_example(const Example& example, TemplateProfile profile,
                           const Vocabulary& vocabulary);

Example parse_example(const std::string& text, TemplateProfile profile,
                      const Vocabulary& vocabulary, const SolverOptions& solver = {});

// "[CLS] facts. rules [SEP] query [SEP]" on a single line.
std::string render_model_input(const Example& example, TemplateProfile profile,
                               const Vocabulary& vocabulary);

Example parse_model_input(const std::string& text, TemplateProfile profile,
                          const Vocabulary& vocabulary, const SolverOptions& solver = {});

// Corpus files hold blocks separated by blank lines.
std::string render_corpus(const std::vector<Example>& examples, TemplateProfile profile,
                          const Vocabulary& vocabulary);

std::vector<Example> parse_corpus(const std::string& text, TemplateProfile profile,
                                  const Vocabulary& vocabulary, const SolverOptions& solver = {});

}  // namespace simplelogic
