#include "simplelogic/textcodec.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace simplelogic {

namespace {

constexpr std::array<const char*, 7> kSectionHeaders = {
    "Rules:", "Facts:", "Query:", "Label:", "Proof Depth:", "From:", "Predicates:"};

int line_of_offset(const std::string& text, std::size_t offset, int base_line) {
    return base_line + static_cast<int>(std::count(text.begin(),
                                                   text.begin() + static_cast<std::ptrdiff_t>(
                                                                      std::min(offset, text.size())),
                                                   '\n'));
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_words(const std::string& s) {
    std::vector<std::string> words;
    std::istringstream in(s);
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

PredicateId lookup_word(const std::string& word, const Vocabulary& vocabulary, int line) {
    const int id = vocabulary.lookup(word);
    if (id < 0) throw ParseError(line, "word not in the vocabulary: '" + word + "'");
    return static_cast<PredicateId>(id);
}

// ---- sentence rendering ----

void render_fact(std::string& out, PredicateId fact, TemplateProfile profile,
                 const Vocabulary& vocabulary) {
    out += profile == TemplateProfile::IfThen ? "Alice " : "Alice is ";
    out += vocabulary.word(fact);
    out += '.';
}

void render_rule(std::string& out, const Rule& rule, TemplateProfile profile,
                 const Vocabulary& vocabulary) {
    if (profile == TemplateProfile::IfThen) out += "If ";
    for (std::size_t i = 0; i < rule.body_size; ++i) {
        if (i) out += " and ";
        out += vocabulary.word(rule.body_storage[i]);
    }
    out += profile == TemplateProfile::IfThen ? ", then " : ", ";
    out += vocabulary.word(rule.head);
    out += '.';
}

void render_query(std::string& out, PredicateId query, TemplateProfile profile,
                  const Vocabulary& vocabulary) {
    out += "Query: Alice is ";
    out += vocabulary.word(query);
    out += profile == TemplateProfile::IfThen ? " ?" : ".";
}

// ---- sentence parsing ----

Rule parse_rule_sentence(const std::string& sentence, TemplateProfile profile,
                         const Vocabulary& vocabulary, int line) {
    std::string body_part;
    std::string head_part;
    if (profile == TemplateProfile::IfThen) {
        if (sentence.rfind("If ", 0) != 0) {
            throw ParseError(line, "expected rule sentence starting with 'If': '" + sentence + "'");
        }
        const std::size_t sep = sentence.find(", then ");
        if (sep == std::string::npos) {
            throw ParseError(line, "rule sentence missing ', then': '" + sentence + "'");
        }
        body_part = sentence.substr(3, sep - 3);
        head_part = sentence.substr(sep + 7);
    } else {
        const std::size_t sep = sentence.rfind(", ");
        if (sep == std::string::npos) {
            throw ParseError(line, "rule sentence missing ', ': '" + sentence + "'");
        }
        body_part = sentence.substr(0, sep);
        head_part = sentence.substr(sep + 2);
    }

    Rule rule;
    std::size_t pos = 0;
    while (pos <= body_part.size()) {
        std::size_t next = body_part.find(" and ", pos);
        const std::string word =
            trim(next == std::string::npos ? body_part.substr(pos) : body_part.substr(pos, next - pos));
        if (word.empty()) throw ParseError(line, "empty predicate in rule body");
        if (rule.body_size >= kMaxBodySize) {
            throw ParseError(line, "rule body has more than 3 predicates: '" + sentence + "'");
        }
        rule.push_body(lookup_word(word, vocabulary, line));
        if (next == std::string::npos) break;
        pos = next + 5;
    }
    const std::string head_word = trim(head_part);
    if (head_word.empty()) throw ParseError(line, "rule sentence has an empty head");
    rule.head = lookup_word(head_word, vocabulary, line);
    return rule;
}

// `sentence` arrives without its terminating period.
PredicateId parse_fact_sentence(const std::string& sentence, TemplateProfile profile,
                                const Vocabulary& vocabulary, int line) {
    const char* prefix = profile == TemplateProfile::IfThen ? "Alice " : "Alice is ";
    const std::size_t plen = std::string(prefix).size();
    if (sentence.rfind(prefix, 0) != 0) {
        throw ParseError(line, "expected fact sentence starting with '" + std::string(prefix) +
                                   "': '" + sentence + "'");
    }
    const std::string word = trim(sentence.substr(plen));
    if (word.find(' ') != std::string::npos) {
        throw ParseError(line, "fact sentence must name a single predicate: '" + sentence + "'");
    }
    return lookup_word(word, vocabulary, line);
}

PredicateId parse_query_content(const std::string& content, TemplateProfile profile,
                                const Vocabulary& vocabulary, int line) {
    std::string s = trim(content);
    if (profile == TemplateProfile::IfThen) {
        if (s.empty() || s.back() != '?') throw ParseError(line, "query must end with '?'");
        s = trim(s.substr(0, s.size() - 1));
    } else {
        if (s.empty() || s.back() != '.') throw ParseError(line, "query must end with '.'");
        s = trim(s.substr(0, s.size() - 1));
    }
    if (s.rfind("Alice is ", 0) != 0) {
        throw ParseError(line, "query must read 'Alice is <predicate>': '" + s + "'");
    }
    const std::string word = trim(s.substr(9));
    if (word.empty() || word.find(' ') != std::string::npos) {
        throw ParseError(line, "query must name a single predicate: '" + s + "'");
    }
    return lookup_word(word, vocabulary, line);
}

// Splits a section's content into '.'-terminated sentences, reporting each
// sentence's line number.
std::vector<std::pair<std::string, int>> split_sentences(const std::string& content,
                                                         const std::string& block, int base_line,
                                                         std::size_t content_offset) {
    std::vector<std::pair<std::string, int>> sentences;
    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t dot = content.find('.', pos);
        if (dot == std::string::npos) {
            if (!trim(content.substr(pos)).empty()) {
                throw ParseError(line_of_offset(block, content_offset + pos, base_line),
                                 "unterminated sentence: '" + trim(content.substr(pos)) + "'");
            }
            break;
        }
        const std::string sentence = trim(content.substr(pos, dot - pos));
        if (!sentence.empty()) {
            sentences.emplace_back(sentence,
                                   line_of_offset(block, content_offset + pos, base_line));
        }
        pos = dot + 1;
    }
    return sentences;
}

struct Section {
    std::string content;
    std::size_t offset = 0;
    bool present = false;
};

std::array<Section, kSectionHeaders.size()> split_sections(const std::string& block,
                                                           int base_line) {
    struct Mark {
        std::size_t pos;
        std::size_t header;
    };
    std::vector<Mark> marks;
    for (std::size_t h = 0; h < kSectionHeaders.size(); ++h) {
        const std::string header = kSectionHeaders[h];
        std::size_t pos = block.find(header);
        while (pos != std::string::npos) {
            marks.push_back({pos, h});
            pos = block.find(header, pos + header.size());
        }
    }
    std::sort(marks.begin(), marks.end(), [](const Mark& a, const Mark& b) { return a.pos < b.pos; });

    if (marks.empty()) throw ParseError(base_line, "no sections found in block");
    if (!trim(block.substr(0, marks.front().pos)).empty()) {
        throw ParseError(line_of_offset(block, 0, base_line),
                         "unexpected text before the first section");
    }

    std::array<Section, kSectionHeaders.size()> sections;
    for (std::size_t i = 0; i < marks.size(); ++i) {
        const Mark& mark = marks[i];
        if (sections[mark.header].present) {
            throw ParseError(line_of_offset(block, mark.pos, base_line),
                             std::string("duplicate section '") + kSectionHeaders[mark.header] +
                                 "'");
        }
        const std::size_t content_begin = mark.pos + std::string(kSectionHeaders[mark.header]).size();
        const std::size_t content_end = i + 1 < marks.size() ? marks[i + 1].pos : block.size();
        sections[mark.header] = {block.substr(content_begin, content_end - content_begin),
                                 content_begin, true};
    }
    return sections;
}

Example parse_block(const std::string& block, TemplateProfile profile,
                    const Vocabulary& vocabulary, const SolverOptions& solver, int base_line) {
    enum { kRules, kFacts, kQuery, kLabel, kProofDepth, kFrom, kPredicates };
    const auto sections = split_sections(block, base_line);

    Example ex;
    if (sections[kRules].present) {
        for (const auto& [sentence, line] :
             split_sentences(sections[kRules].content, block, base_line, sections[kRules].offset)) {
            ex.theory.rules.push_back(parse_rule_sentence(sentence, profile, vocabulary, line));
        }
    }
    if (sections[kFacts].present) {
        for (const auto& [sentence, line] :
             split_sentences(sections[kFacts].content, block, base_line, sections[kFacts].offset)) {
            ex.theory.facts.push_back(parse_fact_sentence(sentence, profile, vocabulary, line));
        }
    }
    if (!sections[kQuery].present) throw ParseError(base_line, "block has no 'Query:' section");
    ex.query = parse_query_content(sections[kQuery].content, profile, vocabulary,
                                   line_of_offset(block, sections[kQuery].offset, base_line));

    if (sections[kLabel].present) {
        const std::string label = trim(sections[kLabel].content);
        if (label != "True" && label != "False") {
            throw ParseError(line_of_offset(block, sections[kLabel].offset, base_line),
                             "label must be 'True' or 'False', got '" + label + "'");
        }
    }
    if (sections[kProofDepth].present) {
        const std::string depth = trim(sections[kProofDepth].content);
        if (depth.empty() || depth.find_first_not_of("0123456789") != std::string::npos) {
            throw ParseError(line_of_offset(block, sections[kProofDepth].offset, base_line),
                             "proof depth must be a non-negative integer, got '" + depth + "'");
        }
    }
    if (sections[kFrom].present) {
        const int line = line_of_offset(block, sections[kFrom].offset, base_line);
        try {
            ex.sampler = sampler_kind_from_string(trim(sections[kFrom].content));
        } catch (const std::invalid_argument& e) {
            throw ParseError(line, e.what());
        }
    }

    if (sections[kPredicates].present) {
        const int line = line_of_offset(block, sections[kPredicates].offset, base_line);
        for (const std::string& word : split_words(sections[kPredicates].content)) {
            ex.theory.predicates.push_back(lookup_word(word, vocabulary, line));
        }
    } else {
        // No explicit predicate list: the set in play is whatever occurs.
        ex.theory.predicates.push_back(ex.query);
        for (PredicateId f : ex.theory.facts) ex.theory.predicates.push_back(f);
        for (const Rule& r : ex.theory.rules) {
            ex.theory.predicates.push_back(r.head);
            for (PredicateId b : r.body()) ex.theory.predicates.push_back(b);
        }
    }
    std::sort(ex.theory.predicates.begin(), ex.theory.predicates.end());
    ex.theory.predicates.erase(
        std::unique(ex.theory.predicates.begin(), ex.theory.predicates.end()),
        ex.theory.predicates.end());

    const auto [label, depth] = label_and_depth(ex.theory, ex.query, solver);
    ex.label = label;
    ex.depth = static_cast<std::int16_t>(depth);
    return ex;
}

}  // namespace

const char* to_string(TemplateProfile profile) {
    return profile == TemplateProfile::IfThen ? "ifthen" : "compact";
}

TemplateProfile template_profile_from_string(const std::string& name) {
    if (name == "ifthen" || name == "IFTHEN") return TemplateProfile::IfThen;
    if (name == "compact" || name == "COMPACT") return TemplateProfile::Compact;
    throw std::invalid_argument("unknown template profile: " + name);
}

std::string render_example(const Example& example, TemplateProfile profile,
                           const Vocabulary& vocabulary) {
    std::string out;
    out += "Rules:";
    for (const Rule& r : example.theory.rules) {
        out += ' ';
        render_rule(out, r, profile, vocabulary);
    }
    out += "\nFacts:";
    for (PredicateId f : example.theory.facts) {
        out += ' ';
        render_fact(out, f, profile, vocabulary);
    }
    out += '\n';
    render_query(out, example.query, profile, vocabulary);
    out += "\nLabel: ";
    out += example.label ? "True" : "False";
    out += "\nProof Depth: ";
    out += std::to_string(example.depth);
    out += "\nFrom: ";
    out += to_string(example.sampler);
    out += "\nPredicates:";
    for (PredicateId p : example.theory.predicates) {
        out += ' ';
        out += vocabulary.word(p);
    }
    out += '\n';
    return out;
}

Example parse_example(const std::string& text, TemplateProfile profile,
                      const Vocabulary& vocabulary, const SolverOptions& solver) {
    return parse_block(text, profile, vocabulary, solver, 1);
}

std::string render_model_input(const Example& example, TemplateProfile profile,
                               const Vocabulary& vocabulary) {
    std::string out = "[CLS]";
    for (PredicateId f : example.theory.facts) {
        out += ' ';
        render_fact(out, f, profile, vocabulary);
    }
    for (const Rule& r : example.theory.rules) {
        out += ' ';
        render_rule(out, r, profile, vocabulary);
    }
    out += " [SEP] ";
    render_query(out, example.query, profile, vocabulary);
    out += " [SEP]";
    return out;
}

Example parse_model_input(const std::string& text, TemplateProfile profile,
                          const Vocabulary& vocabulary, const SolverOptions& solver) {
    if (text.rfind("[CLS]", 0) != 0) throw ParseError(1, "model input must start with [CLS]");
    std::vector<std::string> segments;
    std::size_t pos = 5;
    while (pos <= text.size()) {
        const std::size_t sep = text.find("[SEP]", pos);
        if (sep == std::string::npos) {
            segments.push_back(text.substr(pos));
            break;
        }
        segments.push_back(text.substr(pos, sep - pos));
        pos = sep + 5;
    }
    if (segments.size() != 3 || !trim(segments[2]).empty()) {
        throw ParseError(1, "model input must contain exactly two [SEP] markers");
    }

    Example ex;
    for (const auto& [sentence, line] : split_sentences(segments[0], text, 1, 5)) {
        if (sentence.rfind("Alice", 0) == 0) {
            ex.theory.facts.push_back(parse_fact_sentence(sentence, profile, vocabulary, line));
        } else {
            ex.theory.rules.push_back(parse_rule_sentence(sentence, profile, vocabulary, line));
        }
    }
    std::string query_part = trim(segments[1]);
    if (query_part.rfind("Query:", 0) != 0) {
        throw ParseError(1, "query segment must start with 'Query:'");
    }
    ex.query = parse_query_content(query_part.substr(6), profile, vocabulary, 1);

    ex.theory.predicates.push_back(ex.query);
    for (PredicateId f : ex.theory.facts) ex.theory.predicates.push_back(f);
    for (const Rule& r : ex.theory.rules) {
        ex.theory.predicates.push_back(r.head);
        for (PredicateId b : r.body()) ex.theory.predicates.push_back(b);
    }
    std::sort(ex.theory.predicates.begin(), ex.theory.predicates.end());
    ex.theory.predicates.erase(
        std::unique(ex.theory.predicates.begin(), ex.theory.predicates.end()),
        ex.theory.predicates.end());

    const auto [label, depth] = label_and_depth(ex.theory, ex.query, solver);
    ex.label = label;
    ex.depth = static_cast<std::int16_t>(depth);
    return ex;
}

std::string render_corpus(const std::vector<Example>& examples, TemplateProfile profile,
                          const Vocabulary& vocabulary) {
    std::string out;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        if (i) out += '\n';
        out += render_example(examples[i], profile, vocabulary);
    }
    return out;
}

std::vector<Example> parse_corpus(const std::string& text, TemplateProfile profile,
                                  const Vocabulary& vocabulary, const SolverOptions& solver) {
    std::vector<Example> examples;
    std::size_t pos = 0;
    int line = 1;
    while (pos < text.size()) {
        // A block ends at the first empty line.
        std::size_t end = pos;
        std::size_t scan = pos;
        while (scan < text.size()) {
            std::size_t eol = text.find('\n', scan);
            if (eol == std::string::npos) eol = text.size();
            if (trim(text.substr(scan, eol - scan)).empty()) {
                end = scan;
                break;
            }
            scan = eol + 1;
            end = scan;
        }
        const std::string block = text.substr(pos, end - pos);
        if (!trim(block).empty()) {
            examples.push_back(parse_block(block, profile, vocabulary, solver, line));
        }
        line += static_cast<int>(std::count(text.begin() + static_cast<std::ptrdiff_t>(pos),
                                            text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
        // Skip the blank separator line(s).
        pos = end;
        while (pos < text.size()) {
            std::size_t eol = text.find('\n', pos);
            if (eol == std::string::npos) eol = text.size();
            if (!trim(text.substr(pos, eol - pos)).empty()) break;
            line += 1;
            pos = eol == text.size() ? text.size() : eol + 1;
        }
    }
    return examples;
}

}  // namespace simplelogic
