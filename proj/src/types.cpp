#include "simplelogic/types.hpp"

#include <fstream>
#include <stdexcept>

namespace simplelogic {

namespace {

const char* const kBuiltinWords[kVocabularySize] = {
    "adorable", "adventurous", "aggressive", "agreeable", "alert", "ambitious",
    "amused", "anxious", "arrogant", "ashamed", "attractive", "average",
    "bad-tempered", "beautiful", "bewildered", "bitter", "blushing", "boring",
    "brainy", "brave", "bright", "broad-minded", "busy", "calm",
    "careless", "cautious", "charming", "cheerful", "clean", "clever",
    "cloudy", "clumsy", "colorful", "combative", "comfortable", "complicated",
    "concerned", "condemned", "confused", "cooperative", "courageous", "cruel",
    "curious", "dangerous", "defeated", "defiant", "delightful", "depressed",
    "determined", "different", "difficult", "disgusted", "distinct", "dizzy",
    "dull", "eager", "elated", "elegant", "embarrassed", "enchanting",
    "energetic", "envious", "evil", "excited", "expensive", "exuberant",
    "faithful", "famous", "fancy", "fierce", "filthy", "fine",
    "foolish", "fragile", "frail", "frantic", "friendly", "gentle",
    "gifted", "glamorous", "gleaming", "gorgeous", "graceful", "grieving",
    "grotesque", "grumpy", "handsome", "happy", "healthy", "helpful",
    "helpless", "hilarious", "homely", "hungry", "hurt", "hypocritical",
    "impartial", "impatient", "inexpensive", "innocent", "inquisitive", "intellectual",
    "jealous", "jittery", "jolly", "joyous", "kind", "lazy",
    "light", "lively", "lonely", "long", "lucky", "magnificent",
    "mean", "messy", "modern", "motionless", "muddy", "mysterious",
    "naughty", "nervous", "obedient", "obnoxious", "odd", "outrageous",
    "outstanding", "perfect", "pessimistic", "plain", "pleasant", "proud",
    "quaint", "reserved", "rude", "shiny", "sincere", "spotless",
    "supportive", "talkative", "tame", "tender", "tense", "thoughtful",
    "ugly", "versatile", "victorious", "vivacious", "witty", "zealous"
};

}  // namespace

const char* to_string(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::RP: return "RP";
        case SamplerKind::LP: return "LP";
        case SamplerKind::LPStar: return "LPSTAR";
        case SamplerKind::Uniform: return "UNIFORM";
    }
    return "UNIFORM";
}

SamplerKind sampler_kind_from_string(const std::string& name) {
    if (name == "RP" || name == "rp") return SamplerKind::RP;
    if (name == "LP" || name == "lp") return SamplerKind::LP;
    if (name == "LPSTAR" || name == "lpstar" || name == "lp*") return SamplerKind::LPStar;
    if (name == "UNIFORM" || name == "uniform") return SamplerKind::Uniform;
    throw std::invalid_argument("unknown sampler kind: " + name);
}

const Vocabulary& Vocabulary::builtin() {
    static const Vocabulary vocab = [] {
        std::vector<std::string> words(kBuiltinWords, kBuiltinWords + kVocabularySize);
        return from_words(std::move(words));
    }();
    return vocab;
}

Vocabulary Vocabulary::from_words(std::vector<std::string> words) {
    if (words.size() != kVocabularySize) {
        throw std::invalid_argument("vocabulary must contain exactly " +
                                    std::to_string(kVocabularySize) + " words, got " +
                                    std::to_string(words.size()));
    }
    Vocabulary vocab;
    vocab.words_ = std::move(words);
    for (std::size_t i = 0; i < vocab.words_.size(); ++i) {
        const std::string& w = vocab.words_[i];
        if (w.empty() || w.find_first_of(" \t\r\n") != std::string::npos) {
            throw std::invalid_argument("vocabulary word may not contain whitespace: '" + w + "'");
        }
        for (char c : w) {
            if (c >= 'A' && c <= 'Z') {
                throw std::invalid_argument("vocabulary word must be lowercase: '" + w + "'");
            }
        }
        auto [_, inserted] = vocab.index_.emplace(w, static_cast<PredicateId>(i));
        if (!inserted) throw std::invalid_argument("duplicate vocabulary word: '" + w + "'");
    }
    return vocab;
}

Vocabulary Vocabulary::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open vocabulary file: " + path);
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) words.push_back(line);
    }
    return from_words(std::move(words));
}

int Vocabulary::lookup(const std::string& word) const {
    auto it = index_.find(word);
    return it == index_.end() ? -1 : static_cast<int>(it->second);
}

}  // namespace simplelogic
