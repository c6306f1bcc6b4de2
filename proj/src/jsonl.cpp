#include "simplelogic/jsonl.hpp"

#include <fstream>
#include <stdexcept>

#include <zlib.h>

#include <json.hpp>

namespace simplelogic {

namespace {

void append_id_array(std::string& out, const std::vector<PredicateId>& ids) {
    out += '[';
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(ids[i]);
    }
    out += ']';
}

bool is_gzip_path(const std::string& path) {
    return path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
}

PredicateId to_predicate(const nlohmann::json& j) {
    const auto v = j.get<long long>();
    if (v < 0 || v >= kVocabularySize) {
        throw std::invalid_argument("predicate id out of range: " + std::to_string(v));
    }
    return static_cast<PredicateId>(v);
}

}  // namespace

std::string example_to_jsonl(const Example& example) {
    std::string out;
    out.reserve(64 + 4 * (example.theory.predicates.size() + example.theory.facts.size()) +
                16 * example.theory.rules.size());
    out += "{\"preds\":";
    append_id_array(out, example.theory.predicates);
    out += ",\"facts\":";
    append_id_array(out, example.theory.facts);
    out += ",\"rules\":[";
    for (std::size_t i = 0; i < example.theory.rules.size(); ++i) {
        const Rule& r = example.theory.rules[i];
        if (i) out += ',';
        out += "[[";
        for (std::size_t a = 0; a < r.body_size; ++a) {
            if (a) out += ',';
            out += std::to_string(r.body_storage[a]);
        }
        out += "],";
        out += std::to_string(r.head);
        out += ']';
    }
    out += "],\"query\":";
    out += std::to_string(example.query);
    out += ",\"label\":";
    out += example.label ? '1' : '0';
    out += ",\"depth\":";
    out += std::to_string(example.depth);
    out += ",\"sampler\":\"";
    out += to_string(example.sampler);
    out += "\"}";
    return out;
}

Example example_from_jsonl(const std::string& line) {
    const nlohmann::json j = nlohmann::json::parse(line);
    Example ex;
    for (const auto& p : j.at("preds")) ex.theory.predicates.push_back(to_predicate(p));
    for (const auto& f : j.at("facts")) ex.theory.facts.push_back(to_predicate(f));
    for (const auto& jr : j.at("rules")) {
        if (!jr.is_array() || jr.size() != 2) {
            throw std::invalid_argument("rule must be [[body...],head]");
        }
        Rule r;
        for (const auto& b : jr[0]) {
            if (r.body_size >= kRuleBodyCapacity) {
                throw std::invalid_argument("rule body too long to represent");
            }
            r.push_body(to_predicate(b));
        }
        r.head = to_predicate(jr[1]);
        ex.theory.rules.push_back(r);
    }
    ex.query = to_predicate(j.at("query"));
    ex.label = j.at("label").get<int>() != 0;
    ex.depth = static_cast<std::int16_t>(j.at("depth").get<int>());
    ex.sampler = sampler_kind_from_string(j.at("sampler").get<std::string>());
    return ex;
}

void write_dataset_jsonl(std::ostream& out, const Dataset& dataset) {
    std::string buffer;
    for (const Example& ex : dataset.examples) {
        buffer = example_to_jsonl(ex);
        buffer += '\n';
        out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    }
}

void write_dataset_jsonl(const std::string& path, const Dataset& dataset) {
    if (is_gzip_path(path)) {
        gzFile gz = gzopen(path.c_str(), "wb");
        if (!gz) throw std::runtime_error("cannot open for writing: " + path);
        std::string buffer;
        for (const Example& ex : dataset.examples) {
            buffer = example_to_jsonl(ex);
            buffer += '\n';
            if (gzwrite(gz, buffer.data(), static_cast<unsigned>(buffer.size())) <= 0) {
                gzclose(gz);
                throw std::runtime_error("compressed write failed: " + path);
            }
        }
        if (gzclose(gz) != Z_OK) throw std::runtime_error("compressed write failed: " + path);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_dataset_jsonl(out, dataset);
    if (!out) throw std::runtime_error("write failed: " + path);
}

Dataset read_dataset_jsonl(const std::string& path) {
    Dataset dataset;
    for_each_example_jsonl(
        path, [&](std::size_t, const Example& ex) { dataset.examples.push_back(ex); });
    return dataset;
}

namespace {

void visit_line(const std::string& path, std::size_t line_number, const std::string& line,
                const std::function<void(std::size_t, const Example&)>& visit) {
    if (line.empty()) return;
    try {
        visit(line_number, example_from_jsonl(line));
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ":" + std::to_string(line_number) + ": " + e.what());
    }
}

}  // namespace

void for_each_example_jsonl(const std::string& path,
                            const std::function<void(std::size_t, const Example&)>& visit) {
    std::size_t line_number = 0;
    if (is_gzip_path(path)) {
        gzFile gz = gzopen(path.c_str(), "rb");
        if (!gz) throw std::runtime_error("cannot open: " + path);
        std::string line;
        std::vector<char> chunk(1 << 16);
        while (gzgets(gz, chunk.data(), static_cast<int>(chunk.size()))) {
            line += chunk.data();
            if (line.empty() || line.back() != '\n') continue;  // long line, keep reading
            line.pop_back();
            if (!line.empty() && line.back() == '\r') line.pop_back();
            visit_line(path, ++line_number, line, visit);
            line.clear();
        }
        const int rc = gzclose(gz);
        if (!line.empty()) visit_line(path, ++line_number, line, visit);
        if (rc != Z_OK) throw std::runtime_error("compressed read failed: " + path);
        return;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        visit_line(path, ++line_number, line, visit);
    }
}

std::string metadata_to_json(const DatasetMetadata& metadata) {
    nlohmann::ordered_json j;
    j["seed"] = metadata.seed;
    j["sampler"] = to_string(metadata.sampler);
    j["workers"] = metadata.workers;
    j["depths"] = std::to_string(metadata.depth_min) + ".." + std::to_string(metadata.depth_max);
    j["per_depth"] = metadata.per_depth;
    j["balance_labels"] = metadata.balance_labels;
    j["permissive_facts"] = metadata.permissive_facts;
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (const auto& [depth, n] : metadata.per_depth_counts) counts[std::to_string(depth)] = n;
    j["per_depth_counts"] = counts;
    nlohmann::ordered_json rates = nlohmann::ordered_json::object();
    for (const auto& [depth, r] : metadata.per_depth_acceptance) rates[std::to_string(depth)] = r;
    j["per_depth_acceptance"] = rates;
    j["wall_seconds"] = metadata.wall_seconds;
    return j.dump(2);
}

}  // namespace simplelogic
