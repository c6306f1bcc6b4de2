#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "simplelogic/types.hpp"

namespace simplelogic {

// One example per line:
// {"preds":[...],"facts":[...],"rules":[[[b1,b2],h],...],"query":q,
//  "label":0|1,"depth":d,"sampler":"RP"}
// The writer emits keys in exactly this order so equal datasets are
// byte-identical. Paths ending in .gz are compressed/decompressed
// transparently.
std::string example_to_jsonl(const Example& example);
Example example_from_jsonl(const std::string& line);

void write_dataset_jsonl(std::ostream& out, const Dataset& dataset);
void write_dataset_jsonl(const std::string& path, const Dataset& dataset);

Dataset read_dataset_jsonl(const std::string& path);
// Streaming reader for datasets too large to hold; the visitor gets
// (line_number, example).
void for_each_example_jsonl(const std::string& path,
                            const std::function<void(std::size_t, const Example&)>& visit);

std::string metadata_to_json(const DatasetMetadata& metadata);

}  // namespace simplelogic
