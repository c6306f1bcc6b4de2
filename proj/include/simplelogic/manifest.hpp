#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace simplelogic {

constexpr const char* kToolkitVersion = "0.1.0";

// SHA-256 of a byte string / file, as lowercase hex.
std::string sha256_hex(const void* data, std::size_t size);
std::string sha256_hex(const std::string& data);
std::string sha256_file_hex(const std::string& path);

// Reproducibility sidecar written next to every artifact-producing command's
// output: the command, its flags, and digests of what it wrote.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> flags;
    std::uint64_t seed = 0;
    std::string version = kToolkitVersion;
    double wall_seconds = 0.0;
    std::map<std::string, std::string> output_digests;  // path -> sha256

    std::string to_json() const;
    void write(const std::string& path) const;
};

}  // namespace simplelogic
