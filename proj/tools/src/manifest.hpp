#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace mobiflow::cli {

std::string sha256_hex(std::string_view data);

/// Collects what a CLI run consumed and produced and writes manifest.json
/// next to the outputs. Contains digests and byte counts only, never
/// timestamps, so identical runs write identical manifests.
class RunManifest {
public:
    explicit RunManifest(std::string verb);

    void set_seed(std::uint64_t seed);
    void set_parameter(const std::string& key, nlohmann::ordered_json value);
    void add_input(const std::string& label, const std::filesystem::path& path,
                   std::string_view content);
    void add_flag(const std::string& reason);
    bool flagged() const { return !flags_.empty(); }

    /// Writes `name` under `dir` (creating it) and records the digest.
    void write_output(const std::filesystem::path& dir, const std::string& name,
                      std::string_view content);

    /// Writes dir/manifest.json. The manifest itself is not listed.
    void save(const std::filesystem::path& dir) const;

private:
    std::string verb_;
    bool has_seed_ = false;
    std::uint64_t seed_ = 0;
    nlohmann::ordered_json parameters_ = nlohmann::ordered_json::object();
    nlohmann::ordered_json inputs_ = nlohmann::ordered_json::array();
    std::map<std::string, nlohmann::ordered_json> outputs_;
    std::vector<std::string> flags_;
};

} // namespace mobiflow::cli
