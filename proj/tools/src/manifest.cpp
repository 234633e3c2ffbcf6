#include "manifest.hpp"

#include <fstream>

#include <openssl/evp.h>

#include "mobiflow/errors.hpp"
#include "mobiflow/version.hpp"

namespace mobiflow::cli {

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw Error("sha256 digest failed");
    }
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

RunManifest::RunManifest(std::string verb) : verb_(std::move(verb)) {}

void RunManifest::set_seed(std::uint64_t seed) {
    has_seed_ = true;
    seed_ = seed;
}

void RunManifest::set_parameter(const std::string& key, nlohmann::ordered_json value) {
    parameters_[key] = std::move(value);
}

void RunManifest::add_input(const std::string& label, const std::filesystem::path& path,
                            std::string_view content) {
    inputs_.push_back({{"label", label},
                       {"path", path.string()},
                       {"sha256", sha256_hex(content)},
                       {"bytes", content.size()}});
}

void RunManifest::add_flag(const std::string& reason) { flags_.push_back(reason); }

void RunManifest::write_output(const std::filesystem::path& dir, const std::string& name,
                               std::string_view content) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw Error("short write to " + path.string());
    outputs_[name] = {{"file", name},
                      {"sha256", sha256_hex(content)},
                      {"bytes", content.size()}};
}

void RunManifest::save(const std::filesystem::path& dir) const {
    nlohmann::ordered_json root;
    root["tool"] = "mobiflow";
    root["version"] = kVersion;
    root["verb"] = verb_;
    if (has_seed_) root["seed"] = seed_;
    root["parameters"] = parameters_;
    root["inputs"] = inputs_;
    auto& outs = root["outputs"] = nlohmann::ordered_json::array();
    for (const auto& [name, entry] : outputs_) outs.push_back(entry);
    root["flags"] = flags_;

    std::filesystem::create_directories(dir);
    const std::filesystem::path path = dir / "manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << root.dump(2) << '\n';
}

} // namespace mobiflow::cli
