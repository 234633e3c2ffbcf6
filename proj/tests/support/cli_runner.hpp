#pragma once

// Helpers for driving the installed CLI binary from tests: run a shell
// command capturing combined output and exit status, read files, and compare
// two output directories byte for byte.

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

namespace cli_runner {

struct RunResult {
    int status = -1;
    std::string output;
};

/// Runs `command` under /bin/sh with stderr folded into stdout.
inline RunResult run(const std::string& command) {
    RunResult result;
    FILE* pipe = ::popen((command + " 2>&1").c_str(), "r");
    if (!pipe) return result;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), got);
    const int rc = ::pclose(pipe);
    if (WIFEXITED(rc)) result.status = WEXITSTATUS(rc);
    return result;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::vector<std::filesystem::path> file_list(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(std::filesystem::relative(entry.path(), dir));
    }
    std::sort(files.begin(), files.end());
    return files;
}

/// Empty string when the two trees hold identical files; otherwise a message
/// naming the first difference.
inline std::string compare_trees(const std::filesystem::path& a, const std::filesystem::path& b) {
    const auto files_a = file_list(a);
    const auto files_b = file_list(b);
    if (files_a != files_b) return "file sets differ between " + a.string() + " and " + b.string();
    for (const auto& rel : files_a) {
        if (read_file(a / rel) != read_file(b / rel))
            return "content differs: " + (a / rel).string() + " vs " + (b / rel).string();
    }
    return "";
}

/// Fresh scratch directory, wiped on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                (tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace cli_runner
