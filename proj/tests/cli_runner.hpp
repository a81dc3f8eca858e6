#pragma once

// Runs the command-line tool as a child process and collects its output.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace testing {

struct CliResult {
    int exit_code = -1;
    std::string out;  // stdout only; stderr goes to a side file
    std::string err;
};

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return out + "'";
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    const auto dir = std::filesystem::temp_directory_path() /
                     ("squidqnd_" + tag + "_" + std::to_string(rng() % 1000000000ULL));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline CliResult run_cli(const std::string& args) {
    const auto err_file = scratch_dir("stderr") / "err.txt";
    const std::string cmd = quote(SQUIDQND_CLI) + " " + args + " 2>" + quote(err_file.string());
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = read_text(err_file);
    std::filesystem::remove_all(err_file.parent_path());
    return r;
}

inline std::string source_path(const std::string& rel) { return std::string(SQUIDQND_SOURCE_DIR) + "/" + rel; }

/// Example config with extra lines appended, written into dir.
inline std::string example_with(const std::filesystem::path& dir, const std::string& extra,
                                const std::string& drop_key = "") {
    std::ifstream in(source_path("configs/example_device.conf"));
    std::string text, line;
    while (std::getline(in, line))
        if (drop_key.empty() || line.rfind(drop_key + " ", 0) != 0) text += line + "\n";
    const auto path = dir / "run.conf";
    std::ofstream(path) << text << extra;
    return path.string();
}

}  // namespace testing
