#include "cognate/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "cognate/digest.hpp"
#include "cognate/error.hpp"

namespace cognate {

RunManifest::RunManifest(std::string command, const ProjectConfig& config)
    : command_(std::move(command)), config_(config.snapshot()) {}

void RunManifest::add_input(const std::string& path) { inputs_.emplace_back(path, sha256_file_hex(path)); }

void RunManifest::add_output(const std::string& path) { outputs_.emplace_back(path, sha256_file_hex(path)); }

void RunManifest::note(std::string key, std::string value) { notes_.emplace_back(std::move(key), std::move(value)); }

std::string RunManifest::render() const {
    std::ostringstream out;
    out << "# run manifest\n";
    out << "command = " << command_ << '\n';
    out << "tool_version = " << kToolVersion << '\n';
    out << "\n[config]\n";
    for (const auto& [k, v] : config_) out << k << " = " << v << '\n';
    if (!notes_.empty()) {
        out << "\n[run]\n";
        for (const auto& [k, v] : notes_) out << k << " = " << v << '\n';
    }
    out << "\n[inputs]\n";
    for (const auto& [path, digest] : inputs_) out << "sha256:" << digest << "  " << path << '\n';
    out << "\n[outputs]\n";
    for (const auto& [path, digest] : outputs_) out << "sha256:" << digest << "  " << path << '\n';
    return out.str();
}

std::string RunManifest::write(const std::string& output_dir) const {
    auto dir = std::filesystem::path(output_dir) / "manifests";
    std::filesystem::create_directories(dir);
    auto path = (dir / (command_ + ".manifest")).string();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(fmt::format("cannot write manifest '{}'", path));
    out << render();
    return path;
}

}  // namespace cognate
