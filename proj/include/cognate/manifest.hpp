#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cognate/config.hpp"

namespace cognate {

#ifndef COGNATE_VERSION
#define COGNATE_VERSION "0.0.0"
#endif
inline constexpr const char* kToolVersion = COGNATE_VERSION;

// Everything needed to rerun a command bit-exactly: the config snapshot, the
// tool version and SHA-256 digests of every input and output file. Carries no
// wall-clock time, so identical runs write identical manifests.
class RunManifest {
public:
    RunManifest(std::string command, const ProjectConfig& config);

    void add_input(const std::string& path);
    void add_output(const std::string& path);
    void note(std::string key, std::string value);

    std::string render() const;
    // Writes <output_dir>/manifests/<command>.manifest and returns its path.
    std::string write(const std::string& output_dir) const;

private:
    std::string command_;
    std::vector<std::pair<std::string, std::string>> config_;
    std::vector<std::pair<std::string, std::string>> inputs_;
    std::vector<std::pair<std::string, std::string>> outputs_;
    std::vector<std::pair<std::string, std::string>> notes_;
};

}  // namespace cognate
