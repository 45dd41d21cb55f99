#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace elsmark {

// I/O problems map to exit code 1; configuration problems (including
// std::invalid_argument from the library) map to exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     std::string_view content);

// Regular files of a corpus directory in sorted order. Throws ConfigError
// when the directory yields no files, IoError when it cannot be read.
std::vector<std::filesystem::path> list_corpus_files(
    const std::filesystem::path& dir, bool recursive);

// FNV-1a 64 digest as 16 hex characters; input fingerprint for manifests.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace elsmark
