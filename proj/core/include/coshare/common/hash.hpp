#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace coshare {

std::string sha256_hex(std::string_view data);

/// Digest of a file's bytes; throws DataError if it cannot be read.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace coshare
