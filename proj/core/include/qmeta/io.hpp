#pragma once

#include <filesystem>
#include <string>

namespace qmeta::io {

// Writes content to a temp file in the target directory, then renames over
// the destination, so readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

// Formats a double with 6 significant digits (results CSV convention).
std::string fmt6(double v);

}  // namespace qmeta::io
