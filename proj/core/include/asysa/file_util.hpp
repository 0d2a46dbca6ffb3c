#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace asysa {

/// Whole file as a string. Throws DataError when the file cannot be read.
std::string read_text_file(const std::filesystem::path& path);

/// Writes content to a sibling temp file and renames it into place, so
/// readers never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace asysa
