#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ayah::io {

/// Reads a UTF-8 text file as lines. LF separates lines; a trailing CR on a
/// line is dropped. A final newline does not produce an empty last line.
std::vector<std::string> read_lines(const std::filesystem::path &path);

std::string read_file(const std::filesystem::path &path);

/// Writes `content` to a sibling temporary file and renames it over `path`,
/// so readers never observe a truncated file.
void write_file_atomic(const std::filesystem::path &path,
                       std::string_view content);

} // namespace ayah::io
