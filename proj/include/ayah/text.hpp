#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ayah::text {

bool is_space(char c) noexcept;

std::string_view trim(std::string_view s) noexcept;

/// Replaces every run of ASCII whitespace with one space and trims both ends.
std::string collapse_whitespace(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);

/// Splits on runs of ASCII whitespace; no empty fields.
std::vector<std::string_view> split_whitespace(std::string_view s);

bool has_whitespace(std::string_view s) noexcept;

} // namespace ayah::text
