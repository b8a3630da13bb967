#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace extsleuth::text {

/// One decoded code point and where it sits in the UTF-8 source.
struct CodePoint {
    char32_t value;
    std::size_t offset; // byte offset
    std::size_t length; // byte length, 1 for invalid bytes
};

/// Lenient UTF-8 decoding: every invalid byte becomes U+FFFD of length 1,
/// so any byte string decodes and offsets always tile the input.
std::vector<CodePoint> decode_utf8(std::string_view s);

void append_utf8(std::string& out, char32_t cp);

/// Largest prefix of `s` that is at most `max_bytes` long and does not end
/// inside a multi-byte sequence.
std::string_view utf8_prefix(std::string_view s, std::size_t max_bytes);

/// Truncates to at most `max_bytes` bytes including the trailing marker when
/// truncation happens.
std::string truncate_with_marker(std::string_view s, std::size_t max_bytes,
                                 std::string_view marker = "\xE2\x80\xA6");

std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool icontains(std::string_view haystack, std::string_view needle);
bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);
std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// Collapses runs of ASCII whitespace into a single space and trims.
std::string collapse_whitespace(std::string_view s);

/// 1-based line and byte column for a byte offset.
struct LineCol {
    std::uint32_t line;
    std::uint32_t column;
};
LineCol line_col(std::string_view s, std::size_t offset);

std::string human_size(std::size_t bytes);

} // namespace extsleuth::text
