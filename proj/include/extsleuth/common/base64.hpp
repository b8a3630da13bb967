#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace extsleuth::base64 {

bool is_alphabet_char(char c);

/// Strict RFC 4648 decoding: length must be a multiple of 4, '=' only as
/// trailing padding, and unused trailing bits must be zero. Anything else
/// yields nullopt, which keeps decode/encode a bijection on accepted input.
std::optional<std::string> decode_strict(std::string_view encoded);

std::string encode(std::string_view raw);

} // namespace extsleuth::base64
