#include "extsleuth/common/base64.hpp"

#include <array>
#include <cstdint>

namespace extsleuth::base64 {

namespace {

constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

constexpr std::array<std::int8_t, 256> make_reverse()
{
    std::array<std::int8_t, 256> table {};
    for (auto& v : table)
        v = -1;
    for (int i = 0; i < 64; ++i)
        table[static_cast<unsigned char>(kAlphabet[i])] = static_cast<std::int8_t>(i);
    return table;
}

constexpr auto kReverse = make_reverse();

} // namespace

bool is_alphabet_char(char c)
{
    return kReverse[static_cast<unsigned char>(c)] >= 0 || c == '=';
}

std::optional<std::string> decode_strict(std::string_view in)
{
    if (in.empty() || in.size() % 4 != 0)
        return std::nullopt;
    std::size_t pad = 0;
    if (in.back() == '=')
        pad = (in[in.size() - 2] == '=') ? 2 : 1;

    std::string out;
    out.reserve(in.size() / 4 * 3);
    for (std::size_t i = 0; i < in.size(); i += 4) {
        bool last = i + 4 == in.size();
        std::uint32_t acc = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            char c = in[i + k];
            if (c == '=') {
                if (!last || k < 4 - pad)
                    return std::nullopt;
                acc <<= 6;
                continue;
            }
            auto v = kReverse[static_cast<unsigned char>(c)];
            if (v < 0)
                return std::nullopt;
            acc = (acc << 6) | static_cast<std::uint32_t>(v);
        }
        if (last && pad == 2 && (acc & 0xFFFF) != 0)
            return std::nullopt;
        if (last && pad == 1 && (acc & 0xFF) != 0)
            return std::nullopt;
        out.push_back(static_cast<char>((acc >> 16) & 0xFF));
        if (!(last && pad == 2))
            out.push_back(static_cast<char>((acc >> 8) & 0xFF));
        if (!(last && pad >= 1))
            out.push_back(static_cast<char>(acc & 0xFF));
    }
    return out;
}

std::string encode(std::string_view raw)
{
    std::string out;
    out.reserve((raw.size() + 2) / 3 * 4);
    std::size_t i = 0;
    auto byte = [&](std::size_t k) { return static_cast<std::uint32_t>(static_cast<unsigned char>(raw[k])); };
    for (; i + 3 <= raw.size(); i += 3) {
        std::uint32_t acc = (byte(i) << 16) | (byte(i + 1) << 8) | byte(i + 2);
        out.push_back(kAlphabet[(acc >> 18) & 63]);
        out.push_back(kAlphabet[(acc >> 12) & 63]);
        out.push_back(kAlphabet[(acc >> 6) & 63]);
        out.push_back(kAlphabet[acc & 63]);
    }
    auto rest = raw.size() - i;
    if (rest == 1) {
        std::uint32_t acc = byte(i) << 16;
        out.push_back(kAlphabet[(acc >> 18) & 63]);
        out.push_back(kAlphabet[(acc >> 12) & 63]);
        out += "==";
    } else if (rest == 2) {
        std::uint32_t acc = (byte(i) << 16) | (byte(i + 1) << 8);
        out.push_back(kAlphabet[(acc >> 18) & 63]);
        out.push_back(kAlphabet[(acc >> 12) & 63]);
        out.push_back(kAlphabet[(acc >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

} // namespace extsleuth::base64
