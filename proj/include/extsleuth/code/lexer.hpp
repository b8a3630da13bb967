#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace extsleuth::code {

enum class TokenType : std::uint8_t {
    Identifier, // includes keywords; parser decides
    PrivateName,
    Punct,
    Number,
    String,
    TemplateNoSub,
    TemplateHead,
    TemplateMiddle,
    TemplateTail,
    RegExp,
    End,
};

struct Token {
    TokenType type = TokenType::End;
    std::uint32_t offset = 0;
    std::uint32_t length = 0;
    bool newlineBefore = false;
    /// Identifier name (escapes resolved), cooked string/template text.
    std::string value;
    /// For template pieces: offset/length of the raw text between delimiters.
    std::uint32_t innerOffset = 0;
    std::uint32_t innerLength = 0;
};

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& msg, std::uint32_t offset)
        : std::runtime_error(msg)
        , offset_(offset)
    {
    }
    std::uint32_t offset() const { return offset_; }

private:
    std::uint32_t offset_;
};

/// Tokenizes a whole ECMAScript source. Regex-vs-division is decided from the
/// previous significant token. Throws SyntaxError on malformed input.
std::vector<Token> tokenize(std::string_view src);

/// Sorted byte offsets of line starts; maps offsets to 1-based line/column.
class LineIndex {
public:
    explicit LineIndex(std::string_view src);
    std::uint32_t line(std::uint32_t offset) const;
    std::uint32_t column(std::uint32_t offset) const;

private:
    std::vector<std::uint32_t> starts_;
};

} // namespace extsleuth::code
