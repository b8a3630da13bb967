#include "extsleuth/code/lexer.hpp"

#include "extsleuth/common/text.hpp"

#include <algorithm>
#include <array>

namespace extsleuth::code {

namespace {

bool is_line_terminator(char32_t c) { return c == '\n' || c == '\r' || c == 0x2028 || c == 0x2029; }

bool is_whitespace(char32_t c)
{
    switch (c) {
    case ' ': case '\t': case 0x0B: case 0x0C: case 0xA0: case 0xFEFF:
    case 0x1680: case 0x202F: case 0x205F: case 0x3000:
        return true;
    default:
        return c >= 0x2000 && c <= 0x200A;
    }
}

bool is_format_control(char32_t c)
{
    return c == 0x200B || c == 0x2060 || (c >= 0x202A && c <= 0x202E) || (c >= 0x2066 && c <= 0x2069);
}

bool is_id_start(char32_t c)
{
    if (c < 0x80)
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '$' || c == '_';
    return !is_whitespace(c) && !is_line_terminator(c) && !is_format_control(c) && c != 0x200C && c != 0x200D &&
           c != 0xFFFD;
}

bool is_id_part(char32_t c)
{
    if (c < 0x80)
        return is_id_start(c) || (c >= '0' && c <= '9');
    return c == 0x200C || c == 0x200D || is_id_start(c);
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_hex(char c) { return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'); }

int hex_val(char c)
{
    if (is_digit(c))
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    return c - 'A' + 10;
}

constexpr std::array<std::string_view, 52> kPuncts = {
    ">>>=", "...", "===", "!==", "**=", "<<=", ">>=", ">>>", "&&=", "||=", "?""?=",
    "=>", "==", "!=", "<=", ">=", "&&", "||", "??", "?.", "++", "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=",
    "^=", "**", "<<", ">>",
    "{", "}", "(", ")", "[", "]", ";", ",", "<", ">", "+", "-", "*", "/", "%", "&", "|", "^", "!",
};

class Lexer {
public:
    explicit Lexer(std::string_view src)
        : src_(src)
    {
    }

    std::vector<Token> run()
    {
        if (src_.substr(0, 2) == "#!") {
            while (pos_ < src_.size() && src_[pos_] != '\n')
                ++pos_;
        }
        while (true) {
            skip_trivia();
            if (pos_ >= src_.size()) {
                Token t;
                t.type = TokenType::End;
                t.offset = static_cast<std::uint32_t>(src_.size());
                t.newlineBefore = newline_;
                tokens_.push_back(std::move(t));
                break;
            }
            lex_token();
        }
        return std::move(tokens_);
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    bool newline_ = false;
    std::vector<Token> tokens_;
    // true entries mark a "${" whose closing brace resumes a template
    std::vector<bool> braces_;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const
    {
        throw SyntaxError(msg, static_cast<std::uint32_t>(at));
    }

    char32_t peek_cp(std::size_t at, std::size_t* len) const
    {
        auto c = static_cast<unsigned char>(src_[at]);
        if (c < 0x80) {
            *len = 1;
            return c;
        }
        auto tail = src_.substr(at, std::min<std::size_t>(4, src_.size() - at));
        auto cps = text::decode_utf8(tail);
        *len = cps.front().length;
        return cps.front().value;
    }

    void skip_trivia()
    {
        newline_ = false;
        while (pos_ < src_.size()) {
            std::size_t len = 1;
            char32_t c = peek_cp(pos_, &len);
            if (is_line_terminator(c)) {
                newline_ = true;
                pos_ += len;
            } else if (is_whitespace(c)) {
                pos_ += len;
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '\r')
                    ++pos_;
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
                auto end = src_.find("*/", pos_ + 2);
                if (end == std::string_view::npos)
                    fail("unterminated comment", pos_);
                auto body = src_.substr(pos_, end - pos_);
                if (body.find('\n') != std::string_view::npos || body.find('\r') != std::string_view::npos)
                    newline_ = true;
                pos_ = end + 2;
            } else if (c == '<' && src_.substr(pos_, 4) == "<!--") {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    ++pos_;
            } else if (c == '-' && newline_ && src_.substr(pos_, 3) == "-->") {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    ++pos_;
            } else {
                break;
            }
        }
    }

    bool regex_allowed() const
    {
        if (tokens_.empty())
            return true;
        auto& t = tokens_.back();
        switch (t.type) {
        case TokenType::Punct: {
            auto p = src_.substr(t.offset, t.length);
            return p != ")" && p != "]" && p != "}";
        }
        case TokenType::Identifier: {
            static constexpr std::string_view kw[] = {"return", "typeof", "instanceof", "in", "of", "new",
                                                      "delete", "void", "throw", "case", "do", "else",
                                                      "yield", "await"};
            return std::find(std::begin(kw), std::end(kw), t.value) != std::end(kw);
        }
        default:
            return false;
        }
    }

    void push(Token t)
    {
        t.newlineBefore = newline_;
        tokens_.push_back(std::move(t));
    }

    void lex_token()
    {
        std::size_t len = 1;
        char32_t c = peek_cp(pos_, &len);
        char ch = src_[pos_];
        if (c == '`') {
            lex_template(pos_, true);
            return;
        }
        if (ch == '}' && !braces_.empty() && braces_.back()) {
            braces_.pop_back();
            lex_template(pos_, false);
            return;
        }
        if (is_id_start(c) || c == '\\') {
            lex_identifier(TokenType::Identifier, pos_);
            return;
        }
        if (ch == '#') {
            ++pos_;
            if (pos_ >= src_.size())
                fail("unexpected '#'", pos_ - 1);
            lex_identifier(TokenType::PrivateName, pos_ - 1);
            return;
        }
        if (is_digit(ch) || (ch == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
            lex_number();
            return;
        }
        if (ch == '"' || ch == '\'') {
            lex_string(ch);
            return;
        }
        if (ch == '/' && regex_allowed()) {
            lex_regex();
            return;
        }
        for (auto p : kPuncts) {
            if (src_.substr(pos_, p.size()) == p) {
                if (p == "?." && pos_ + 2 < src_.size() && is_digit(src_[pos_ + 2]))
                    continue;
                emit_punct(p.size());
                return;
            }
        }
        if (ch == '?' || ch == ':' || ch == '=' || ch == '.' || ch == '~' || ch == '@') {
            emit_punct(1);
            return;
        }
        fail("unexpected character", pos_);
    }

    void emit_punct(std::size_t n)
    {
        Token t;
        t.type = TokenType::Punct;
        t.offset = static_cast<std::uint32_t>(pos_);
        t.length = static_cast<std::uint32_t>(n);
        t.value = std::string(src_.substr(pos_, n));
        if (t.value == "{")
            braces_.push_back(false);
        else if (t.value == "}" && !braces_.empty())
            braces_.pop_back();
        pos_ += n;
        push(std::move(t));
    }

    char32_t read_unicode_escape(std::size_t& p)
    {
        // p points after "\u"
        char32_t v = 0;
        if (p < src_.size() && src_[p] == '{') {
            ++p;
            std::size_t digits = 0;
            while (p < src_.size() && is_hex(src_[p])) {
                v = v * 16 + static_cast<char32_t>(hex_val(src_[p++]));
                if (++digits > 8 || v > 0x10FFFF)
                    fail("bad unicode escape", p);
            }
            if (p >= src_.size() || src_[p] != '}' || digits == 0)
                fail("bad unicode escape", p);
            ++p;
            return v;
        }
        for (int i = 0; i < 4; ++i) {
            if (p >= src_.size() || !is_hex(src_[p]))
                fail("bad unicode escape", p);
            v = v * 16 + static_cast<char32_t>(hex_val(src_[p++]));
        }
        return v;
    }

    void lex_identifier(TokenType type, std::size_t start)
    {
        std::string name;
        bool first = true;
        while (pos_ < src_.size()) {
            std::size_t len = 1;
            char32_t c = peek_cp(pos_, &len);
            if (c == '\\') {
                if (pos_ + 1 >= src_.size() || src_[pos_ + 1] != 'u')
                    fail("bad escape in identifier", pos_);
                std::size_t p = pos_ + 2;
                char32_t v = read_unicode_escape(p);
                text::append_utf8(name, v);
                pos_ = p;
            } else if (first ? is_id_start(c) : is_id_part(c)) {
                name.append(src_.substr(pos_, len));
                pos_ += len;
            } else {
                break;
            }
            first = false;
        }
        if (name.empty())
            fail("expected identifier", start);
        Token t;
        t.type = type;
        t.offset = static_cast<std::uint32_t>(start);
        t.length = static_cast<std::uint32_t>(pos_ - start);
        t.value = std::move(name);
        push(std::move(t));
    }

    void lex_number()
    {
        std::size_t start = pos_;
        auto digits = [&](auto pred) {
            while (pos_ < src_.size() && (pred(src_[pos_]) || src_[pos_] == '_'))
                ++pos_;
        };
        if (src_[pos_] == '0' && pos_ + 1 < src_.size() &&
            std::string_view("xXoObB").find(src_[pos_ + 1]) != std::string_view::npos) {
            char kind = static_cast<char>(std::tolower(src_[pos_ + 1]));
            pos_ += 2;
            std::size_t before = pos_;
            if (kind == 'x')
                digits(is_hex);
            else if (kind == 'o')
                digits([](char c) { return c >= '0' && c <= '7'; });
            else
                digits([](char c) { return c == '0' || c == '1'; });
            if (pos_ == before)
                fail("malformed number", start);
        } else {
            digits(is_digit);
            if (pos_ < src_.size() && src_[pos_] == '.') {
                ++pos_;
                digits(is_digit);
            }
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                ++pos_;
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
                    ++pos_;
                std::size_t before = pos_;
                digits(is_digit);
                if (pos_ == before)
                    fail("malformed exponent", start);
            }
        }
        if (pos_ < src_.size() && src_[pos_] == 'n')
            ++pos_;
        if (pos_ < src_.size()) {
            std::size_t len = 1;
            if (is_id_start(peek_cp(pos_, &len)) || is_digit(src_[pos_]))
                fail("identifier directly after number", pos_);
        }
        Token t;
        t.type = TokenType::Number;
        t.offset = static_cast<std::uint32_t>(start);
        t.length = static_cast<std::uint32_t>(pos_ - start);
        t.value = std::string(src_.substr(start, pos_ - start));
        push(std::move(t));
    }

    // Reads one escape sequence after a backslash at p; appends the cooked value.
    void read_escape(std::size_t& p, std::string& out)
    {
        if (p >= src_.size())
            fail("unterminated escape", p);
        char e = src_[p];
        switch (e) {
        case 'n': out.push_back('\n'); ++p; return;
        case 't': out.push_back('\t'); ++p; return;
        case 'r': out.push_back('\r'); ++p; return;
        case 'b': out.push_back('\b'); ++p; return;
        case 'f': out.push_back('\f'); ++p; return;
        case 'v': out.push_back('\v'); ++p; return;
        case '\r':
            ++p;
            if (p < src_.size() && src_[p] == '\n')
                ++p;
            return;
        case '\n': ++p; return;
        case 'x': {
            if (p + 2 >= src_.size() || !is_hex(src_[p + 1]) || !is_hex(src_[p + 2]))
                fail("bad hex escape", p);
            text::append_utf8(out, static_cast<char32_t>(hex_val(src_[p + 1]) * 16 + hex_val(src_[p + 2])));
            p += 3;
            return;
        }
        case 'u': {
            ++p;
            char32_t v = read_unicode_escape(p);
            // surrogate pair written as two escapes
            if (v >= 0xD800 && v <= 0xDBFF && src_.substr(p, 2) == "\\u") {
                std::size_t q = p + 2;
                char32_t lo = read_unicode_escape(q);
                if (lo >= 0xDC00 && lo <= 0xDFFF) {
                    v = 0x10000 + ((v - 0xD800) << 10) + (lo - 0xDC00);
                    p = q;
                }
            }
            text::append_utf8(out, v);
            return;
        }
        default:
            if (e >= '0' && e <= '7') {
                int v = 0;
                int n = 0;
                while (n < 3 && p < src_.size() && src_[p] >= '0' && src_[p] <= '7' && v * 8 + (src_[p] - '0') < 256) {
                    v = v * 8 + (src_[p] - '0');
                    ++p;
                    ++n;
                }
                text::append_utf8(out, static_cast<char32_t>(v));
                return;
            }
            std::size_t len = 1;
            peek_cp(p, &len);
            out.append(src_.substr(p, len));
            p += len;
        }
    }

    void lex_string(char quote)
    {
        std::size_t start = pos_;
        std::size_t p = pos_ + 1;
        std::string value;
        while (true) {
            if (p >= src_.size())
                fail("unterminated string", start);
            char c = src_[p];
            if (c == quote)
                break;
            if (c == '\n' || c == '\r')
                fail("unterminated string", start);
            if (c == '\\') {
                ++p;
                read_escape(p, value);
                continue;
            }
            value.push_back(c);
            ++p;
        }
        Token t;
        t.type = TokenType::String;
        t.offset = static_cast<std::uint32_t>(start);
        t.length = static_cast<std::uint32_t>(p + 1 - start);
        t.innerOffset = static_cast<std::uint32_t>(start + 1);
        t.innerLength = static_cast<std::uint32_t>(p - start - 1);
        t.value = std::move(value);
        pos_ = p + 1;
        push(std::move(t));
    }

    void lex_template(std::size_t start, bool head)
    {
        std::size_t p = start + 1;
        std::string cooked;
        while (true) {
            if (p >= src_.size())
                fail("unterminated template", start);
            char c = src_[p];
            if (c == '`') {
                finish_template(start, p, p + 1, head ? TokenType::TemplateNoSub : TokenType::TemplateTail,
                                std::move(cooked));
                return;
            }
            if (c == '$' && p + 1 < src_.size() && src_[p + 1] == '{') {
                braces_.push_back(true);
                finish_template(start, p, p + 2, head ? TokenType::TemplateHead : TokenType::TemplateMiddle,
                                std::move(cooked));
                return;
            }
            if (c == '\\') {
                ++p;
                read_escape(p, cooked);
                continue;
            }
            cooked.push_back(c);
            ++p;
        }
    }

    void finish_template(std::size_t start, std::size_t innerEnd, std::size_t end, TokenType type, std::string cooked)
    {
        Token t;
        t.type = type;
        t.offset = static_cast<std::uint32_t>(start);
        t.length = static_cast<std::uint32_t>(end - start);
        t.innerOffset = static_cast<std::uint32_t>(start + 1);
        t.innerLength = static_cast<std::uint32_t>(innerEnd - start - 1);
        t.value = std::move(cooked);
        pos_ = end;
        push(std::move(t));
    }

    void lex_regex()
    {
        std::size_t start = pos_;
        std::size_t p = pos_ + 1;
        bool inClass = false;
        while (true) {
            if (p >= src_.size() || src_[p] == '\n' || src_[p] == '\r')
                fail("unterminated regular expression", start);
            char c = src_[p];
            if (c == '\\') {
                p += 2;
                continue;
            }
            if (c == '[')
                inClass = true;
            else if (c == ']')
                inClass = false;
            else if (c == '/' && !inClass)
                break;
            ++p;
        }
        ++p;
        while (p < src_.size()) {
            std::size_t len = 1;
            if (!is_id_part(peek_cp(p, &len)))
                break;
            p += len;
        }
        Token t;
        t.type = TokenType::RegExp;
        t.offset = static_cast<std::uint32_t>(start);
        t.length = static_cast<std::uint32_t>(p - start);
        t.value = std::string(src_.substr(start, p - start));
        pos_ = p;
        push(std::move(t));
    }
};

} // namespace

std::vector<Token> tokenize(std::string_view src)
{
    return Lexer(src).run();
}

LineIndex::LineIndex(std::string_view src)
{
    starts_.push_back(0);
    for (std::size_t i = 0; i < src.size(); ++i)
        if (src[i] == '\n')
            starts_.push_back(static_cast<std::uint32_t>(i + 1));
}

std::uint32_t LineIndex::line(std::uint32_t offset) const
{
    auto it = std::upper_bound(starts_.begin(), starts_.end(), offset);
    return static_cast<std::uint32_t>(it - starts_.begin());
}

std::uint32_t LineIndex::column(std::uint32_t offset) const
{
    auto it = std::upper_bound(starts_.begin(), starts_.end(), offset);
    return offset - *(it - 1) + 1;
}

} // namespace extsleuth::code
