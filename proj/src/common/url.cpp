#include "extsleuth/common/url.hpp"
#include "extsleuth/common/error.hpp"
#include "extsleuth/common/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

namespace extsleuth {

namespace {

bool valid_scheme(std::string_view s)
{
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0])))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
    });
}

bool valid_host_char(char c)
{
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '-' || c == '.' || c == '_' || c == '~' || c == '%' || u >= 0x80;
}

std::optional<int> parse_port(std::string_view s)
{
    if (s.empty() || s.size() > 5)
        return std::nullopt;
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v > 65535)
        return std::nullopt;
    return v;
}

std::optional<int> default_port(std::string_view scheme)
{
    if (scheme == "http" || scheme == "ws")
        return 80;
    if (scheme == "https" || scheme == "wss")
        return 443;
    if (scheme == "ftp")
        return 21;
    return std::nullopt;
}

} // namespace

ParsedUrl parse_url(std::string_view url)
{
    auto fail = [&](const char* why) -> ParsedUrl {
        throw Error(ErrorCode::MalformedUrl, std::string(why) + ": " + std::string(text::utf8_prefix(url, 200)));
    };
    auto sep = url.find("://");
    if (sep == std::string_view::npos || !valid_scheme(url.substr(0, sep)))
        return fail("missing scheme");
    ParsedUrl out;
    out.scheme = text::to_lower(url.substr(0, sep));
    auto rest = url.substr(sep + 3);
    auto authEnd = rest.find_first_of("/?#");
    auto authority = rest.substr(0, authEnd);
    auto tail = authEnd == std::string_view::npos ? std::string_view{} : rest.substr(authEnd);
    if (auto at = authority.rfind('@'); at != std::string_view::npos)
        authority = authority.substr(at + 1);

    std::string_view host = authority;
    std::string_view port;
    if (!authority.empty() && authority[0] == '[') {
        auto close = authority.find(']');
        if (close == std::string_view::npos)
            return fail("unterminated IPv6 host");
        host = authority.substr(1, close - 1);
        auto after = authority.substr(close + 1);
        if (!after.empty()) {
            if (after[0] != ':')
                return fail("junk after IPv6 host");
            port = after.substr(1);
        }
        if (host.empty() || !std::all_of(host.begin(), host.end(), [](char c) {
                return std::isxdigit(static_cast<unsigned char>(c)) || c == ':' || c == '.';
            }))
            return fail("bad IPv6 host");
    } else {
        if (auto colon = authority.rfind(':'); colon != std::string_view::npos) {
            host = authority.substr(0, colon);
            port = authority.substr(colon + 1);
        }
        if (!std::all_of(host.begin(), host.end(), valid_host_char))
            return fail("bad host");
    }
    if (host.empty() && out.scheme != "file")
        return fail("empty host");
    if (!port.empty() || (authority.size() && authority.back() == ':')) {
        auto p = parse_port(port);
        if (!p)
            return fail("bad port");
        out.port = p;
    }
    out.host = text::to_lower(host);
    if (auto hash = tail.find('#'); hash != std::string_view::npos)
        tail = tail.substr(0, hash);
    out.path = tail.empty() || tail[0] != '/' ? "/" + std::string(tail) : std::string(tail);
    return out;
}

bool is_ip_literal(std::string_view host)
{
    if (host.find(':') != std::string_view::npos)
        return std::all_of(host.begin(), host.end(), [](char c) {
            return std::isxdigit(static_cast<unsigned char>(c)) || c == ':' || c == '.';
        });
    auto parts = text::split(host, '.');
    if (parts.size() != 4)
        return false;
    for (auto& p : parts) {
        if (p.empty() || p.size() > 3 || !std::all_of(p.begin(), p.end(), [](char c) { return c >= '0' && c <= '9'; }))
            return false;
        if (std::stoi(p) > 255)
            return false;
    }
    return true;
}

bool host_matches_suffix(std::string_view host, std::string_view suffix)
{
    while (!suffix.empty() && suffix.front() == '.')
        suffix.remove_prefix(1);
    if (suffix.empty())
        return false;
    if (host.size() == suffix.size())
        return text::iequals(host, suffix);
    return host.size() > suffix.size() && host[host.size() - suffix.size() - 1] == '.' &&
           text::iequals(host.substr(host.size() - suffix.size()), suffix);
}

bool glob_match(std::string_view pattern, std::string_view s)
{
    // Iterative wildcard matching with single backtrack point.
    std::size_t p = 0, i = 0, star = std::string_view::npos, mark = 0;
    while (i < s.size()) {
        if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = i;
        } else if (p < pattern.size() && pattern[p] == s[i]) {
            ++p;
            ++i;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            i = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*')
        ++p;
    return p == pattern.size();
}

MatchPattern MatchPattern::parse(std::string_view pattern)
{
    auto fail = [&](const char* why) -> MatchPattern {
        throw Error(ErrorCode::MalformedMatchPattern, std::string(why) + ": " + std::string(text::utf8_prefix(pattern, 200)));
    };
    MatchPattern mp;
    mp.text_ = std::string(pattern);
    if (pattern == "<all_urls>") {
        mp.allUrls_ = true;
        return mp;
    }
    auto sep = pattern.find("://");
    if (sep == std::string_view::npos)
        return fail("missing scheme separator");
    auto scheme = pattern.substr(0, sep);
    static constexpr std::array<std::string_view, 8> kSchemes = {"*", "http", "https", "ws", "wss", "ftp", "file", "urn"};
    if (std::find(kSchemes.begin(), kSchemes.end(), scheme) == kSchemes.end())
        return fail("unsupported scheme");
    mp.scheme_ = std::string(scheme);
    auto rest = pattern.substr(sep + 3);
    auto slash = rest.find('/');
    if (slash == std::string_view::npos)
        return fail("missing path");
    auto host = rest.substr(0, slash);
    mp.path_ = std::string(rest.substr(slash));
    if (scheme == "file") {
        if (!host.empty() && host != "*")
            return fail("file pattern with host");
        mp.anyHost_ = true;
        return mp;
    }
    if (host.empty())
        return fail("empty host");
    if (auto colon = host.rfind(':'); colon != std::string_view::npos && host.find(']') == std::string_view::npos) {
        auto port = host.substr(colon + 1);
        host = host.substr(0, colon);
        if (port != "*") {
            auto p = parse_port(port);
            if (!p)
                return fail("bad port");
            mp.port_ = p;
        }
    }
    if (host == "*") {
        mp.anyHost_ = true;
    } else {
        if (text::starts_with(host, "*.")) {
            mp.subdomains_ = true;
            host.remove_prefix(2);
        }
        if (host.empty() || host.find('*') != std::string_view::npos)
            return fail("wildcard inside host");
        mp.host_ = text::to_lower(host);
    }
    return mp;
}

bool MatchPattern::matches(std::string_view url) const
{
    try {
        return matches(parse_url(url));
    } catch (const Error&) {
        return false;
    }
}

bool MatchPattern::matches(const ParsedUrl& url) const
{
    if (allUrls_) {
        static constexpr std::array<std::string_view, 7> kAll = {"http", "https", "ws", "wss", "ftp", "file", "urn"};
        return std::find(kAll.begin(), kAll.end(), url.scheme) != kAll.end();
    }
    if (scheme_ == "*") {
        if (url.scheme != "http" && url.scheme != "https" && url.scheme != "ws" && url.scheme != "wss")
            return false;
    } else if (url.scheme != scheme_) {
        return false;
    }
    if (!anyHost_) {
        if (subdomains_ ? !host_matches_suffix(url.host, host_) : url.host != host_)
            return false;
    }
    if (port_) {
        auto effective = url.port ? url.port : default_port(url.scheme);
        if (effective != port_)
            return false;
    }
    return glob_match(path_, url.path);
}

} // namespace extsleuth
