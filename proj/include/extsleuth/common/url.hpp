#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace extsleuth {

struct ParsedUrl {
    std::string scheme; // lower-case
    std::string host;   // lower-case, IPv6 without brackets
    std::optional<int> port;
    std::string path;   // path + query, "/" when empty
};

/// Accepts `scheme://authority[/path]`; `file:` URLs may have an empty host.
/// Throws Error(MalformedUrl).
ParsedUrl parse_url(std::string_view url);

bool is_ip_literal(std::string_view host);

/// `host` equals `suffix` or ends with "." + suffix.
bool host_matches_suffix(std::string_view host, std::string_view suffix);

/// Chrome match pattern: `<all_urls>` or `scheme://host/path` where scheme is
/// `*` (http/https/ws/wss) or concrete, host is `*`, `*.domain` or exact (an
/// optional port must match when given), and path is a glob where `*` spans
/// any run of characters, matched against path + query.
class MatchPattern {
public:
    /// Throws Error(MalformedMatchPattern).
    static MatchPattern parse(std::string_view pattern);

    bool matches(std::string_view url) const;
    bool matches(const ParsedUrl& url) const;
    const std::string& text() const { return text_; }

private:
    std::string text_;
    bool allUrls_ = false;
    std::string scheme_;
    bool anyHost_ = false;
    bool subdomains_ = false;
    std::string host_;
    std::optional<int> port_;
    std::string path_;
};

bool glob_match(std::string_view pattern, std::string_view s);

} // namespace extsleuth
