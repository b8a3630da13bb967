#pragma once

#include "extsleuth/common/url.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace extsleuth::detect {

enum class DomainClass { KnownBenign, ExfilIndicator, SuspiciousUnknown };

std::string_view to_string(DomainClass c);

/// Host-suffix lists. Entries match the host itself or any subdomain.
struct HostLists {
    std::vector<std::string> allowlist;
    std::vector<std::string> indicators;

    static HostLists defaults();
};

/// Newline-delimited host suffixes; '#' starts a comment, blanks are skipped.
std::vector<std::string> parse_host_list(std::string_view text);
/// Throws Error(Io) when unreadable.
std::vector<std::string> load_host_list(const std::filesystem::path& path);

/// discord(app).com /api/webhooks/... or /api/v<N>/webhooks/...
bool is_discord_webhook(const ParsedUrl& url);
/// api.telegram.org/bot<token>/...
bool is_chat_bot_endpoint(const ParsedUrl& url);

/// Allowlist first, then indicator patterns (chat webhooks, raw IP hosts,
/// the indicator list), else suspicious-unknown. Throws Error(MalformedUrl).
DomainClass classify_url(std::string_view url, const HostLists& lists);
DomainClass classify_url(const ParsedUrl& url, const HostLists& lists);

} // namespace extsleuth::detect
