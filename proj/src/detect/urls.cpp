#include "extsleuth/detect/urls.hpp"
#include "extsleuth/common/error.hpp"
#include "extsleuth/common/text.hpp"

#include <fstream>
#include <sstream>

namespace extsleuth::detect {

std::string_view to_string(DomainClass c)
{
    switch (c) {
    case DomainClass::KnownBenign: return "known-benign";
    case DomainClass::ExfilIndicator: return "exfil-indicator";
    case DomainClass::SuspiciousUnknown: return "suspicious-unknown";
    }
    return "suspicious-unknown";
}

HostLists HostLists::defaults()
{
    HostLists l;
    l.allowlist = {
        // analytics and first-party platform endpoints
        "google-analytics.com", "analytics.google.com", "googletagmanager.com", "googleapis.com",
        "gstatic.com", "chrome.google.com", "chromewebstore.google.com", "clients2.google.com",
        // standards, registries and documentation hosts that appear in library code
        "w3.org", "whatwg.org", "mozilla.org", "developer.mozilla.org", "ecma-international.org",
        "schema.org", "json-schema.org", "unicode.org", "ietf.org",
        "npmjs.org", "npmjs.com", "registry.npmjs.org", "nodejs.org", "jquery.com", "jquery.org",
        "jsdelivr.net", "cdnjs.cloudflare.com", "unpkg.com", "lodash.com", "momentjs.com", "reactjs.org",
        "marketplace.visualstudio.com", "code.visualstudio.com", "github.com", "opensource.org",
        "example.com", "example.org", "example.net",
    };
    l.indicators = {
        "cyberhavenext.pro",
        "webhook.site",
        "requestbin.net",
        "pipedream.net",
        "ngrok.io",
        "ngrok-free.app",
        "interact.sh",
        "oast.fun",
        "burpcollaborator.net",
    };
    return l;
}

std::vector<std::string> parse_host_list(std::string_view text)
{
    std::vector<std::string> out;
    for (auto& raw : text::split(text, '\n')) {
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = text::trim(line);
        while (!line.empty() && line.front() == '.')
            line.remove_prefix(1);
        if (!line.empty())
            out.push_back(text::to_lower(line));
    }
    return out;
}

std::vector<std::string> load_host_list(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::Io, "cannot read host list " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_host_list(ss.str());
}

bool is_discord_webhook(const ParsedUrl& url)
{
    if (!host_matches_suffix(url.host, "discord.com") && !host_matches_suffix(url.host, "discordapp.com"))
        return false;
    std::string_view p = url.path;
    if (text::starts_with(p, "/api/webhooks/"))
        return true;
    if (!text::starts_with(p, "/api/v"))
        return false;
    p.remove_prefix(6);
    std::size_t digits = 0;
    while (digits < p.size() && p[digits] >= '0' && p[digits] <= '9')
        ++digits;
    return digits > 0 && text::starts_with(p.substr(digits), "/webhooks/");
}

bool is_chat_bot_endpoint(const ParsedUrl& url)
{
    return url.host == "api.telegram.org" && text::starts_with(url.path, "/bot");
}

DomainClass classify_url(const ParsedUrl& url, const HostLists& lists)
{
    for (auto& s : lists.allowlist)
        if (host_matches_suffix(url.host, s))
            return DomainClass::KnownBenign;
    if (is_discord_webhook(url) || is_chat_bot_endpoint(url) || is_ip_literal(url.host))
        return DomainClass::ExfilIndicator;
    for (auto& s : lists.indicators)
        if (host_matches_suffix(url.host, s))
            return DomainClass::ExfilIndicator;
    return DomainClass::SuspiciousUnknown;
}

DomainClass classify_url(std::string_view url, const HostLists& lists)
{
    return classify_url(parse_url(url), lists);
}

} // namespace extsleuth::detect
