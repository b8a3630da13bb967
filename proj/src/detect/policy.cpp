#include "extsleuth/common/error.hpp"
#include "extsleuth/common/text.hpp"
#include "extsleuth/detect/rules.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace extsleuth::detect {

namespace {

struct Word {
    std::string lower;
    std::size_t offset;
};

std::vector<Word> words_of(std::string_view s)
{
    std::vector<Word> out;
    std::size_t i = 0;
    auto is_word = [](char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '\'' || c == '\xE2';
    };
    while (i < s.size()) {
        while (i < s.size() && !std::isalpha(static_cast<unsigned char>(s[i])))
            ++i;
        auto start = i;
        std::string w;
        while (i < s.size() && is_word(s[i])) {
            // fold the typographic apostrophe U+2019 into '
            if (s[i] == '\xE2') {
                if (s.substr(i, 3) == "\xE2\x80\x99") {
                    w += '\'';
                    i += 3;
                    continue;
                }
                break;
            }
            w += static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
            ++i;
        }
        if (!w.empty())
            out.push_back({w, start});
        else if (i == start)
            ++i;
    }
    return out;
}

/// Returns how many words the negation spans at `i` (0 if none).
std::size_t negation_at(const std::vector<Word>& w, std::size_t i)
{
    static constexpr std::array<std::string_view, 5> kSingle = {"never", "won't", "don't", "doesn't", "cannot"};
    if (std::find(kSingle.begin(), kSingle.end(), w[i].lower) != kSingle.end())
        return 1;
    if (i + 1 < w.size() && w[i + 1].lower == "not" &&
        (w[i].lower == "does" || w[i].lower == "do" || w[i].lower == "will"))
        return 2;
    return 0;
}

bool is_transfer_verb(std::string_view w)
{
    static constexpr std::array<std::string_view, 16> kForms = {
        "collect", "collects", "collected", "collecting", "share", "shares", "shared", "sharing",
        "transmit", "transmits", "transmitted", "transmitting", "send", "sends", "sending", "sent",
    };
    return std::find(kForms.begin(), kForms.end(), w) != kForms.end();
}

bool mentions_data(const std::vector<Word>& w)
{
    return std::any_of(w.begin(), w.end(), [](const Word& x) {
        return x.lower == "data" || x.lower == "information" || x.lower == "cookies" || x.lower == "cookie";
    });
}

bool is_upload_action(std::string_view action)
{
    return action == "POST" || action == "PUT" || action == "PATCH" || action == "sendBeacon" ||
           action == "websocket-send";
}

} // namespace

std::vector<PolicyClaim> extract_negative_claims(std::string_view policy)
{
    std::vector<PolicyClaim> out;
    std::size_t start = 0;
    auto flush = [&](std::size_t end) {
        auto raw = policy.substr(start, end - start);
        auto trimmed = text::trim(raw);
        if (!trimmed.empty()) {
            auto words = words_of(trimmed);
            bool claim = false;
            for (std::size_t i = 0; i < words.size() && !claim; ++i) {
                auto n = negation_at(words, i);
                if (n == 0)
                    continue;
                for (std::size_t k = i + n; k < words.size() && k < i + n + 6; ++k)
                    if (is_transfer_verb(words[k].lower)) {
                        claim = true;
                        break;
                    }
            }
            if (claim && mentions_data(words))
                out.push_back({std::string(trimmed), static_cast<std::size_t>(trimmed.data() - policy.data())});
        }
        start = end;
    };
    for (std::size_t i = 0; i < policy.size(); ++i) {
        char c = policy[i];
        bool terminator = c == '\n' ||
                          ((c == '.' || c == '!' || c == '?') &&
                           (i + 1 == policy.size() || std::isspace(static_cast<unsigned char>(policy[i + 1]))));
        if (terminator)
            flush(i + 1);
    }
    flush(policy.size());
    return out;
}

bool is_exfil_event(const sandbox::SandboxEvent& event, const HostLists& lists)
{
    if (event.category != sandbox::EventCategory::Network)
        return false;
    auto url = sandbox::summary_url(event.argsSummary);
    DomainClass cls;
    try {
        cls = classify_url(url, lists);
    } catch (const Error&) {
        return is_upload_action(event.action);
    }
    if (cls == DomainClass::ExfilIndicator)
        return true;
    return cls == DomainClass::SuspiciousUnknown && is_upload_action(event.action);
}

bool is_exfil_finding(const Finding& f)
{
    static constexpr std::array<std::string_view, 6> kRules = {
        "discord-webhook-url", "url-exfil-indicator", "cookies-api-plus-network",
        "cookie-exfiltration", "network-exfil-indicator", "clipboard-exfiltration",
    };
    return f.severity == Severity::High && std::find(kRules.begin(), kRules.end(), f.ruleId) != kRules.end();
}

std::vector<Finding> check_policy_consistency(const ingest::ExtensionArtifact& artifact,
                                              const std::vector<Finding>& findings,
                                              const std::vector<sandbox::SandboxEvent>& events,
                                              const HostLists& lists)
{
    std::vector<Finding> out;
    if (!artifact.privacyPolicyText)
        return out;
    const auto& policy = *artifact.privacyPolicyText;
    auto claims = extract_negative_claims(policy);
    if (claims.empty())
        return out;

    std::string support;
    for (auto& e : events) {
        if (is_exfil_event(e, lists)) {
            support = "sandbox event " + std::to_string(e.seq) + " (" + e.action + " " +
                      std::string(sandbox::summary_url(e.argsSummary)) + ")";
            break;
        }
    }
    if (support.empty()) {
        for (auto& f : findings) {
            if (is_exfil_finding(f)) {
                support = "finding " + (f.id.empty() ? f.ruleId : f.id);
                break;
            }
        }
    }
    if (support.empty())
        return out;

    const ingest::FileEntry* file = artifact.privacyPolicyPath ? artifact.find(*artifact.privacyPolicyPath) : nullptr;
    bool locatable = file && file->bytes == policy;
    for (auto& claim : claims) {
        std::string detail = "The privacy policy denies data transfer but " + support + " shows exfiltration.";
        Finding f;
        if (locatable) {
            f = make_located_finding("policy-contradiction", Severity::High, "Privacy policy contradicted by behavior",
                                     detail, file->path, file->bytes,
                                     span_at(file->bytes, claim.offset, claim.sentence.size()));
        } else {
            f.ruleId = "policy-contradiction";
            f.severity = Severity::High;
            f.title = "Privacy policy contradicted by behavior";
            f.detail = detail;
            f.evidence = std::string(text::utf8_prefix(claim.sentence, kMaxEvidenceBytes));
        }
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace extsleuth::detect
