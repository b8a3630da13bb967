#include "extsleuth/report/dynamic.hpp"
#include "extsleuth/common/error.hpp"
#include "extsleuth/common/text.hpp"
#include "extsleuth/common/url.hpp"

#include <map>
#include <set>

namespace extsleuth::report {

using detect::Finding;
using detect::Severity;
using sandbox::EventCategory;
using sandbox::SandboxEvent;

namespace {

bool is_cookie_read(const SandboxEvent& e)
{
    return e.action == "chrome.cookies.getAll" || e.action == "chrome.cookies.get" || e.action == "document.cookie.get";
}

bool is_clipboard_read(const SandboxEvent& e)
{
    return e.category == EventCategory::Clipboard && text::ends_with(e.action, "readText");
}

bool is_upload(const SandboxEvent& e)
{
    if (e.category != EventCategory::Network)
        return false;
    return e.action == "POST" || e.action == "PUT" || e.action == "PATCH" || e.action == "websocket-send" ||
           e.action == "socket-send";
}

std::string host_of(const SandboxEvent& e)
{
    try {
        return parse_url(sandbox::summary_url(e.argsSummary)).host;
    } catch (const Error&) {
        return std::string(sandbox::summary_url(e.argsSummary));
    }
}

Finding make(std::string rule, Severity sev, std::string title, std::string detail, const SandboxEvent& e)
{
    Finding f;
    f.ruleId = std::move(rule);
    f.severity = sev;
    f.title = std::move(title);
    f.detail = std::move(detail);
    f.evidence = text::truncate_with_marker(e.argsSummary, detect::kMaxEvidenceBytes);
    f.phase = detect::Phase::Dynamic;
    f.eventSeq = e.seq;
    return f;
}

// Findings that may repeat per destination host collapse onto the first
// event; later hits only bump the count in the detail text.
class Merger {
public:
    void add(const std::string& key, Finding f)
    {
        auto it = index_.find(key);
        if (it == index_.end()) {
            index_[key] = out_.size();
            counts_.push_back(1);
            out_.push_back(std::move(f));
        } else {
            ++counts_[it->second];
        }
    }

    std::vector<Finding> take()
    {
        for (std::size_t i = 0; i < out_.size(); ++i)
            if (counts_[i] > 1)
                out_[i].detail += " (" + std::to_string(counts_[i]) + " events)";
        return std::move(out_);
    }

private:
    std::map<std::string, std::size_t> index_;
    std::vector<Finding> out_;
    std::vector<std::size_t> counts_;
};

} // namespace

std::vector<Finding> derive_dynamic_findings(const std::vector<SandboxEvent>& events, const detect::HostLists& lists)
{
    Merger merged;
    std::optional<std::uint64_t> cookieRead;
    std::optional<std::uint64_t> clipboardRead;
    std::size_t unimplemented = 0;
    const SandboxEvent* firstUnimplemented = nullptr;

    for (auto& e : events) {
        if (is_cookie_read(e) && !cookieRead)
            cookieRead = e.seq;
        if (is_clipboard_read(e) && !clipboardRead)
            clipboardRead = e.seq;

        switch (e.category) {
        case EventCategory::Network: {
            auto host = host_of(e);
            std::optional<detect::DomainClass> cls;
            try {
                cls = detect::classify_url(sandbox::summary_url(e.argsSummary), lists);
            } catch (const Error&) {
            }
            if (cls == detect::DomainClass::ExfilIndicator) {
                merged.add("network-exfil-indicator " + host,
                           make("network-exfil-indicator", Severity::High, "Request to exfiltration endpoint",
                                e.action + " to " + host + ", a known exfiltration destination" +
                                    (e.blocked ? "; blocked by the sandbox" : ""),
                                e));
            } else if (cls == detect::DomainClass::SuspiciousUnknown) {
                merged.add("network-unknown-host " + host,
                           make("network-unknown-host", Severity::Medium, "Request to unrecognized host",
                                e.action + " to " + host + ", which is not on the allowlist", e));
            }
            if (is_upload(e) && cookieRead && *cookieRead < e.seq)
                merged.add("cookie-exfiltration " + host,
                           make("cookie-exfiltration", Severity::High, "Possible cookie exfiltration",
                                "Cookies were read (event " + std::to_string(*cookieRead) + ") before this upload to " + host,
                                e));
            if (is_upload(e) && clipboardRead && *clipboardRead < e.seq)
                merged.add("clipboard-exfiltration " + host,
                           make("clipboard-exfiltration", Severity::High, "Possible clipboard exfiltration",
                                "The clipboard was read (event " + std::to_string(*clipboardRead) + ") before this upload to " +
                                    host,
                                e));
            break;
        }
        case EventCategory::Process: {
            bool ps = text::icontains(e.argsSummary, "powershell");
            merged.add("process-exec " + std::to_string(e.seq),
                       make("process-exec", ps ? Severity::High : Severity::Medium,
                            ps ? "PowerShell execution attempt" : "Process execution attempt",
                            "Guest tried to run a command via " + e.action + (e.blocked ? "; it was not executed" : ""), e));
            break;
        }
        case EventCategory::Eval:
            merged.add("dynamic-eval", make("dynamic-eval", Severity::Medium, "Runtime code evaluation",
                                            "Code was compiled from a string at runtime via " + e.action, e));
            break;
        case EventCategory::ExtensionApi:
            if (e.action == "workbench.extensions.installExtension")
                merged.add("install-extension " + std::to_string(e.seq),
                           make("install-extension", Severity::Medium, "Programmatic extension install",
                                "The extension asked the editor to install another extension", e));
            if (e.action == "unimplemented-api") {
                if (!firstUnimplemented)
                    firstUnimplemented = &e;
                ++unimplemented;
            }
            break;
        default:
            break;
        }
    }
    auto out = merged.take();
    if (unimplemented > kUnimplementedStorm)
        out.push_back(make("unimplemented-api-storm", Severity::Info, "Many calls to unemulated APIs",
                           std::to_string(unimplemented) + " accesses to APIs the sandbox does not emulate; dynamic coverage may be partial",
                           *firstUnimplemented));
    return out;
}

} // namespace extsleuth::report
