#include "extsleuth/sandbox/network.hpp"
#include "extsleuth/common/text.hpp"
#include "extsleuth/common/url.hpp"
#include "extsleuth/sandbox/event.hpp"

namespace extsleuth::sandbox {

std::atomic<std::size_t> NetworkGateway::liveRequests_{0};

NetworkGateway::NetworkGateway(NetworkPolicy policy, std::vector<StubResponse> stubs, LiveFetcher live)
    : policy_(policy)
    , stubs_(std::move(stubs))
    , live_(std::move(live))
{
}

std::string body_preview(std::string_view body)
{
    std::string out;
    for (auto cp : text::decode_utf8(text::utf8_prefix(body, kBodyPreviewBytes))) {
        if (cp.value < 0x20 || cp.value == 0x7F) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\x%02X", static_cast<unsigned>(cp.value));
            out += buf;
        } else {
            out.append(body.substr(cp.offset, cp.length));
        }
    }
    if (body.size() > kBodyPreviewBytes)
        out += "\xE2\x80\xA6";
    return out;
}

NetworkDecision NetworkGateway::handle(const NetworkRequest& req)
{
    NetworkDecision d;
    d.argsSummary = network_summary(req.url, req.body.size(), body_preview(req.body));
    switch (policy_) {
    case NetworkPolicy::Block:
        d.blocked = true;
        d.response.networkError = true;
        d.response.error = "blocked by sandbox policy";
        break;
    case NetworkPolicy::Stub: {
        d.response.status = 200;
        for (auto& s : stubs_) {
            if (glob_match(s.urlPattern, req.url)) {
                d.response.status = s.status;
                d.response.body = s.body;
                break;
            }
        }
        break;
    }
    case NetworkPolicy::Record:
        if (!live_) {
            d.blocked = true;
            d.response.networkError = true;
            d.response.error = "live network not enabled";
            break;
        }
        ++liveRequests_;
        d.response = live_(req);
        break;
    }
    return d;
}

} // namespace extsleuth::sandbox
