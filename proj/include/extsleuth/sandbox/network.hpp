#pragma once

#include "extsleuth/sandbox/scenario.hpp"

#include <atomic>
#include <functional>
#include <optional>
#include <string>

namespace extsleuth::sandbox {

inline constexpr std::size_t kBodyPreviewBytes = 128;

struct NetworkRequest {
    std::string method;
    std::string url;
    std::string body;
};

struct NetworkResponse {
    bool networkError = false;
    int status = 0;
    std::string body;
    std::string error;
};

/// Performs a real request; only consulted under the record policy.
using LiveFetcher = std::function<NetworkResponse(const NetworkRequest&)>;

/// The policy decision for one guest request plus what gets logged.
struct NetworkDecision {
    NetworkResponse response;
    bool blocked = false;
    std::string argsSummary;
};

class NetworkGateway {
public:
    NetworkGateway(NetworkPolicy policy, std::vector<StubResponse> stubs, LiveFetcher live = nullptr);

    NetworkDecision handle(const NetworkRequest& req);

    NetworkPolicy policy() const { return policy_; }

    /// Process-wide count of live fetches ever attempted; the containment
    /// tests assert it stays at zero under block and stub.
    static std::size_t live_requests() { return liveRequests_.load(); }

private:
    NetworkPolicy policy_;
    std::vector<StubResponse> stubs_;
    LiveFetcher live_;
    static std::atomic<std::size_t> liveRequests_;
};

/// Printable preview of a request body: control bytes escaped, cut at
/// kBodyPreviewBytes.
std::string body_preview(std::string_view body);

/// Real HTTP(S) client used for the record policy.
NetworkResponse live_fetch(const NetworkRequest& req);

} // namespace extsleuth::sandbox
