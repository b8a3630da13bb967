#pragma once

#include "extsleuth/chrono/scheduler.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace extsleuth::sandbox {

enum class NetworkPolicy { Block, Stub, Record };

std::string_view to_string(NetworkPolicy p);
std::optional<NetworkPolicy> parse_network_policy(std::string_view s);

struct Navigation {
    std::string url;
    std::int64_t atVirtualTimeMs = 0; // offset from virtualStartDate

    bool operator==(const Navigation&) const = default;
};

struct Cookie {
    std::string name;
    std::string value;

    bool operator==(const Cookie&) const = default;
};

struct StubResponse {
    std::string urlPattern; // glob over the full URL, '*' wildcard
    int status = 200;
    std::string body;

    bool operator==(const StubResponse&) const = default;
};

struct ScenarioConfig {
    std::int64_t virtualStartDate = chrono::kDefaultStartMs;
    std::int64_t fastForwardThresholdMs = chrono::kDefaultThresholdMs;
    std::int64_t maxVirtualHorizonMs = chrono::kDefaultHorizonMs;
    std::int64_t maxTasks = static_cast<std::int64_t>(chrono::kDefaultMaxTasks);
    bool pseudoRealTime = false;
    std::vector<Navigation> navigations;
    std::map<std::string, std::vector<Cookie>> cookieJar; // host -> cookies
    std::optional<std::string> clipboardText;
    NetworkPolicy networkPolicy = NetworkPolicy::Stub;
    std::vector<StubResponse> stubResponses; // first match wins
    std::map<std::string, nlohmann::json> dummyStorage;

    /// The built-in scenario: two sensitive-site navigations with synthetic
    /// session cookies, stub networking.
    static ScenarioConfig defaults();

    chrono::FastForwardPolicy fast_forward() const;
    bool operator==(const ScenarioConfig&) const = default;
};

/// Throws Error(InvalidScenario) naming the first violated rule.
void validate(const ScenarioConfig& s);

/// Canonical JSON (sorted keys, every field present).
nlohmann::json to_json(const ScenarioConfig& s);

/// Fields absent from `j` keep the values of `base`. Unknown keys and
/// ill-typed values are rejected. The result is validated.
ScenarioConfig scenario_from_json(const nlohmann::json& j, const ScenarioConfig& base = ScenarioConfig::defaults());
ScenarioConfig parse_scenario(std::string_view text, const ScenarioConfig& base = ScenarioConfig::defaults());

/// SHA-256 of the canonical JSON; the cache key component for scenarios.
std::string scenario_hash(const ScenarioConfig& s);

} // namespace extsleuth::sandbox
