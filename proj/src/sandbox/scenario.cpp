#include "extsleuth/sandbox/scenario.hpp"
#include "extsleuth/common/error.hpp"
#include "extsleuth/common/hash.hpp"
#include "extsleuth/common/url.hpp"

#include <algorithm>

namespace extsleuth::sandbox {

namespace {

constexpr std::int64_t kMaxTimeValue = 8'640'000'000'000'000; // ECMAScript Date range

[[noreturn]] void invalid(const std::string& why)
{
    throw Error(ErrorCode::InvalidScenario, why);
}

template <typename T>
T get_as(const nlohmann::json& j, const char* key)
{
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        invalid(std::string("field \"") + key + "\" has the wrong type");
    }
}

std::int64_t get_int(const nlohmann::json& j, const char* key)
{
    if (!j.is_number_integer() && !(j.is_number_float() && j.get<double>() == static_cast<double>(static_cast<std::int64_t>(j.get<double>()))))
        invalid(std::string("field \"") + key + "\" must be an integer");
    return j.is_number_integer() ? j.get<std::int64_t>() : static_cast<std::int64_t>(j.get<double>());
}

} // namespace

std::string_view to_string(NetworkPolicy p)
{
    switch (p) {
    case NetworkPolicy::Block: return "block";
    case NetworkPolicy::Stub: return "stub";
    case NetworkPolicy::Record: return "record";
    }
    return "stub";
}

std::optional<NetworkPolicy> parse_network_policy(std::string_view s)
{
    if (s == "block")
        return NetworkPolicy::Block;
    if (s == "stub")
        return NetworkPolicy::Stub;
    if (s == "record")
        return NetworkPolicy::Record;
    return std::nullopt;
}

ScenarioConfig ScenarioConfig::defaults()
{
    ScenarioConfig s;
    s.navigations = {
        {"https://www.facebook.com/", 1000},
        {"https://login.microsoftonline.com/", 2000},
    };
    s.cookieJar["facebook.com"] = {
        {"c_user", "100000000000001"},
        {"xs", "48%3AsyntheticSessionToken%3A2%3A1735084800%3A-1%3A1"},
        {"datr", "synthetic-datr-cookie"},
        {"fr", "0syntheticfrcookie.AWX"},
    };
    s.cookieJar["login.microsoftonline.com"] = {
        {"ESTSAUTH", "synthetic.estsauth.session.token"},
        {"ESTSAUTHPERSISTENT", "synthetic.estsauthpersistent.token"},
        {"buid", "synthetic-buid"},
    };
    return s;
}

chrono::FastForwardPolicy ScenarioConfig::fast_forward() const
{
    chrono::FastForwardPolicy p;
    p.thresholdMs = fastForwardThresholdMs;
    p.maxVirtualHorizonMs = maxVirtualHorizonMs;
    p.maxTasks = static_cast<std::size_t>(maxTasks);
    p.pseudoRealTime = pseudoRealTime;
    return p;
}

void validate(const ScenarioConfig& s)
{
    if (s.virtualStartDate < 0 || s.virtualStartDate > kMaxTimeValue)
        invalid("virtualStartDate is outside the representable date range");
    if (s.fastForwardThresholdMs <= 0)
        invalid("fastForwardThresholdMs must be positive");
    if (s.maxVirtualHorizonMs <= 0)
        invalid("maxVirtualHorizonMs must be positive");
    if (s.maxTasks <= 0 || s.maxTasks > 10'000'000)
        invalid("maxTasks must be in 1..10000000");
    for (std::size_t i = 0; i < s.navigations.size(); ++i) {
        auto& n = s.navigations[i];
        if (n.atVirtualTimeMs < 0)
            invalid("navigation time must not be negative");
        if (i > 0 && n.atVirtualTimeMs < s.navigations[i - 1].atVirtualTimeMs)
            invalid("navigations must be sorted by time");
        try {
            auto u = parse_url(n.url);
            if (u.scheme != "http" && u.scheme != "https")
                invalid("navigation URL must be http(s): " + n.url);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::InvalidScenario)
                throw;
            invalid("navigation URL is malformed: " + n.url);
        }
    }
    for (auto& [host, cookies] : s.cookieJar) {
        if (host.empty())
            invalid("cookieJar host must not be empty");
        for (auto& c : cookies)
            if (c.name.empty())
                invalid("cookie name must not be empty");
    }
    for (auto& r : s.stubResponses) {
        if (r.urlPattern.empty())
            invalid("stub response pattern must not be empty");
        if (r.status < 100 || r.status > 599)
            invalid("stub response status must be 100..599");
    }
}

nlohmann::json to_json(const ScenarioConfig& s)
{
    nlohmann::json j;
    j["virtualStartDate"] = s.virtualStartDate;
    j["fastForwardThresholdMs"] = s.fastForwardThresholdMs;
    j["maxVirtualHorizonMs"] = s.maxVirtualHorizonMs;
    j["maxTasks"] = s.maxTasks;
    j["pseudoRealTime"] = s.pseudoRealTime;
    j["navigations"] = nlohmann::json::array();
    for (auto& n : s.navigations)
        j["navigations"].push_back({{"url", n.url}, {"atVirtualTimeMs", n.atVirtualTimeMs}});
    j["cookieJar"] = nlohmann::json::object();
    for (auto& [host, cookies] : s.cookieJar) {
        auto arr = nlohmann::json::array();
        for (auto& c : cookies)
            arr.push_back({{"name", c.name}, {"value", c.value}});
        j["cookieJar"][host] = arr;
    }
    j["clipboardText"] = s.clipboardText ? nlohmann::json(*s.clipboardText) : nlohmann::json(nullptr);
    j["networkPolicy"] = to_string(s.networkPolicy);
    j["stubResponses"] = nlohmann::json::array();
    for (auto& r : s.stubResponses)
        j["stubResponses"].push_back({{"urlPattern", r.urlPattern}, {"status", r.status}, {"body", r.body}});
    j["dummyStorage"] = nlohmann::json::object();
    for (auto& [k, v] : s.dummyStorage)
        j["dummyStorage"][k] = v;
    return j;
}

ScenarioConfig scenario_from_json(const nlohmann::json& j, const ScenarioConfig& base)
{
    if (!j.is_object())
        invalid("scenario must be a JSON object");
    ScenarioConfig s = base;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& key = it.key();
        const auto& v = it.value();
        if (key == "virtualStartDate") {
            if (v.is_string()) {
                invalid("virtualStartDate must be epoch milliseconds");
            }
            s.virtualStartDate = get_int(v, "virtualStartDate");
        } else if (key == "fastForwardThresholdMs") {
            s.fastForwardThresholdMs = get_int(v, "fastForwardThresholdMs");
        } else if (key == "maxVirtualHorizonMs") {
            s.maxVirtualHorizonMs = get_int(v, "maxVirtualHorizonMs");
        } else if (key == "maxTasks") {
            s.maxTasks = get_int(v, "maxTasks");
        } else if (key == "pseudoRealTime") {
            s.pseudoRealTime = get_as<bool>(v, "pseudoRealTime");
        } else if (key == "fastForward") {
            // nested override form used by the service wire format
            if (!v.is_object())
                invalid("fastForward must be an object");
            nlohmann::json flat;
            for (auto f = v.begin(); f != v.end(); ++f) {
                if (f.key() == "thresholdMs")
                    flat["fastForwardThresholdMs"] = f.value();
                else if (f.key() == "maxVirtualHorizonMs" || f.key() == "maxTasks" || f.key() == "pseudoRealTime")
                    flat[f.key()] = f.value();
                else
                    invalid("unknown fastForward field \"" + f.key() + "\"");
            }
            s = scenario_from_json(flat, s);
        } else if (key == "navigations") {
            if (!v.is_array())
                invalid("navigations must be an array");
            s.navigations.clear();
            for (auto& n : v) {
                Navigation nav;
                if (n.is_string()) {
                    nav.url = n.get<std::string>();
                } else if (n.is_object() && n.contains("url")) {
                    nav.url = get_as<std::string>(n.at("url"), "navigations.url");
                    if (n.contains("atVirtualTimeMs"))
                        nav.atVirtualTimeMs = get_int(n.at("atVirtualTimeMs"), "navigations.atVirtualTimeMs");
                    for (auto f = n.begin(); f != n.end(); ++f)
                        if (f.key() != "url" && f.key() != "atVirtualTimeMs")
                            invalid("unknown navigation field \"" + f.key() + "\"");
                } else {
                    invalid("navigation entries need a url");
                }
                s.navigations.push_back(std::move(nav));
            }
        } else if (key == "cookieJar") {
            if (!v.is_object())
                invalid("cookieJar must be an object");
            s.cookieJar.clear();
            for (auto h = v.begin(); h != v.end(); ++h) {
                if (!h.value().is_array())
                    invalid("cookieJar values must be arrays");
                auto& list = s.cookieJar[h.key()];
                for (auto& c : h.value()) {
                    if (!c.is_object() || !c.contains("name"))
                        invalid("cookies need a name");
                    list.push_back({get_as<std::string>(c.at("name"), "cookie.name"),
                                    c.contains("value") ? get_as<std::string>(c.at("value"), "cookie.value") : std::string()});
                }
            }
        } else if (key == "clipboardText") {
            if (v.is_null())
                s.clipboardText.reset();
            else
                s.clipboardText = get_as<std::string>(v, "clipboardText");
        } else if (key == "networkPolicy") {
            auto p = parse_network_policy(get_as<std::string>(v, "networkPolicy"));
            if (!p)
                invalid("networkPolicy must be block, stub or record");
            s.networkPolicy = *p;
        } else if (key == "stubResponses") {
            s.stubResponses.clear();
            if (v.is_object()) {
                for (auto r = v.begin(); r != v.end(); ++r) {
                    StubResponse sr;
                    sr.urlPattern = r.key();
                    if (r.value().is_string()) {
                        sr.body = r.value().get<std::string>();
                    } else if (r.value().is_object()) {
                        if (r.value().contains("status"))
                            sr.status = static_cast<int>(get_int(r.value().at("status"), "stubResponses.status"));
                        if (r.value().contains("body"))
                            sr.body = get_as<std::string>(r.value().at("body"), "stubResponses.body");
                    } else {
                        invalid("stub response must be an object or string");
                    }
                    s.stubResponses.push_back(std::move(sr));
                }
            } else if (v.is_array()) {
                for (auto& r : v) {
                    if (!r.is_object() || !r.contains("urlPattern"))
                        invalid("stub responses need a urlPattern");
                    StubResponse sr;
                    sr.urlPattern = get_as<std::string>(r.at("urlPattern"), "stubResponses.urlPattern");
                    if (r.contains("status"))
                        sr.status = static_cast<int>(get_int(r.at("status"), "stubResponses.status"));
                    if (r.contains("body"))
                        sr.body = get_as<std::string>(r.at("body"), "stubResponses.body");
                    s.stubResponses.push_back(std::move(sr));
                }
            } else {
                invalid("stubResponses must be an object or array");
            }
        } else if (key == "dummyStorage") {
            if (!v.is_object())
                invalid("dummyStorage must be an object");
            s.dummyStorage.clear();
            for (auto d = v.begin(); d != v.end(); ++d)
                s.dummyStorage[d.key()] = d.value();
        } else {
            invalid("unknown scenario field \"" + key + "\"");
        }
    }
    validate(s);
    return s;
}

ScenarioConfig parse_scenario(std::string_view text, const ScenarioConfig& base)
{
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded())
        invalid("scenario is not valid JSON");
    return scenario_from_json(j, base);
}

std::string scenario_hash(const ScenarioConfig& s)
{
    return sha256_hex(to_json(s).dump());
}

} // namespace extsleuth::sandbox
