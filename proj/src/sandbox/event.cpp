#include "extsleuth/sandbox/event.hpp"
#include "extsleuth/common/error.hpp"
#include "extsleuth/common/text.hpp"

#include <json.hpp>

#include <array>
#include <chrono>

namespace extsleuth::sandbox {

namespace {

constexpr std::array<std::pair<EventCategory, std::string_view>, 9> kCategories = {{
    {EventCategory::Network, "network"},
    {EventCategory::Filesystem, "filesystem"},
    {EventCategory::Process, "process"},
    {EventCategory::ExtensionApi, "extension-api"},
    {EventCategory::Clipboard, "clipboard"},
    {EventCategory::Timer, "timer"},
    {EventCategory::Eval, "eval"},
    {EventCategory::Dom, "dom"},
    {EventCategory::Lifecycle, "lifecycle"},
}};

} // namespace

std::string_view to_string(EventCategory c)
{
    for (auto& [k, name] : kCategories)
        if (k == c)
            return name;
    return "lifecycle";
}

std::optional<EventCategory> parse_category(std::string_view s)
{
    for (auto& [k, name] : kCategories)
        if (name == s)
            return k;
    return std::nullopt;
}

std::string serialize_event(const SandboxEvent& e)
{
    nlohmann::ordered_json j;
    j["seq"] = e.seq;
    j["virtualTimeMs"] = e.virtualTimeMs;
    j["category"] = to_string(e.category);
    j["action"] = e.action;
    j["blocked"] = e.blocked;
    j["origin"] = e.origin;
    j["argsSummary"] = e.argsSummary;
    return j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

SandboxEvent parse_event(std::string_view line)
{
    auto bad = [&](const std::string& why) -> SandboxEvent {
        throw Error(ErrorCode::SchemaVersionMismatch, "event line: " + why);
    };
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        return bad("not a JSON object");
    try {
        SandboxEvent e;
        e.seq = j.at("seq").get<std::uint64_t>();
        e.virtualTimeMs = j.at("virtualTimeMs").get<std::int64_t>();
        auto cat = parse_category(j.at("category").get<std::string>());
        if (!cat)
            return bad("unknown category");
        e.category = *cat;
        e.action = j.at("action").get<std::string>();
        e.blocked = j.at("blocked").get<bool>();
        e.origin = j.at("origin").get<std::string>();
        e.argsSummary = j.at("argsSummary").get<std::string>();
        return e;
    } catch (const nlohmann::json::exception& ex) {
        return bad(ex.what());
    }
}

std::string serialize_events(const std::vector<SandboxEvent>& events)
{
    std::string out;
    for (auto& e : events) {
        out += serialize_event(e);
        out += '\n';
    }
    return out;
}

std::vector<SandboxEvent> parse_events(std::string_view jsonl)
{
    std::vector<SandboxEvent> out;
    for (auto& line : text::split(jsonl, '\n'))
        if (!text::trim(line).empty())
            out.push_back(parse_event(line));
    return out;
}

std::string network_summary(std::string_view url, std::size_t bodySizeBytes, std::string_view bodyPreview)
{
    std::string s(url);
    s += " payload ";
    s += text::human_size(bodySizeBytes);
    if (!bodyPreview.empty()) {
        s += " body ";
        s += bodyPreview;
    }
    return s;
}

std::string_view summary_url(std::string_view argsSummary)
{
    auto end = argsSummary.find(' ');
    return argsSummary.substr(0, end);
}

std::uint64_t EventLog::append(SandboxEvent e)
{
    std::function<void(const SandboxEvent&)> listener;
    {
        std::lock_guard lock(mu_);
        e.seq = events_.size();
        if (e.argsSummary.size() > kMaxArgsSummaryBytes)
            e.argsSummary = text::truncate_with_marker(e.argsSummary, kMaxArgsSummaryBytes);
        events_.push_back(e);
        listener = listener_;
    }
    cv_.notify_all();
    if (listener)
        listener(e);
    return e.seq;
}

std::vector<SandboxEvent> EventLog::snapshot() const
{
    std::lock_guard lock(mu_);
    return events_;
}

std::vector<SandboxEvent> EventLog::since(std::size_t index) const
{
    std::lock_guard lock(mu_);
    if (index >= events_.size())
        return {};
    return {events_.begin() + static_cast<std::ptrdiff_t>(index), events_.end()};
}

std::size_t EventLog::size() const
{
    std::lock_guard lock(mu_);
    return events_.size();
}

void EventLog::close()
{
    {
        std::lock_guard lock(mu_);
        closed_ = true;
    }
    cv_.notify_all();
}

bool EventLog::closed() const
{
    std::lock_guard lock(mu_);
    return closed_;
}

std::size_t EventLog::wait_beyond(std::size_t count, int timeoutMs) const
{
    std::unique_lock lock(mu_);
    cv_.wait_for(lock, std::chrono::milliseconds(timeoutMs), [&] { return closed_ || events_.size() > count; });
    return events_.size();
}

void EventLog::set_listener(std::function<void(const SandboxEvent&)> fn)
{
    std::lock_guard lock(mu_);
    listener_ = std::move(fn);
}

} // namespace extsleuth::sandbox
