#pragma once

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace extsleuth::sandbox {

inline constexpr std::size_t kMaxArgsSummaryBytes = 1024;

enum class EventCategory {
    Network,
    Filesystem,
    Process,
    ExtensionApi,
    Clipboard,
    Timer,
    Eval,
    Dom,
    Lifecycle,
};

std::string_view to_string(EventCategory c);
std::optional<EventCategory> parse_category(std::string_view s);

struct SandboxEvent {
    std::uint64_t seq = 0;
    std::int64_t virtualTimeMs = 0;
    EventCategory category = EventCategory::Lifecycle;
    std::string action;
    bool blocked = false;
    std::string origin;
    std::string argsSummary;

    bool operator==(const SandboxEvent&) const = default;
};

/// One JSON object per line with keys in the fixed order seq, virtualTimeMs,
/// category, action, blocked, origin, argsSummary. No trailing newline.
std::string serialize_event(const SandboxEvent& e);
/// Throws Error(SchemaVersionMismatch) on lines that do not hold an event.
SandboxEvent parse_event(std::string_view line);

std::string serialize_events(const std::vector<SandboxEvent>& events);
std::vector<SandboxEvent> parse_events(std::string_view jsonl);

/// Network argsSummary layout: "<url> payload <size>[ body <preview>]".
std::string network_summary(std::string_view url, std::size_t bodySizeBytes, std::string_view bodyPreview);
/// First whitespace-delimited token of a network event summary.
std::string_view summary_url(std::string_view argsSummary);

/// Append-only event sequence shared between the single producing analysis
/// and any number of readers that follow it while it runs.
class EventLog {
public:
    /// Assigns the next seq, truncates argsSummary, and returns the seq.
    std::uint64_t append(SandboxEvent e);

    std::vector<SandboxEvent> snapshot() const;
    std::vector<SandboxEvent> since(std::size_t index) const;
    std::size_t size() const;

    /// Marks the log complete; wakes all waiters.
    void close();
    bool closed() const;

    /// Blocks until more than `count` events exist, the log closes, or the
    /// timeout elapses. Returns the current size.
    std::size_t wait_beyond(std::size_t count, int timeoutMs) const;

    /// Invoked synchronously after each append (used for live mirroring).
    void set_listener(std::function<void(const SandboxEvent&)> fn);

private:
    mutable std::mutex mu_;
    mutable std::condition_variable cv_;
    std::vector<SandboxEvent> events_;
    bool closed_ = false;
    std::function<void(const SandboxEvent&)> listener_;
};

} // namespace extsleuth::sandbox
