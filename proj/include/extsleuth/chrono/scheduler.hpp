#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>

namespace extsleuth::chrono {

inline constexpr std::int64_t kDefaultStartMs = 1735084800000; // 2024-12-25T00:00:00Z
inline constexpr std::int64_t kDefaultThresholdMs = 1000;
inline constexpr std::int64_t kDefaultHorizonMs = 90LL * 24 * 3600 * 1000;
inline constexpr std::size_t kDefaultMaxTasks = 10000;

enum class TaskOrigin { SetTimeout, SetInterval, Alarm };

std::string_view to_string(TaskOrigin o);

struct FastForwardPolicy {
    std::int64_t thresholdMs = kDefaultThresholdMs;
    std::int64_t maxVirtualHorizonMs = kDefaultHorizonMs;
    std::size_t maxTasks = kDefaultMaxTasks;
    /// Delays up to thresholdMs are really waited for during drain.
    bool pseudoRealTime = false;

    bool valid() const { return thresholdMs > 0 && maxVirtualHorizonMs > 0 && maxTasks > 0; }
};

struct ScheduledTask {
    std::uint64_t id = 0;
    std::int64_t dueMs = 0;
    std::optional<std::int64_t> intervalMs;
    std::uint64_t creationSeq = 0;
    TaskOrigin origin = TaskOrigin::SetTimeout;
    std::string alarmName;
};

enum class DrainOutcome { Drained, TaskBudget, Horizon };

std::string_view to_string(DrainOutcome o);

/// Virtual clock plus a priority queue of timers ordered by (dueMs,
/// creationSeq). Nothing here reads the host clock; time only moves through
/// advance_clock, set_virtual_date and drain.
class Scheduler {
public:
    using Callback = std::function<void(const ScheduledTask&)>;
    /// Receives exceptions escaping a callback; the scheduler keeps going.
    using ErrorHandler = std::function<void(const ScheduledTask&, const std::exception&)>;

    explicit Scheduler(std::int64_t startMs = kDefaultStartMs, FastForwardPolicy policy = {});

    std::int64_t now() const { return now_; }
    std::int64_t start() const { return start_; }
    const FastForwardPolicy& policy() const { return policy_; }

    /// Negative or NaN delays become 0; intervals are at least 1 ms.
    std::uint64_t schedule_timer(double delayMs, Callback cb, std::optional<double> intervalMs = std::nullopt,
                                 TaskOrigin origin = TaskOrigin::SetTimeout);
    bool cancel_timer(std::uint64_t id);

    /// Fires everything due up to now + delta, then leaves the clock there.
    /// Throws Error(BackwardJump) for a negative delta.
    std::size_t advance_clock(std::int64_t deltaMs);

    DrainOutcome drain();

    /// Forward-only jump; skipped tasks fire as in advance_clock.
    void set_virtual_date(std::int64_t epochMs);

    /// chrome.alarms semantics: a second alarm with the same name replaces
    /// the first.
    std::uint64_t register_alarm(const std::string& name, double delayMs, std::optional<double> periodMs, Callback cb);
    bool clear_alarm(const std::string& name);

    std::size_t pending() const { return queue_.size(); }
    std::size_t fired() const { return fired_; }
    bool budget_exhausted() const { return fired_ >= policy_.maxTasks; }
    std::optional<ScheduledTask> find(std::uint64_t id) const;

    void set_error_handler(ErrorHandler h) { onError_ = std::move(h); }

private:
    struct Entry {
        ScheduledTask task;
        Callback cb;
    };
    using Key = std::tuple<std::int64_t, std::uint64_t, std::uint64_t>; // due, seq, id

    std::size_t run_until(std::int64_t target);
    void fire_front();
    void enqueue(Entry e);

    std::int64_t start_;
    std::int64_t now_;
    FastForwardPolicy policy_;
    std::set<Key> queue_;
    std::map<std::uint64_t, Entry> tasks_;
    std::map<std::string, std::uint64_t> alarms_;
    std::uint64_t nextId_ = 1;
    std::uint64_t nextSeq_ = 0;
    std::size_t fired_ = 0;
    std::optional<std::uint64_t> running_;
    bool runningCancelled_ = false;
    bool runningRepeating_ = false;
    ErrorHandler onError_;
};

} // namespace extsleuth::chrono
