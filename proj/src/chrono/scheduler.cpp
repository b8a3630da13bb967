#include "extsleuth/chrono/scheduler.hpp"
#include "extsleuth/common/error.hpp"

#include <cmath>
#include <limits>
#include <thread>

namespace extsleuth::chrono {

namespace {

constexpr double kMaxDelayMs = 8.64e15; // ECMAScript time value range

std::int64_t coerce_delay(double d)
{
    if (std::isnan(d) || d < 0)
        return 0;
    return static_cast<std::int64_t>(std::min(d, kMaxDelayMs));
}

} // namespace

std::string_view to_string(TaskOrigin o)
{
    switch (o) {
    case TaskOrigin::SetTimeout: return "setTimeout";
    case TaskOrigin::SetInterval: return "setInterval";
    case TaskOrigin::Alarm: return "alarm";
    }
    return "setTimeout";
}

std::string_view to_string(DrainOutcome o)
{
    switch (o) {
    case DrainOutcome::Drained: return "drained";
    case DrainOutcome::TaskBudget: return "task-budget";
    case DrainOutcome::Horizon: return "horizon";
    }
    return "drained";
}

Scheduler::Scheduler(std::int64_t startMs, FastForwardPolicy policy)
    : start_(startMs)
    , now_(startMs)
    , policy_(policy)
{
}

void Scheduler::enqueue(Entry e)
{
    auto key = Key{e.task.dueMs, e.task.creationSeq, e.task.id};
    auto id = e.task.id;
    tasks_[id] = std::move(e);
    queue_.insert(key);
}

std::uint64_t Scheduler::schedule_timer(double delayMs, Callback cb, std::optional<double> intervalMs, TaskOrigin origin)
{
    Entry e;
    e.task.id = nextId_++;
    e.task.dueMs = now_ + coerce_delay(delayMs);
    if (intervalMs)
        e.task.intervalMs = std::max<std::int64_t>(1, coerce_delay(*intervalMs));
    e.task.creationSeq = nextSeq_++;
    e.task.origin = origin;
    e.cb = std::move(cb);
    auto id = e.task.id;
    enqueue(std::move(e));
    return id;
}

bool Scheduler::cancel_timer(std::uint64_t id)
{
    if (running_ && *running_ == id) {
        bool removed = runningRepeating_ && !runningCancelled_;
        runningCancelled_ = true;
        return removed;
    }
    auto it = tasks_.find(id);
    if (it == tasks_.end())
        return false;
    queue_.erase(Key{it->second.task.dueMs, it->second.task.creationSeq, id});
    if (!it->second.task.alarmName.empty()) {
        auto a = alarms_.find(it->second.task.alarmName);
        if (a != alarms_.end() && a->second == id)
            alarms_.erase(a);
    }
    tasks_.erase(it);
    return true;
}

std::optional<ScheduledTask> Scheduler::find(std::uint64_t id) const
{
    auto it = tasks_.find(id);
    if (it == tasks_.end())
        return std::nullopt;
    return it->second.task;
}

void Scheduler::fire_front()
{
    auto key = *queue_.begin();
    queue_.erase(queue_.begin());
    auto node = tasks_.extract(std::get<2>(key));
    Entry e = std::move(node.mapped());
    now_ = std::max(now_, e.task.dueMs);
    ++fired_;
    running_ = e.task.id;
    runningCancelled_ = false;
    runningRepeating_ = e.task.intervalMs.has_value();
    try {
        if (e.cb)
            e.cb(e.task);
    } catch (const std::exception& ex) {
        if (onError_)
            onError_(e.task, ex);
    }
    running_.reset();
    if (e.task.intervalMs && !runningCancelled_) {
        e.task.dueMs += *e.task.intervalMs;
        e.task.creationSeq = nextSeq_++;
        enqueue(std::move(e));
    } else if (!e.task.alarmName.empty()) {
        auto a = alarms_.find(e.task.alarmName);
        if (a != alarms_.end() && a->second == e.task.id)
            alarms_.erase(a);
    }
    runningCancelled_ = false;
}

std::size_t Scheduler::run_until(std::int64_t target)
{
    std::size_t count = 0;
    while (!queue_.empty() && std::get<0>(*queue_.begin()) <= target && !budget_exhausted()) {
        fire_front();
        ++count;
    }
    return count;
}

std::size_t Scheduler::advance_clock(std::int64_t deltaMs)
{
    if (deltaMs < 0)
        throw Error(ErrorCode::BackwardJump, "advance by " + std::to_string(deltaMs) + " ms");
    auto target = now_ + deltaMs;
    auto count = run_until(target);
    now_ = std::max(now_, target);
    return count;
}

void Scheduler::set_virtual_date(std::int64_t epochMs)
{
    if (epochMs < now_)
        throw Error(ErrorCode::BackwardJump,
                    "virtual date " + std::to_string(epochMs) + " is before now " + std::to_string(now_));
    advance_clock(epochMs - now_);
}

DrainOutcome Scheduler::drain()
{
    const auto limit = start_ + policy_.maxVirtualHorizonMs;
    while (!queue_.empty()) {
        if (budget_exhausted())
            return DrainOutcome::TaskBudget;
        auto due = std::get<0>(*queue_.begin());
        if (due > limit)
            return DrainOutcome::Horizon;
        if (policy_.pseudoRealTime && due > now_ && due - now_ <= policy_.thresholdMs)
            std::this_thread::sleep_for(std::chrono::milliseconds(due - now_));
        fire_front();
    }
    return DrainOutcome::Drained;
}

std::uint64_t Scheduler::register_alarm(const std::string& name, double delayMs, std::optional<double> periodMs, Callback cb)
{
    if (auto it = alarms_.find(name); it != alarms_.end()) {
        auto old = it->second;
        alarms_.erase(it);
        cancel_timer(old);
    }
    auto id = schedule_timer(delayMs, std::move(cb), periodMs, TaskOrigin::Alarm);
    tasks_[id].task.alarmName = name;
    alarms_[name] = id;
    return id;
}

bool Scheduler::clear_alarm(const std::string& name)
{
    auto it = alarms_.find(name);
    if (it == alarms_.end())
        return false;
    auto id = it->second;
    alarms_.erase(it);
    return cancel_timer(id);
}

} // namespace extsleuth::chrono
