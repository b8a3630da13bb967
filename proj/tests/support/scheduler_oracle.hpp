#pragma once

#include "random_source.hpp"

#include "extsleuth/chrono/scheduler.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

// Random timer sets replayed through the Scheduler and through a naive model
// that scans a flat list for the minimum (dueMs, creationSeq) each step.
namespace schedoracle {

struct Spec {
    std::int64_t delay;
    std::optional<std::int64_t> interval;
    int repeats;        // firings before the callback cancels itself
    int childDelay;     // -1: no child; else schedule a one-shot child
    bool cancelUpfront; // cancelled right after creation
};

struct Firing {
    int task;
    std::int64_t at;
    bool operator==(const Firing&) const = default;
};

struct TaskSet {
    std::vector<Spec> specs;
    std::size_t maxTasks;
    std::int64_t horizon;
};

inline TaskSet random_task_set(testgen::Rng& rng)
{
    TaskSet ts;
    ts.specs.resize(1 + rng.below(25));
    for (auto& sp : ts.specs) {
        sp.delay = static_cast<std::int64_t>(rng.coin() ? rng.below(5) : rng.below(100'000));
        sp.interval.reset();
        if (rng.below(4) == 0)
            sp.interval = 1 + static_cast<std::int64_t>(rng.below(rng.coin() ? 3 : 50'000));
        sp.repeats = 1 + static_cast<int>(rng.below(6));
        sp.childDelay = rng.below(3) == 0 ? static_cast<int>(rng.below(20)) : -1;
        sp.cancelUpfront = rng.below(10) == 0;
    }
    ts.maxTasks = rng.coin() ? 10000 : 1 + rng.below(40);
    ts.horizon = rng.coin() ? extsleuth::chrono::kDefaultHorizonMs : 1 + static_cast<std::int64_t>(rng.below(120'000));
    return ts;
}

inline std::vector<Firing> oracle(const TaskSet& ts, std::int64_t start)
{
    struct Item {
        int task;
        std::int64_t due;
        std::uint64_t seq;
        std::optional<std::int64_t> interval;
        int remaining;
        int childDelay;
    };
    std::vector<Item> items;
    std::uint64_t seq = 0;
    std::int64_t now = start;
    int nextTask = static_cast<int>(ts.specs.size());
    for (std::size_t i = 0; i < ts.specs.size(); ++i) {
        auto& sp = ts.specs[i];
        std::uint64_t mySeq = seq++;
        if (!sp.cancelUpfront)
            items.push_back({static_cast<int>(i), start + sp.delay, mySeq, sp.interval, sp.repeats, sp.childDelay});
    }
    std::vector<Firing> out;
    while (!items.empty() && out.size() < ts.maxTasks) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < items.size(); ++k)
            if (items[k].due < items[best].due || (items[k].due == items[best].due && items[k].seq < items[best].seq))
                best = k;
        if (items[best].due > start + ts.horizon)
            break;
        Item it = items[best];
        items.erase(items.begin() + static_cast<std::ptrdiff_t>(best));
        now = std::max(now, it.due);
        out.push_back({it.task, now});
        if (it.childDelay >= 0)
            items.push_back({nextTask++, now + it.childDelay, seq++, std::nullopt, 1, -1});
        if (it.interval && --it.remaining > 0) {
            it.due += *it.interval;
            it.seq = seq++;
            items.push_back(it);
        }
    }
    return out;
}

struct Run {
    std::vector<Firing> firings;
    /// Callbacks that observed now() != their dueMs.
    std::size_t clockMismatches = 0;
};

inline Run run_scheduler(const TaskSet& ts, std::int64_t start)
{
    using namespace extsleuth::chrono;
    FastForwardPolicy p;
    p.maxTasks = ts.maxTasks;
    p.maxVirtualHorizonMs = ts.horizon;
    Scheduler s(start, p);
    Run run;
    int nextTask = static_cast<int>(ts.specs.size());
    std::map<std::uint64_t, int> remaining;
    std::map<std::uint64_t, int> label;
    for (std::size_t i = 0; i < ts.specs.size(); ++i) {
        auto& sp = ts.specs[i];
        auto cb = [&, i](const ScheduledTask& t) {
            int me = label[t.id];
            run.firings.push_back({me, s.now()});
            run.clockMismatches += s.now() != t.dueMs;
            if (me == static_cast<int>(i) && ts.specs[i].childDelay >= 0) {
                int child = nextTask++;
                auto cid = s.schedule_timer(static_cast<double>(ts.specs[i].childDelay), [&, child](const ScheduledTask& ct) {
                    run.firings.push_back({child, s.now()});
                    run.clockMismatches += s.now() != ct.dueMs;
                });
                label[cid] = child;
            }
            if (t.intervalMs && --remaining[t.id] <= 0)
                s.cancel_timer(t.id);
        };
        std::optional<double> iv;
        if (sp.interval)
            iv = static_cast<double>(*sp.interval);
        auto id = s.schedule_timer(static_cast<double>(sp.delay), cb, iv, sp.interval ? TaskOrigin::SetInterval : TaskOrigin::SetTimeout);
        label[id] = static_cast<int>(i);
        remaining[id] = sp.repeats;
        if (sp.cancelUpfront)
            s.cancel_timer(id);
    }
    s.drain();
    return run;
}

} // namespace schedoracle
