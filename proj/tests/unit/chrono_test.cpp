#include "extsleuth/chrono/scheduler.hpp"
#include "extsleuth/common/error.hpp"

#include "random_source.hpp"
#include "scheduler_oracle.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <vector>

using namespace extsleuth;
using namespace extsleuth::chrono;

namespace {

constexpr std::int64_t kStart = 1735084800000;

double wall_seconds(const std::function<void()>& fn)
{
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

TEST(Clock, IdentityAndAdditivity)
{
    Scheduler s(kStart);
    EXPECT_EQ(s.now(), kStart);
    s.advance_clock(5000);
    EXPECT_EQ(s.now(), kStart + 5000);
}

TEST(Clock, CallbackSeesDueTime)
{
    Scheduler s(kStart);
    std::vector<std::int64_t> seen;
    s.schedule_timer(250, [&](const ScheduledTask& t) {
        seen.push_back(s.now());
        EXPECT_EQ(s.now(), t.dueMs);
    });
    s.schedule_timer(1000, [&](const ScheduledTask&) { seen.push_back(s.now()); });
    s.advance_clock(5000);
    EXPECT_EQ(seen, (std::vector<std::int64_t>{kStart + 250, kStart + 1000}));
    EXPECT_EQ(s.now(), kStart + 5000);
}

TEST(Schedule, DayLongTimerDrainsWithoutWaiting)
{
    Scheduler s(kStart);
    bool fired = false;
    s.schedule_timer(86'400'000, [&](const ScheduledTask&) { fired = true; });
    double secs = wall_seconds([&] { EXPECT_EQ(s.drain(), DrainOutcome::Drained); });
    EXPECT_TRUE(fired);
    EXPECT_EQ(s.now(), kStart + 86'400'000);
    EXPECT_LT(secs, 1.0);
}

TEST(Schedule, ZeroDelayFiresFirst)
{
    Scheduler s(kStart);
    std::vector<int> order;
    s.schedule_timer(1, [&](const ScheduledTask&) { order.push_back(1); });
    s.schedule_timer(0, [&](const ScheduledTask&) { order.push_back(0); });
    s.drain();
    EXPECT_EQ(order, (std::vector<int>{0, 1}));
}

TEST(Schedule, NegativeAndNanDelaysBecomeZero)
{
    Scheduler s(kStart);
    auto a = s.schedule_timer(-50, nullptr);
    auto b = s.schedule_timer(std::nan(""), nullptr);
    EXPECT_EQ(s.find(a)->dueMs, kStart);
    EXPECT_EQ(s.find(b)->dueMs, kStart);
}

TEST(Schedule, IntervalRefiresEachMinuteUntilCancelled)
{
    Scheduler s(kStart);
    std::vector<std::int64_t> at;
    std::uint64_t id = 0;
    id = s.schedule_timer(60'000, [&](const ScheduledTask&) {
        at.push_back(s.now() - kStart);
        if (at.size() == 5)
            EXPECT_TRUE(s.cancel_timer(id));
    }, 60'000.0, TaskOrigin::SetInterval);
    EXPECT_EQ(s.drain(), DrainOutcome::Drained);
    EXPECT_EQ(at, (std::vector<std::int64_t>{60'000, 120'000, 180'000, 240'000, 300'000}));
    EXPECT_EQ(s.pending(), 0u);
}

TEST(Cancel, PendingUnknownAndOneShotInsideOwnCallback)
{
    Scheduler s(kStart);
    bool fired = false;
    auto id = s.schedule_timer(10, [&](const ScheduledTask&) { fired = true; });
    EXPECT_TRUE(s.cancel_timer(id));
    EXPECT_FALSE(s.cancel_timer(id));
    EXPECT_FALSE(s.cancel_timer(999));
    s.drain();
    EXPECT_FALSE(fired);

    std::uint64_t self = 0;
    bool result = true;
    self = s.schedule_timer(5, [&](const ScheduledTask&) { result = s.cancel_timer(self); });
    s.drain();
    EXPECT_FALSE(result); // nothing pending any more
}

TEST(Advance, OrderAndBoundary)
{
    Scheduler s(kStart);
    std::vector<int> order;
    s.schedule_timer(10, [&](const ScheduledTask&) { order.push_back(10); });
    s.schedule_timer(5, [&](const ScheduledTask&) { order.push_back(5); });
    EXPECT_EQ(s.advance_clock(20), 2u);
    EXPECT_EQ(order, (std::vector<int>{5, 10}));

    s.schedule_timer(0, [&](const ScheduledTask&) { order.push_back(0); });
    s.schedule_timer(1, [&](const ScheduledTask&) { order.push_back(1); });
    EXPECT_EQ(s.advance_clock(0), 1u);
    EXPECT_EQ(order.back(), 0);
    EXPECT_THROW(s.advance_clock(-1), Error);
}

TEST(Advance, WeekJumpOpensDateGate)
{
    const std::int64_t may30 = 1748563200000; // 2025-05-30T00:00:00Z
    const std::int64_t june1 = 1748736000000; // 2025-06-01T00:00:00Z
    Scheduler s(may30);
    int payloads = 0;
    s.schedule_timer(3'600'000, [&](const ScheduledTask&) {
        if (s.now() > june1)
            ++payloads;
    }, 3'600'000.0, TaskOrigin::SetInterval);
    s.advance_clock(24 * 3'600'000LL);
    EXPECT_EQ(payloads, 0);
    s.advance_clock(7 * 24 * 3'600'000LL);
    EXPECT_GT(payloads, 0);
}

TEST(Drain, HourOfMinuteTimers)
{
    Scheduler s(kStart);
    int fired = 0;
    std::function<void(const ScheduledTask&)> step = [&](const ScheduledTask&) {
        if (++fired < 60)
            s.schedule_timer(60'000, step);
    };
    s.schedule_timer(60'000, step);
    DrainOutcome out{};
    double secs = wall_seconds([&] { out = s.drain(); });
    EXPECT_EQ(out, DrainOutcome::Drained);
    EXPECT_EQ(fired, 60);
    EXPECT_EQ(s.now(), kStart + 3'600'000);
    EXPECT_LT(secs, 1.0);
}

TEST(Drain, UncancelledIntervalHitsTaskBudget)
{
    FastForwardPolicy p;
    p.maxTasks = 500;
    Scheduler s(kStart, p);
    int fired = 0;
    s.schedule_timer(10, [&](const ScheduledTask&) { ++fired; }, 10.0, TaskOrigin::SetInterval);
    EXPECT_EQ(s.drain(), DrainOutcome::TaskBudget);
    EXPECT_EQ(fired, 500);
}

TEST(Drain, EmptyQueueAndHorizon)
{
    Scheduler s(kStart);
    EXPECT_EQ(s.drain(), DrainOutcome::Drained);
    EXPECT_EQ(s.fired(), 0u);

    FastForwardPolicy p;
    p.maxVirtualHorizonMs = 1000;
    Scheduler h(kStart, p);
    int fired = 0;
    h.schedule_timer(999, [&](const ScheduledTask&) { ++fired; });
    h.schedule_timer(1001, [&](const ScheduledTask&) { ++fired; });
    EXPECT_EQ(h.drain(), DrainOutcome::Horizon);
    EXPECT_EQ(fired, 1);
    EXPECT_EQ(h.pending(), 1u);
}

TEST(Drain, CallbackExceptionsAreReportedAndDrainContinues)
{
    Scheduler s(kStart);
    int errors = 0;
    bool later = false;
    s.set_error_handler([&](const ScheduledTask&, const std::exception&) { ++errors; });
    s.schedule_timer(1, [](const ScheduledTask&) { throw std::runtime_error("guest"); });
    s.schedule_timer(2, [&](const ScheduledTask&) { later = true; });
    EXPECT_EQ(s.drain(), DrainOutcome::Drained);
    EXPECT_EQ(errors, 1);
    EXPECT_TRUE(later);
}

TEST(VirtualDate, ForwardOnly)
{
    Scheduler s(0);
    s.set_virtual_date(kStart);
    EXPECT_EQ(s.now(), kStart);
    try {
        s.set_virtual_date(kStart - 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BackwardJump);
    }
    FastForwardPolicy p;
    p.maxVirtualHorizonMs = 1000;
    Scheduler h(kStart, p);
    EXPECT_NO_THROW(h.set_virtual_date(kStart + 10'000'000)); // horizon bounds drain only
    EXPECT_EQ(h.now(), kStart + 10'000'000);
}

TEST(VirtualDate, SkippedTasksFire)
{
    Scheduler s(kStart);
    std::vector<std::int64_t> at;
    s.schedule_timer(100, [&](const ScheduledTask&) { at.push_back(s.now()); });
    s.set_virtual_date(kStart + 1000);
    EXPECT_EQ(at, std::vector<std::int64_t>{kStart + 100});
}

TEST(Alarms, DelayPeriodAndReplacement)
{
    Scheduler s(kStart);
    std::vector<std::int64_t> hourly;
    s.register_alarm("h", 60 * 60'000.0, std::nullopt, [&](const ScheduledTask& t) {
        EXPECT_EQ(t.origin, TaskOrigin::Alarm);
        hourly.push_back(s.now() - kStart);
    });
    s.drain();
    EXPECT_EQ(hourly, std::vector<std::int64_t>{3'600'000});

    Scheduler p(kStart);
    int ticks = 0;
    p.register_alarm("tick", 60'000, 60'000.0, [&](const ScheduledTask&) { ++ticks; });
    p.advance_clock(5 * 60'000);
    EXPECT_EQ(ticks, 5);

    Scheduler r(kStart);
    int first = 0, second = 0;
    r.register_alarm("x", 1000, std::nullopt, [&](const ScheduledTask&) { ++first; });
    r.register_alarm("x", 2000, std::nullopt, [&](const ScheduledTask&) { ++second; });
    EXPECT_EQ(r.pending(), 1u);
    r.drain();
    EXPECT_EQ(first, 0);
    EXPECT_EQ(second, 1);
    EXPECT_FALSE(r.clear_alarm("x"));
}

TEST(Clock, PseudoRealTimeActuallyWaitsForShortDelays)
{
    FastForwardPolicy p;
    p.pseudoRealTime = true;
    p.thresholdMs = 1000;
    Scheduler s(kStart, p);
    s.schedule_timer(50, nullptr);
    s.schedule_timer(86'400'000, nullptr); // beyond threshold: jumped
    double secs = wall_seconds([&] { s.drain(); });
    EXPECT_GE(secs, 0.045);
    EXPECT_LT(secs, 1.0);
}

// --- property suite: random task sets against a brute-force replay ---

TEST(SchedulerProperty, ThousandRandomTaskSetsMatchReplayOracle)
{
    testgen::Rng rng(0x5eed);
    for (int set = 0; set < 1000; ++set) {
        auto ts = schedoracle::random_task_set(rng);
        auto expected = schedoracle::oracle(ts, kStart);
        auto actual = schedoracle::run_scheduler(ts, kStart);
        EXPECT_EQ(actual.clockMismatches, 0u) << "set " << set;
        ASSERT_EQ(actual.firings.size(), expected.size()) << "set " << set;
        for (std::size_t k = 0; k < expected.size(); ++k) {
            ASSERT_EQ(actual.firings[k], expected[k]) << "set " << set << " firing " << k;
            if (k > 0)
                ASSERT_GE(actual.firings[k].at, actual.firings[k - 1].at); // monotone clock
        }
    }
}
