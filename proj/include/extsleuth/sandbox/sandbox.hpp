#pragma once

#include "extsleuth/chrono/scheduler.hpp"
#include "extsleuth/ingest/artifact.hpp"
#include "extsleuth/sandbox/event.hpp"
#include "extsleuth/sandbox/network.hpp"
#include "extsleuth/sandbox/scenario.hpp"
#include "extsleuth/sandbox/vfs.hpp"

#include <memory>
#include <string>
#include <vector>

namespace extsleuth::sandbox {

struct SandboxOptions {
    /// Interpreter interrupt polls allowed per run (each is roughly ten
    /// thousand bytecode steps); exhaustion ends the run as budget-exhausted.
    std::uint64_t instructionBudget = 100000;
    std::size_t memoryLimitBytes = 512u << 20;
    std::size_t maxStackBytes = 1u << 20;
    /// Required in addition to networkPolicy=record before any real request
    /// is made.
    bool allowLiveNetwork = false;
    LiveFetcher liveFetcher; // defaults to live_fetch when allowed
};

enum class RunStatus { Completed, BudgetExhausted, RuntimeError };

std::string_view to_string(RunStatus s);
std::optional<RunStatus> parse_run_status(std::string_view s);

struct RunOutcome {
    RunStatus status = RunStatus::Completed;
    std::string detail; // error text for runtime-error, cause for budget-exhausted

    bool operator==(const RunOutcome&) const = default;
};

struct RunResult {
    std::vector<SandboxEvent> events;
    RunOutcome outcome;
    std::int64_t finalVirtualTimeMs = 0;
    std::size_t tasksFired = 0;
    std::vector<std::string> filesWritten; // VirtualFs paths
    std::vector<std::string> console;      // guest console output, not part of the event log
};

/// One interpreter runtime with its realms, clock, filesystem and network
/// gateway. Strictly single-threaded; not copyable.
class SandboxEnv {
public:
    ~SandboxEnv();
    SandboxEnv(const SandboxEnv&) = delete;
    SandboxEnv& operator=(const SandboxEnv&) = delete;

    ingest::ArtifactKind kind() const;
    const ScenarioConfig& scenario() const;
    chrono::Scheduler& scheduler();
    VirtualFs& vfs();
    EventLog& log();

    /// Appends an event stamped with the current virtual time.
    std::uint64_t record_host_event(EventCategory category, std::string action, std::string argsSummary,
                                    bool blocked, std::string origin = {});

    /// Applies the network policy and logs the request.
    NetworkResponse handle_network(const NetworkRequest& req, std::string origin = {});

    /// Injects matching content scripts into a fresh page realm and fires
    /// tabs.onUpdated in the background. Returns the events it produced.
    std::vector<SandboxEvent> simulate_navigation(const std::string& url);

    /// Evaluates `code` as a classic script in the main realm (tests and
    /// tooling); returns the completion value as JSON, or throws
    /// std::runtime_error with the guest error.
    std::string evaluate(const std::string& code, const std::string& filename = "<eval>");

    /// Registry names the prelude declared in each realm created so far,
    /// keyed by realm mode.
    std::map<std::string, std::vector<std::string>> declared_hooks() const;

    struct Impl;

private:
    friend std::unique_ptr<SandboxEnv> build_environment(const ingest::ExtensionArtifact&, const ScenarioConfig&,
                                                         const SandboxOptions&, EventLog*);
    friend RunResult run_dynamic_analysis(SandboxEnv&);
    explicit SandboxEnv(std::unique_ptr<Impl> impl);
    std::unique_ptr<Impl> impl_;
};

/// Creates the runtime and main realm for the artifact's kind. `log` lets a
/// caller observe events while the run is in progress; a private log is used
/// when it is null. Throws Error(InvalidScenario) or
/// Error(InterpreterInitFailure).
std::unique_ptr<SandboxEnv> build_environment(const ingest::ExtensionArtifact& artifact, const ScenarioConfig& scenario,
                                              const SandboxOptions& options = {}, EventLog* log = nullptr);

/// Runs the kind-specific flow to completion. Guest failures become the
/// outcome; this never throws for guest behaviour.
RunResult run_dynamic_analysis(SandboxEnv& env);

/// build_environment + run_dynamic_analysis. Closes `log` when done.
RunResult analyze_dynamic(const ingest::ExtensionArtifact& artifact, const ScenarioConfig& scenario,
                          const SandboxOptions& options = {}, EventLog* log = nullptr);

/// Chrome extension id derived from the artifact digest (32 letters a-p).
std::string extension_id(const ingest::ExtensionArtifact& artifact);

} // namespace extsleuth::sandbox
