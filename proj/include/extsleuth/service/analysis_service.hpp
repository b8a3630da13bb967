#pragma once

#include "extsleuth/ingest/artifact.hpp"
#include "extsleuth/report/model.hpp"
#include "extsleuth/report/report.hpp"
#include "extsleuth/report/store.hpp"
#include "extsleuth/sandbox/sandbox.hpp"
#include "extsleuth/detect/rules.hpp"
#include "extsleuth/detect/signatures.hpp"

#include <json.hpp>

#include <condition_variable>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace extsleuth::service {

enum class AnalysisState { Queued, Running, Done, Failed };

std::string_view to_string(AnalysisState s);

struct ServiceConfig {
    std::filesystem::path storeDir = ".extsleuth-store";
    std::size_t workers = 2;
    std::shared_ptr<report::ModelAdapter> model; // null: reports carry no llm section
    sandbox::SandboxOptions sandbox;
    detect::StaticConfig staticConfig;
    std::optional<detect::SignatureDb> signatures;
};

/// Scenario fields accepted over the wire plus the model switch. Fields the
/// request leaves out keep the values of `base`.
struct ScenarioRequest {
    sandbox::ScenarioConfig scenario;
    bool skipLlm = false;
};

/// Throws Error(InvalidScenario) for unknown keys, ill-typed values or a
/// scenario that fails validation.
ScenarioRequest parse_scenario_request(const nlohmann::json& j, const sandbox::ScenarioConfig& base);

/// Upload that could not be read as an artifact (maps to HTTP 400).
class BadUpload : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AnalysisRecord {
    std::string id;
    AnalysisState state = AnalysisState::Queued;
    std::string digest;
    std::string scenarioHash;
    std::optional<std::string> parentId;
    std::string createdAt; // ISO-8601 UTC wall time; never enters the event log
    bool skipLlm = false;
    std::optional<report::RiskReport> report;
    std::optional<std::string> error;
};

nlohmann::json record_to_json(const AnalysisRecord& r);

struct SubmitResult {
    std::string id;
    bool cached = false;
};

/// Result of a file request: bytes, a sorted listing, or nothing.
struct FileBytes {
    std::string path;
    std::string bytes;
};
struct FileListing {
    std::string prefix;
    std::vector<std::string> paths;
};
using FileLookup = std::variant<std::monostate, FileBytes, FileListing>;

/// Transport-independent analysis service: a record table, a fixed pool of
/// analysis workers and the report store. All methods are thread-safe.
class AnalysisService {
public:
    explicit AnalysisService(ServiceConfig config);
    ~AnalysisService();
    AnalysisService(const AnalysisService&) = delete;
    AnalysisService& operator=(const AnalysisService&) = delete;

    /// Queues an analysis of the uploaded archive. A live record with the
    /// same (digest, scenarioHash, model use) is returned instead, with
    /// cached=true. Throws BadUpload or Error(InvalidScenario).
    SubmitResult submit(std::string_view bytes, std::string_view fileName, const nlohmann::json& scenarioRequest);

    /// Re-analyzes the artifact of `id` with the request applied on top of
    /// its scenario. nullopt when `id` is unknown; throws
    /// Error(InvalidScenario).
    std::optional<SubmitResult> rerun(const std::string& id, const nlohmann::json& scenarioRequest);

    std::optional<AnalysisRecord> get(const std::string& id) const;

    /// The record's event log; grows while the analysis runs and is closed
    /// afterwards. Null for unknown ids.
    std::shared_ptr<const sandbox::EventLog> events(const std::string& id) const;

    FileLookup file(const std::string& id, const std::string& path) const;

    /// Blocks until no analysis is queued or running.
    void wait_idle() const;

    std::size_t pending() const;
    const report::ReportStore& store() const { return store_; }

private:
    struct Entry {
        AnalysisRecord record;
        std::shared_ptr<const ingest::ExtensionArtifact> artifact;
        sandbox::ScenarioConfig scenario;
        std::shared_ptr<sandbox::EventLog> log;
    };

    SubmitResult enqueue(std::shared_ptr<const ingest::ExtensionArtifact> artifact, const ScenarioRequest& req,
                         std::optional<std::string> parent);
    void worker_loop();
    void run(const std::string& id);
    std::string new_id();

    ServiceConfig config_;
    report::ReportStore store_;
    mutable std::mutex mu_;
    mutable std::condition_variable cv_;
    mutable std::condition_variable idle_;
    std::map<std::string, std::shared_ptr<Entry>> entries_;
    std::map<std::string, std::string> byKey_; // dedup key -> id
    std::deque<std::string> queue_;
    std::size_t running_ = 0;
    bool stopping_ = false;
    std::uint64_t idCounter_ = 0;
    std::vector<std::thread> workers_;
};

} // namespace extsleuth::service
