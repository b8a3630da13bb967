#include "extsleuth/service/analysis_service.hpp"
#include "extsleuth/common/error.hpp"
#include "extsleuth/ingest/manifest.hpp"
#include "extsleuth/service/pipeline.hpp"

#include <fmt/format.h>

#include <chrono>
#include <ctime>
#include <random>

namespace extsleuth::service {

std::string_view to_string(AnalysisState s)
{
    switch (s) {
    case AnalysisState::Queued: return "queued";
    case AnalysisState::Running: return "running";
    case AnalysisState::Done: return "done";
    case AnalysisState::Failed: return "failed";
    }
    return "?";
}

ScenarioRequest parse_scenario_request(const nlohmann::json& j, const sandbox::ScenarioConfig& base)
{
    if (j.is_null())
        return {base, false};
    if (!j.is_object())
        throw Error(ErrorCode::InvalidScenario, "scenario request must be a JSON object");
    ScenarioRequest req;
    auto body = j;
    if (auto it = body.find("skipLlm"); it != body.end()) {
        if (!it->is_boolean())
            throw Error(ErrorCode::InvalidScenario, "skipLlm must be a boolean");
        req.skipLlm = it->get<bool>();
        body.erase(it);
    }
    req.scenario = sandbox::scenario_from_json(body, base);
    return req;
}

nlohmann::json record_to_json(const AnalysisRecord& r)
{
    nlohmann::json j;
    j["id"] = r.id;
    j["state"] = to_string(r.state);
    j["digest"] = r.digest;
    j["scenarioHash"] = r.scenarioHash;
    j["createdAt"] = r.createdAt;
    j["skipLlm"] = r.skipLlm;
    if (r.parentId)
        j["parentId"] = *r.parentId;
    if (r.error)
        j["error"] = *r.error;
    if (r.report) {
        j["cached"] = r.report->cached;
        j["report"] = report::report_to_json(*r.report);
    }
    return j;
}

namespace {

std::string utc_now()
{
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

AnalysisService::AnalysisService(ServiceConfig config)
    : config_(std::move(config))
    , store_(config_.storeDir)
{
    auto n = std::max<std::size_t>(1, config_.workers);
    for (std::size_t i = 0; i < n; ++i)
        workers_.emplace_back([this] { worker_loop(); });
}

AnalysisService::~AnalysisService()
{
    {
        std::lock_guard lk(mu_);
        stopping_ = true;
        // Queued work is dropped; close its logs so streaming readers finish.
        for (auto& id : queue_) {
            auto& e = entries_.at(id);
            e->record.state = AnalysisState::Failed;
            e->record.error = "service shut down";
            e->log->close();
        }
        queue_.clear();
    }
    cv_.notify_all();
    for (auto& t : workers_)
        t.join();
}

std::string AnalysisService::new_id()
{
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    return fmt::format("{:012x}{:04x}", rng() & 0xffffffffffffULL, ++idCounter_ & 0xffff);
}

SubmitResult AnalysisService::submit(std::string_view bytes, std::string_view fileName, const nlohmann::json& scenarioRequest)
{
    auto req = parse_scenario_request(scenarioRequest, sandbox::ScenarioConfig::defaults());
    if (bytes.empty())
        throw BadUpload("empty upload");
    std::shared_ptr<ingest::ExtensionArtifact> artifact;
    try {
        artifact = std::make_shared<ingest::ExtensionArtifact>(ingest::ingest_bytes(bytes, fileName).artifact);
    } catch (const Error& e) {
        throw BadUpload(e.what());
    }
    store_.save_artifact(artifact->digest, bytes, fileName.empty() ? "upload" : std::string(fileName));
    return enqueue(std::move(artifact), req, std::nullopt);
}

std::optional<SubmitResult> AnalysisService::rerun(const std::string& id, const nlohmann::json& scenarioRequest)
{
    std::shared_ptr<Entry> parent;
    {
        std::lock_guard lk(mu_);
        auto it = entries_.find(id);
        if (it == entries_.end())
            return std::nullopt;
        parent = it->second;
    }
    auto req = parse_scenario_request(scenarioRequest, parent->scenario);
    return enqueue(parent->artifact, req, id);
}

SubmitResult AnalysisService::enqueue(std::shared_ptr<const ingest::ExtensionArtifact> artifact, const ScenarioRequest& req,
                                      std::optional<std::string> parent)
{
    auto hash = sandbox::scenario_hash(req.scenario);
    bool llm = config_.model && !req.skipLlm;
    auto key = artifact->digest + "|" + hash + "|" + (llm ? "llm" : "nollm");

    std::lock_guard lk(mu_);
    if (auto it = byKey_.find(key); it != byKey_.end()) {
        auto& existing = entries_.at(it->second);
        if (existing->record.state != AnalysisState::Failed)
            return {existing->record.id, true};
    }
    auto e = std::make_shared<Entry>();
    e->record.id = new_id();
    while (entries_.count(e->record.id))
        e->record.id = new_id();
    e->record.digest = artifact->digest;
    e->record.scenarioHash = hash;
    e->record.parentId = std::move(parent);
    e->record.createdAt = utc_now();
    e->record.skipLlm = req.skipLlm;
    e->artifact = std::move(artifact);
    e->scenario = req.scenario;
    e->log = std::make_shared<sandbox::EventLog>();
    auto id = e->record.id;
    entries_[id] = e;
    byKey_[key] = id;
    queue_.push_back(id);
    cv_.notify_one();
    return {id, false};
}

void AnalysisService::worker_loop()
{
    for (;;) {
        std::string id;
        {
            std::unique_lock lk(mu_);
            cv_.wait(lk, [&] { return stopping_ || !queue_.empty(); });
            if (stopping_)
                return;
            id = queue_.front();
            queue_.pop_front();
            ++running_;
            entries_.at(id)->record.state = AnalysisState::Running;
        }
        run(id);
        {
            std::lock_guard lk(mu_);
            --running_;
        }
        idle_.notify_all();
    }
}

void AnalysisService::run(const std::string& id)
{
    std::shared_ptr<Entry> e;
    {
        std::lock_guard lk(mu_);
        e = entries_.at(id);
    }
    PipelineOptions o;
    o.scenario = e->scenario;
    o.sandbox = config_.sandbox;
    if (!e->record.skipLlm)
        o.model = config_.model;
    o.staticConfig = config_.staticConfig;
    o.signatures = config_.signatures ? &*config_.signatures : nullptr;
    o.store = &store_;
    o.liveLog = e->log.get();

    std::optional<report::RiskReport> result;
    std::optional<std::string> error;
    try {
        result = analyze_artifact(*e->artifact, o).report;
    } catch (const std::exception& ex) {
        error = ex.what();
    }
    e->log->close();

    std::lock_guard lk(mu_);
    if (result) {
        e->record.report = std::move(result);
        e->record.state = AnalysisState::Done;
    } else {
        e->record.error = std::move(error);
        e->record.state = AnalysisState::Failed;
    }
}

std::optional<AnalysisRecord> AnalysisService::get(const std::string& id) const
{
    std::lock_guard lk(mu_);
    auto it = entries_.find(id);
    if (it == entries_.end())
        return std::nullopt;
    return it->second->record;
}

std::shared_ptr<const sandbox::EventLog> AnalysisService::events(const std::string& id) const
{
    std::lock_guard lk(mu_);
    auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : it->second->log;
}

FileLookup AnalysisService::file(const std::string& id, const std::string& path) const
{
    std::shared_ptr<const ingest::ExtensionArtifact> a;
    {
        std::lock_guard lk(mu_);
        auto it = entries_.find(id);
        if (it == entries_.end())
            return {};
        a = it->second->artifact;
    }
    std::string prefix;
    if (!path.empty() && path != "/") {
        auto norm = ingest::normalize_entry_path(path);
        if (!norm)
            return {};
        if (auto* f = a->find(*norm))
            return FileBytes{f->path, f->bytes};
        prefix = *norm + "/";
    }
    FileListing out{prefix, {}};
    for (auto& f : a->files)
        if (f.path.compare(0, prefix.size(), prefix) == 0)
            out.paths.push_back(f.path);
    if (out.paths.empty())
        return {};
    return out;
}

void AnalysisService::wait_idle() const
{
    std::unique_lock lk(mu_);
    idle_.wait(lk, [&] { return queue_.empty() && running_ == 0; });
}

std::size_t AnalysisService::pending() const
{
    std::lock_guard lk(mu_);
    return queue_.size() + running_;
}

} // namespace extsleuth::service
