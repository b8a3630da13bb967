#include "extsleuth/service/pipeline.hpp"
#include "extsleuth/code/features.hpp"
#include "extsleuth/common/error.hpp"
#include "extsleuth/common/hash.hpp"
#include "extsleuth/common/text.hpp"
#include "extsleuth/report/dynamic.hpp"

#include <fmt/format.h>

#include <chrono>
#include <map>

namespace extsleuth::service {

using report::RiskReport;

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0)
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

bool compatible(const RiskReport& r, const PipelineOptions& o)
{
    return r.dynamic.has_value() == o.runDynamic && r.llm.has_value() == static_cast<bool>(o.model) &&
           (!r.llm || r.llm->model == o.model->descriptor());
}

void replay(sandbox::EventLog* log, const std::vector<sandbox::SandboxEvent>& events)
{
    if (!log)
        return;
    for (auto e : events)
        log->append(std::move(e));
    log->close();
}

std::vector<detect::Finding> all_findings(const RiskReport& r)
{
    auto all = r.findings;
    all.insert(all.end(), r.contradictions.begin(), r.contradictions.end());
    return all;
}

} // namespace

AnalysisOutput analyze_artifact(const ingest::ExtensionArtifact& artifact, const PipelineOptions& o)
{
    auto start = Clock::now();
    sandbox::validate(o.scenario);
    auto scenarioHash = sandbox::scenario_hash(o.scenario);

    if (o.store) {
        if (auto hit = o.store->lookup(artifact.digest, scenarioHash); hit && compatible(*hit, o)) {
            AnalysisOutput out;
            out.report = std::move(*hit);
            out.events = o.store->load_events(artifact.digest, scenarioHash).value_or(std::vector<sandbox::SandboxEvent>{});
            out.report.verdict.approved = o.store->is_approved(artifact.digest);
            replay(o.liveLog, out.events);
            return out;
        }
    }

    AnalysisOutput out;
    auto& r = out.report;
    r.artifact = report::summarize_artifact(artifact);
    r.scenarioHash = scenarioHash;
    r.scenario = sandbox::to_json(o.scenario);
    report::Timings timings;

    auto t = Clock::now();
    auto model = code::build_code_model(artifact);
    auto& db = o.signatures ? *o.signatures : detect::default_signature_db();
    r.findings = detect::run_static_engine(artifact, model, db, o.staticConfig);
    timings.staticMs = ms_since(t);

    if (o.runDynamic) {
        t = Clock::now();
        report::DynamicSummary d;
        try {
            auto run = sandbox::analyze_dynamic(artifact, o.scenario, o.sandbox, o.liveLog);
            out.events = std::move(run.events);
            d.outcome = run.outcome;
            d.finalVirtualTimeMs = run.finalVirtualTimeMs;
            d.tasksFired = run.tasksFired;
            d.filesWritten = run.filesWritten;
        } catch (const Error& e) {
            if (o.liveLog) {
                out.events = o.liveLog->snapshot();
                o.liveLog->close();
            }
            d.outcome = {sandbox::RunStatus::RuntimeError, e.what()};
            d.finalVirtualTimeMs = o.scenario.virtualStartDate;
        }
        d.eventCount = out.events.size();
        d.eventLogRef = report::ReportStore::events_file_name(scenarioHash);
        d.eventLogDigest = sha256_hex(sandbox::serialize_events(out.events));
        r.dynamic = d;
        auto dyn = report::derive_dynamic_findings(out.events, o.staticConfig.lists);
        r.findings.insert(r.findings.end(), dyn.begin(), dyn.end());
        detect::finalize_findings(r.findings);
        timings.dynamicMs = ms_since(t);
    } else if (o.liveLog) {
        o.liveLog->close();
    }

    r.contradictions = detect::check_policy_consistency(artifact, r.findings, out.events, o.staticConfig.lists);
    detect::finalize_findings(r.contradictions);
    r.verdict = report::aggregate_score(all_findings(r));
    r.verdict.approved = o.store && o.store->is_approved(artifact.digest);

    if (o.model) {
        t = Clock::now();
        auto prompt = prompt_for(artifact, r, out.events, o.prompt);
        try {
            auto text = o.model->invoke(prompt, o.maxOutputTokens);
            auto parsed = report::parse_model_output(text);
            r.llm = report::LlmResult{o.model->descriptor(), parsed.narrative, parsed.riskLevel};
        } catch (const std::exception& e) {
            r.llmError = e.what();
        }
        timings.llmMs = ms_since(t);
    }
    timings.totalMs = ms_since(start);
    if (o.recordTimings)
        r.timings = timings;

    // A failed model call is not cached, so the next run retries it.
    if (o.store && !r.llmError)
        o.store->save(r, out.events);
    return out;
}

std::string prompt_for(const ingest::ExtensionArtifact& artifact, const RiskReport& r,
                       const std::vector<sandbox::SandboxEvent>& events, const report::PromptBudget& budget)
{
    report::PromptContext ctx;
    ctx.artifact = &artifact;
    ctx.findings = all_findings(r);
    ctx.events = events;
    return report::build_llm_prompt(ctx, budget);
}

std::string format_text(const RiskReport& r, const std::vector<sandbox::SandboxEvent>& events, std::size_t maxFindings)
{
    std::string s;
    auto& a = r.artifact;
    s += fmt::format("{} {} ({}), digest {}\n", a.name.empty() ? "<unnamed>" : a.name, a.version, ingest::to_string(a.kind),
                     a.digest.substr(0, 16));
    s += fmt::format("Verdict: {} (score {}){}{}\n", report::to_string(r.verdict.level), r.verdict.score,
                     r.verdict.approved ? ", approved by analyst" : "", r.cached ? ", cached" : "");

    auto all = all_findings(r);
    std::stable_sort(all.begin(), all.end(), [](auto& x, auto& y) { return x.severity > y.severity; });
    std::map<detect::Severity, int> bySeverity;
    for (auto& f : all)
        ++bySeverity[f.severity];
    s += fmt::format("Findings: {} High, {} Medium, {} Low, {} Info\n", bySeverity[detect::Severity::High],
                     bySeverity[detect::Severity::Medium], bySeverity[detect::Severity::Low], bySeverity[detect::Severity::Info]);
    for (std::size_t i = 0; i < all.size() && i < maxFindings; ++i) {
        auto& f = all[i];
        s += fmt::format("  [{}] {}: {}\n", detect::to_string(f.severity), f.id, f.title);
        if (!f.evidence.empty()) {
            std::string ev;
            for (char c : text::truncate_with_marker(f.evidence, 120))
                ev.push_back(c == '\n' ? ' ' : c);
            s += "      " + ev + "\n";
        }
    }
    if (all.size() > maxFindings)
        s += fmt::format("  ... {} more\n", all.size() - maxFindings);

    if (r.dynamic) {
        std::map<std::string, int> byCategory;
        int blocked = 0;
        for (auto& e : events) {
            ++byCategory[std::string(sandbox::to_string(e.category))];
            blocked += e.blocked;
        }
        s += fmt::format("Sandbox: {} events ({} blocked), outcome {}", r.dynamic->eventCount, blocked,
                         sandbox::to_string(r.dynamic->outcome.status));
        if (!r.dynamic->outcome.detail.empty())
            s += " (" + r.dynamic->outcome.detail + ")";
        s += "\n";
        if (!byCategory.empty()) {
            s += " ";
            for (auto& [cat, n] : byCategory)
                s += fmt::format(" {}={}", cat, n);
            s += "\n";
        }
    } else {
        s += "Sandbox: skipped\n";
    }
    if (r.llm)
        s += fmt::format("Model ({}): risk level {}\n", r.llm->model, r.llm->riskLevel ? report::to_string(*r.llm->riskLevel) : "Unknown");
    else if (r.llmError)
        s += "Model: failed (" + *r.llmError + ")\n";
    return s;
}

int exit_code_for(report::RiskLevel level)
{
    switch (level) {
    case report::RiskLevel::Low: return 0;
    case report::RiskLevel::Medium: return 1;
    case report::RiskLevel::High: return 2;
    }
    return kExitAnalysisError;
}

} // namespace extsleuth::service
