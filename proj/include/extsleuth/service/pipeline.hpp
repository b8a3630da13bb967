#pragma once

#include "extsleuth/detect/rules.hpp"
#include "extsleuth/detect/signatures.hpp"
#include "extsleuth/report/model.hpp"
#include "extsleuth/report/prompt.hpp"
#include "extsleuth/report/report.hpp"
#include "extsleuth/report/store.hpp"
#include "extsleuth/sandbox/sandbox.hpp"

#include <memory>

namespace extsleuth::service {

struct PipelineOptions {
    sandbox::ScenarioConfig scenario = sandbox::ScenarioConfig::defaults();
    sandbox::SandboxOptions sandbox;
    bool runDynamic = true;
    /// Null means the model step is skipped and the report has no llm field.
    std::shared_ptr<report::ModelAdapter> model;
    int maxOutputTokens = 1024;
    report::PromptBudget prompt;
    detect::StaticConfig staticConfig;
    const detect::SignatureDb* signatures = nullptr; // null: built-in database
    const report::ReportStore* store = nullptr;      // null: no caching
    /// Wall-clock durations make the report bytes differ between runs.
    bool recordTimings = true;
    /// Receives events as they happen (closed when the analysis ends).
    sandbox::EventLog* liveLog = nullptr;
};

struct AnalysisOutput {
    report::RiskReport report;
    std::vector<sandbox::SandboxEvent> events;
};

/// Static engine, sandbox run, dynamic findings, policy check, verdict and
/// the optional model narrative. With a store, a report for the same
/// (digest, scenarioHash) made with the same phases enabled is returned
/// from the cache instead, and fresh reports are saved.
AnalysisOutput analyze_artifact(const ingest::ExtensionArtifact& artifact, const PipelineOptions& options);

/// The prompt the pipeline would send for a finished report.
std::string prompt_for(const ingest::ExtensionArtifact& artifact, const report::RiskReport& report,
                       const std::vector<sandbox::SandboxEvent>& events, const report::PromptBudget& budget = {});

/// Plain-text rendering used by the CLI.
std::string format_text(const report::RiskReport& report, const std::vector<sandbox::SandboxEvent>& events,
                        std::size_t maxFindings = 15);

/// 0 Low, 1 Medium, 2 High.
int exit_code_for(report::RiskLevel level);
inline constexpr int kExitAnalysisError = 3;

} // namespace extsleuth::service
