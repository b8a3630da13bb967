#pragma once

#include "extsleuth/detect/finding.hpp"
#include "extsleuth/ingest/artifact.hpp"
#include "extsleuth/report/verdict.hpp"
#include "extsleuth/sandbox/sandbox.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace extsleuth::report {

inline constexpr int kReportSchema = 1;
inline constexpr std::string_view kToolVersion = "extsleuth 0.1.0";

struct ArtifactSummary {
    std::string digest;
    ingest::ArtifactKind kind = ingest::ArtifactKind::ChromeExtension;
    std::string name;
    std::string version;
    std::string publisher;
    std::string description;
    std::vector<std::string> permissions;
    std::vector<std::string> hostPatterns;
    std::size_t fileCount = 0;
    std::size_t totalBytes = 0;
    std::optional<std::string> privacyPolicyPath;

    bool operator==(const ArtifactSummary&) const = default;
};

ArtifactSummary summarize_artifact(const ingest::ExtensionArtifact& a);

struct DynamicSummary {
    sandbox::RunOutcome outcome;
    std::size_t eventCount = 0;
    std::int64_t finalVirtualTimeMs = 0;
    std::size_t tasksFired = 0;
    std::vector<std::string> filesWritten;
    /// Events file next to the report in the store.
    std::string eventLogRef;
    /// SHA-256 of the serialized event log.
    std::string eventLogDigest;

    bool operator==(const DynamicSummary&) const = default;
};

struct LlmResult {
    std::string model;
    std::string narrative;
    std::optional<RiskLevel> riskLevel; // absent = Unknown

    bool operator==(const LlmResult&) const = default;
};

/// Wall-clock durations; the only non-reproducible part of a report, so
/// pipelines can leave it out.
struct Timings {
    std::int64_t staticMs = 0;
    std::int64_t dynamicMs = 0;
    std::int64_t llmMs = 0;
    std::int64_t totalMs = 0;

    bool operator==(const Timings&) const = default;
};

struct RiskReport {
    int schema = kReportSchema;
    std::string toolVersion = std::string(kToolVersion);
    ArtifactSummary artifact;
    std::string scenarioHash;
    nlohmann::json scenario; // canonical scenario JSON
    RiskVerdict verdict;
    std::vector<detect::Finding> findings; // static then dynamic, finalized
    std::vector<detect::Finding> contradictions;
    std::optional<DynamicSummary> dynamic; // absent when dynamic analysis was skipped
    std::optional<LlmResult> llm;          // absent when the model was skipped
    std::optional<std::string> llmError;   // model requested but failed
    std::optional<Timings> timings;
    /// Set on cache hits; never stored.
    bool cached = false;

    bool operator==(const RiskReport&) const = default;
};

nlohmann::json finding_to_json(const detect::Finding& f);
detect::Finding finding_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const RiskReport& r);
/// Throws Error(SchemaVersionMismatch) for a different schema or a body that
/// does not hold a report.
RiskReport report_from_json(const nlohmann::json& j);

/// Canonical bytes: sorted keys, two-space indent, trailing newline.
std::string serialize_report(const RiskReport& r);
RiskReport deserialize_report(std::string_view bytes);

} // namespace extsleuth::report
