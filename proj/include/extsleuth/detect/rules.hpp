#pragma once

#include "extsleuth/code/features.hpp"
#include "extsleuth/detect/finding.hpp"
#include "extsleuth/detect/signatures.hpp"
#include "extsleuth/detect/urls.hpp"
#include "extsleuth/ingest/artifact.hpp"
#include "extsleuth/sandbox/event.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace extsleuth::detect {

inline constexpr std::int64_t kDefaultAnalysisDateMs = 1735084800000; // 2024-12-25T00:00:00Z
inline constexpr std::size_t kBase64HighBytes = 100 * 1024;
inline constexpr std::size_t kBase64MediumBytes = 10 * 1024;

struct StaticConfig {
    HostLists lists = HostLists::defaults();
    /// Literal dates after this instant count as "future" for the
    /// date-threshold rule.
    std::int64_t analysisDateMs = kDefaultAnalysisDateMs;
    double obfuscationRatioThreshold = 0.35;
    /// Replaces the built-in severity of every finding of a rule.
    std::map<std::string, Severity> severityOverrides;
    /// Rule ids that produce no findings.
    std::set<std::string> disabledRules;
};

struct RuleInfo {
    std::string_view id;
    Severity severity; // default; some rules escalate per hit
    std::string_view title;
};

/// The built-in rule table, in evaluation order.
const std::vector<RuleInfo>& builtin_rules();

std::vector<Finding> run_pattern_rules(const ingest::ExtensionArtifact& artifact, const code::CodeModel& model,
                                       const StaticConfig& config = {});

/// Epoch ms of a literal date inside a comparison operand:
/// new Date("..."), new Date(y, m[, d]), Date.UTC(...), Date.parse("..."),
/// a quoted ISO date, or a 12-14 digit epoch-milliseconds number.
std::optional<std::int64_t> literal_date_ms(std::string_view operand);

/// ISO 8601 date/time, "Month D, YYYY", "D Month YYYY" or "YYYY/MM/DD", as UTC.
std::optional<std::int64_t> parse_date_text(std::string_view s);

std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d);

/// Pattern rules plus library scan, finalized (sorted, ids assigned).
std::vector<Finding> run_static_engine(const ingest::ExtensionArtifact& artifact, const code::CodeModel& model,
                                       const SignatureDb& db, const StaticConfig& config = {});

struct PolicyClaim {
    std::string sentence;
    std::size_t offset = 0; // in the policy text
};

/// Sentences where never / does not / do not / don't / doesn't / won't /
/// will not is followed within six words by collect / share / transmit /
/// send (any inflection) and the sentence mentions data, information or
/// cookies.
std::vector<PolicyClaim> extract_negative_claims(std::string_view policy);

/// Upload-style request (POST/PUT/PATCH/beacon/websocket send) to a host
/// that is not known-benign, or any request to an exfil-indicator host.
bool is_exfil_event(const sandbox::SandboxEvent& event, const HostLists& lists);
bool is_exfil_finding(const Finding& f);

/// High "policy-contradiction" per negative claim when exfiltration evidence
/// exists. Located in the policy file when its bytes are the policy text.
std::vector<Finding> check_policy_consistency(const ingest::ExtensionArtifact& artifact,
                                              const std::vector<Finding>& findings,
                                              const std::vector<sandbox::SandboxEvent>& events,
                                              const HostLists& lists = HostLists::defaults());

} // namespace extsleuth::detect
