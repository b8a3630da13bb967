#pragma once

#include "extsleuth/code/ast.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace extsleuth::detect {

inline constexpr std::size_t kMaxEvidenceBytes = 256;

enum class Severity { Info, Low, Medium, High };

std::string_view to_string(Severity s);
std::optional<Severity> parse_severity(std::string_view s);

enum class Phase { Static, Dynamic };

std::string_view to_string(Phase p);
std::optional<Phase> parse_phase(std::string_view s);

struct Location {
    std::string path;
    code::Span span;

    bool operator==(const Location&) const = default;
};

struct Finding {
    std::string id;
    std::string ruleId;
    Severity severity = Severity::Info;
    std::string title;
    std::string detail;
    /// Verbatim slice of the located source, or of the event's argsSummary
    /// for dynamic findings.
    std::string evidence;
    std::optional<Location> location;
    Phase phase = Phase::Static;
    /// Dynamic findings: the event the evidence was cut from.
    std::optional<std::uint64_t> eventSeq;

    bool operator==(const Finding&) const = default;
};

/// Builds a located static finding. The span is shortened so that it covers
/// exactly the (possibly truncated) evidence, keeping slice(span) == evidence.
Finding make_located_finding(std::string ruleId, Severity severity, std::string title, std::string detail,
                             std::string_view path, std::string_view source, code::Span span);

/// Span for a byte range of `source`, with 1-based line/column filled in.
code::Span span_at(std::string_view source, std::size_t offset, std::size_t length);

/// Sorts by (path, span, ruleId) and assigns ids: S-<rule>-<path>:<line>:<col>
/// for located static findings, S-<rule>-artifact otherwise, D-<rule>-<seq>
/// for dynamic ones; repeated ids get a "#2", "#3", ... suffix.
void finalize_findings(std::vector<Finding>& findings);

/// Deterministic ordering used by finalize_findings.
bool finding_order(const Finding& a, const Finding& b);

} // namespace extsleuth::detect
