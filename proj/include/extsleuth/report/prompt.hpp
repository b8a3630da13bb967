#pragma once

#include "extsleuth/detect/finding.hpp"
#include "extsleuth/ingest/artifact.hpp"
#include "extsleuth/sandbox/event.hpp"

#include <string>
#include <vector>

namespace extsleuth::report {

struct PromptBudget {
    std::size_t maxPromptChars = 24000;
    /// Lines of context around each High/Medium finding (half above, half below).
    std::size_t excerptWindowLines = 20;
    std::size_t maxEvents = 50;
};

struct PromptContext {
    const ingest::ExtensionArtifact* artifact = nullptr; // may be null
    std::vector<detect::Finding> findings;               // static and dynamic
    std::vector<sandbox::SandboxEvent> events;
};

/// Longest kept line inside an excerpt; longer lines are cut around the
/// finding column.
inline constexpr std::size_t kExcerptLineBytes = 240;

/// Sections, highest priority first: instruction, manifest summary, static
/// findings, dynamic events, code excerpts, privacy policy. When over
/// budget, sections are cut starting from the lowest priority one. The
/// result never exceeds maxPromptChars bytes.
std::string build_llm_prompt(const PromptContext& ctx, const PromptBudget& budget = {});

/// Events chosen for the prompt: those referenced by findings (most severe
/// first), then by category interest, at most `limit`, returned in seq order.
std::vector<sandbox::SandboxEvent> select_prompt_events(const std::vector<sandbox::SandboxEvent>& events,
                                                        const std::vector<detect::Finding>& findings, std::size_t limit);

} // namespace extsleuth::report
