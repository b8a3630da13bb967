#include "extsleuth/report/prompt.hpp"
#include "extsleuth/common/text.hpp"

#include <algorithm>
#include <map>

namespace extsleuth::report {

using detect::Finding;
using detect::Severity;
using sandbox::EventCategory;
using sandbox::SandboxEvent;

namespace {

constexpr std::string_view kInstruction =
    "You are reviewing a browser or editor extension (or an npm package) for malicious intent.\n"
    "Below are its manifest, the findings of a static scanner, what it did inside an instrumented sandbox,\n"
    "and the source lines around the most important findings. Weigh whether the behavior serves the stated\n"
    "purpose or looks like data theft, remote code execution or persistence. Comment on the privacy policy\n"
    "if one is included. Explain your reasoning briefly and end with exactly one line of the form\n"
    "\"Risk level: High\", \"Risk level: Medium\" or \"Risk level: Low\".\n";

constexpr std::string_view kNoFindings =
    "\nThe static and dynamic analyses produced no findings. Give your overall impression of the package.\n";

constexpr std::string_view kCutMarker = "\n[section truncated]\n";
constexpr std::size_t kEvidenceInPrompt = 160;
constexpr std::size_t kSummaryInPrompt = 200;

std::string join(const std::vector<std::string>& items, std::string_view sep = ", ")
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i)
            out += sep;
        out += items[i];
    }
    return out;
}

std::string one_line(std::string_view s, std::size_t max)
{
    std::string flat;
    for (char c : s)
        flat.push_back(c == '\n' || c == '\r' ? ' ' : c);
    return text::truncate_with_marker(flat, max);
}

std::string manifest_section(const ingest::ExtensionArtifact& a)
{
    auto& m = a.manifest;
    std::string s = "\n## Package\n";
    s += "kind: " + std::string(ingest::to_string(a.kind)) + "\n";
    s += "name: " + m.name + " " + m.version + "\n";
    if (!m.publisher.empty())
        s += "publisher: " + m.publisher + "\n";
    if (!m.description.empty())
        s += "description: " + one_line(m.description, 300) + "\n";
    if (!m.permissions.empty())
        s += "permissions: " + join(m.permissions) + "\n";
    if (!m.hostPatterns.empty())
        s += "host access: " + join(m.hostPatterns) + "\n";
    for (auto& cs : m.contentScripts)
        s += "content scripts " + join(cs.scripts) + " on " + join(cs.matches) + "\n";
    if (!m.backgroundScripts.empty())
        s += "background: " + join(m.backgroundScripts) + "\n";
    if (!m.mainEntry.empty() && a.kind != ingest::ArtifactKind::ChromeExtension)
        s += "main: " + m.mainEntry + "\n";
    if (!m.activationEvents.empty())
        s += "activation: " + join(m.activationEvents) + "\n";
    for (auto& [phase, cmd] : m.lifecycleScripts)
        s += phase + " script: " + one_line(cmd, 300) + "\n";
    std::size_t bytes = 0;
    for (auto& f : a.files)
        bytes += f.sizeBytes;
    s += "files: " + std::to_string(a.files.size()) + " (" + text::human_size(bytes) + ")\n";
    return s;
}

std::string finding_line(const Finding& f)
{
    std::string s = "- [" + std::string(detect::to_string(f.severity)) + "] " + (f.id.empty() ? f.ruleId : f.id) + ": " + f.title;
    if (f.location)
        s += " (" + f.location->path + ":" + std::to_string(f.location->span.line) + ")";
    s += ". " + one_line(f.detail, 300);
    if (!f.evidence.empty())
        s += " Evidence: `" + one_line(f.evidence, kEvidenceInPrompt) + "`";
    return s + "\n";
}

bool by_severity(const Finding* a, const Finding* b)
{
    if (a->severity != b->severity)
        return a->severity > b->severity;
    return a->id < b->id;
}

std::vector<const Finding*> sorted(const std::vector<Finding>& findings, detect::Phase phase)
{
    std::vector<const Finding*> out;
    for (auto& f : findings)
        if (f.phase == phase)
            out.push_back(&f);
    std::stable_sort(out.begin(), out.end(), by_severity);
    return out;
}

int category_interest(EventCategory c)
{
    switch (c) {
    case EventCategory::Network:
    case EventCategory::Process:
    case EventCategory::Clipboard: return 5;
    case EventCategory::Eval: return 4;
    case EventCategory::Filesystem: return 3;
    case EventCategory::ExtensionApi: return 2;
    case EventCategory::Dom: return 2;
    case EventCategory::Timer: return 1;
    case EventCategory::Lifecycle: return 0;
    }
    return 0;
}

std::string event_line(const SandboxEvent& e, std::int64_t t0)
{
    return "- #" + std::to_string(e.seq) + " t+" + std::to_string(e.virtualTimeMs - t0) + "ms " +
           std::string(sandbox::to_string(e.category)) + " " + e.action + (e.blocked ? " [blocked]" : "") +
           (e.origin.empty() ? "" : " from " + e.origin) + ": " + one_line(e.argsSummary, kSummaryInPrompt) + "\n";
}

std::vector<std::string_view> split_lines(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto nl = s.find('\n', start);
        if (nl == std::string_view::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, nl - start));
        start = nl + 1;
    }
    return out;
}

std::string clip_line(std::string_view line, std::optional<std::uint32_t> column)
{
    if (line.size() <= kExcerptLineBytes)
        return std::string(line);
    std::size_t from = 0;
    if (column && *column > kExcerptLineBytes / 2)
        from = std::min<std::size_t>(*column - kExcerptLineBytes / 2, line.size() - kExcerptLineBytes);
    // keep the cut on code point boundaries
    while (from > 0 && (static_cast<unsigned char>(line[from]) & 0xC0) == 0x80)
        --from;
    auto body = text::utf8_prefix(line.substr(from), kExcerptLineBytes);
    return (from ? "..." : "") + std::string(body) + "...";
}

std::string excerpt_section(const PromptContext& ctx, const PromptBudget& budget)
{
    if (!ctx.artifact)
        return {};
    struct FileRanges {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> ranges; // 1-based inclusive
        std::map<std::uint32_t, std::uint32_t> columns;
    };
    std::vector<std::string> order;
    std::map<std::string, FileRanges> files;
    std::vector<const Finding*> list;
    for (auto& f : ctx.findings)
        if (f.location && (f.severity == Severity::High || f.severity == Severity::Medium))
            list.push_back(&f);
    std::stable_sort(list.begin(), list.end(), by_severity);
    auto half = static_cast<std::uint32_t>(budget.excerptWindowLines / 2);
    for (auto* f : list) {
        auto line = std::max<std::uint32_t>(1, f->location->span.line);
        auto& fr = files[f->location->path];
        if (fr.ranges.empty())
            order.push_back(f->location->path);
        std::uint32_t lo = line > half ? line - half : 1;
        std::uint32_t hi = line + (budget.excerptWindowLines > half ? static_cast<std::uint32_t>(budget.excerptWindowLines) - half : 0);
        hi = hi > 0 ? hi - 1 : 0;
        fr.ranges.emplace_back(lo, std::max(lo, hi));
        fr.columns.emplace(line, f->location->span.column);
    }
    if (order.empty())
        return {};
    std::string s = "\n## Code excerpts\n";
    for (auto& path : order) {
        auto* file = ctx.artifact->find(path);
        if (!file)
            continue;
        auto lines = split_lines(file->bytes);
        auto& fr = files[path];
        std::sort(fr.ranges.begin(), fr.ranges.end());
        std::vector<std::pair<std::uint32_t, std::uint32_t>> merged;
        for (auto r : fr.ranges) {
            if (!merged.empty() && r.first <= merged.back().second + 1)
                merged.back().second = std::max(merged.back().second, r.second);
            else
                merged.push_back(r);
        }
        for (auto [lo, hi] : merged) {
            hi = std::min<std::uint32_t>(hi, static_cast<std::uint32_t>(lines.size()));
            if (lo > hi)
                continue;
            s += "### " + path + " lines " + std::to_string(lo) + "-" + std::to_string(hi) + "\n```\n";
            for (auto n = lo; n <= hi; ++n) {
                auto col = fr.columns.find(n);
                s += clip_line(lines[n - 1], col == fr.columns.end() ? std::nullopt : std::optional(col->second)) + "\n";
            }
            s += "```\n";
        }
    }
    return s;
}

} // namespace

std::vector<SandboxEvent> select_prompt_events(const std::vector<SandboxEvent>& events, const std::vector<Finding>& findings,
                                               std::size_t limit)
{
    std::map<std::uint64_t, Severity> flagged;
    for (auto& f : findings)
        if (f.eventSeq) {
            auto [it, fresh] = flagged.emplace(*f.eventSeq, f.severity);
            if (!fresh && f.severity > it->second)
                it->second = f.severity;
        }
    std::vector<const SandboxEvent*> ranked;
    for (auto& e : events)
        ranked.push_back(&e);
    auto rank = [&](const SandboxEvent* e) {
        auto it = flagged.find(e->seq);
        int sev = it == flagged.end() ? -1 : static_cast<int>(it->second);
        return std::make_tuple(-sev, -category_interest(e->category), e->seq);
    };
    std::stable_sort(ranked.begin(), ranked.end(), [&](auto* a, auto* b) { return rank(a) < rank(b); });
    if (ranked.size() > limit)
        ranked.resize(limit);
    std::sort(ranked.begin(), ranked.end(), [](auto* a, auto* b) { return a->seq < b->seq; });
    std::vector<SandboxEvent> out;
    for (auto* e : ranked)
        out.push_back(*e);
    return out;
}

std::string build_llm_prompt(const PromptContext& ctx, const PromptBudget& budget)
{
    std::vector<std::string> sections;
    sections.emplace_back(kInstruction);
    if (ctx.findings.empty() && ctx.events.empty())
        sections.back() += kNoFindings;

    sections.push_back(ctx.artifact ? manifest_section(*ctx.artifact) : std::string());

    std::string stat;
    for (auto* f : sorted(ctx.findings, detect::Phase::Static))
        stat += finding_line(*f);
    sections.push_back(stat.empty() ? (ctx.findings.empty() ? "" : "\n## Static findings\nnone\n") : "\n## Static findings\n" + stat);

    std::string dyn;
    for (auto* f : sorted(ctx.findings, detect::Phase::Dynamic))
        dyn += finding_line(*f);
    auto picked = select_prompt_events(ctx.events, ctx.findings, budget.maxEvents);
    if (!picked.empty()) {
        auto t0 = ctx.events.front().virtualTimeMs;
        dyn += "Events (" + std::to_string(picked.size()) + " of " + std::to_string(ctx.events.size()) + "):\n";
        for (auto& e : picked)
            dyn += event_line(e, t0);
    }
    sections.push_back(dyn.empty() ? std::string() : "\n## Sandbox behavior\n" + dyn);

    sections.push_back(excerpt_section(ctx, budget));

    std::string policy;
    if (ctx.artifact && ctx.artifact->privacyPolicyText)
        policy = "\n## Privacy policy\n" + *ctx.artifact->privacyPolicyText + "\n";
    sections.push_back(policy);

    std::size_t total = 0;
    for (auto& s : sections)
        total += s.size();
    for (std::size_t i = sections.size() - 1; i > 0 && total > budget.maxPromptChars; --i) {
        auto& s = sections[i];
        auto excess = total - budget.maxPromptChars;
        total -= s.size();
        if (s.size() > excess + kCutMarker.size() + 40) {
            auto keep = text::utf8_prefix(s, s.size() - excess - kCutMarker.size());
            s = std::string(keep) + std::string(kCutMarker);
        } else {
            s.clear();
        }
        total += s.size();
    }
    std::string prompt;
    for (auto& s : sections)
        prompt += s;
    if (prompt.size() > budget.maxPromptChars)
        prompt = std::string(text::utf8_prefix(prompt, budget.maxPromptChars));
    return prompt;
}

} // namespace extsleuth::report
