#include "extsleuth/detect/finding.hpp"
#include "extsleuth/common/text.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace extsleuth::detect {

std::string_view to_string(Severity s)
{
    switch (s) {
    case Severity::Info: return "Info";
    case Severity::Low: return "Low";
    case Severity::Medium: return "Medium";
    case Severity::High: return "High";
    }
    return "Info";
}

std::optional<Severity> parse_severity(std::string_view s)
{
    for (auto v : {Severity::Info, Severity::Low, Severity::Medium, Severity::High})
        if (text::iequals(s, to_string(v)))
            return v;
    return std::nullopt;
}

std::string_view to_string(Phase p)
{
    return p == Phase::Static ? "static" : "dynamic";
}

std::optional<Phase> parse_phase(std::string_view s)
{
    if (s == "static")
        return Phase::Static;
    if (s == "dynamic")
        return Phase::Dynamic;
    return std::nullopt;
}

code::Span span_at(std::string_view source, std::size_t offset, std::size_t length)
{
    offset = std::min(offset, source.size());
    length = std::min(length, source.size() - offset);
    auto lc = text::line_col(source, offset);
    return {static_cast<std::uint32_t>(offset), static_cast<std::uint32_t>(length), lc.line, lc.column};
}

Finding make_located_finding(std::string ruleId, Severity severity, std::string title, std::string detail,
                             std::string_view path, std::string_view source, code::Span span)
{
    Finding f;
    f.ruleId = std::move(ruleId);
    f.severity = severity;
    f.title = std::move(title);
    f.detail = std::move(detail);
    auto offset = std::min<std::size_t>(span.offset, source.size());
    auto length = std::min<std::size_t>(span.length, source.size() - offset);
    auto evidence = text::utf8_prefix(source.substr(offset, length), kMaxEvidenceBytes);
    f.evidence = std::string(evidence);
    span.offset = static_cast<std::uint32_t>(offset);
    span.length = static_cast<std::uint32_t>(evidence.size());
    if (span.line == 0)
        span = span_at(source, offset, evidence.size());
    f.location = Location{std::string(path), span};
    f.phase = Phase::Static;
    return f;
}

namespace {

auto sort_key(const Finding& f)
{
    static const std::string kNone;
    const auto& path = f.location ? f.location->path : kNone;
    std::uint32_t off = f.location ? f.location->span.offset : 0;
    std::uint32_t len = f.location ? f.location->span.length : 0;
    std::uint64_t seq = f.eventSeq.value_or(0);
    return std::tie(path, off, len, f.ruleId, f.phase, seq, f.evidence, f.title, f.detail);
}

std::string base_id(const Finding& f)
{
    if (f.phase == Phase::Dynamic)
        return "D-" + f.ruleId + "-" + (f.eventSeq ? std::to_string(*f.eventSeq) : std::string("artifact"));
    if (!f.location)
        return "S-" + f.ruleId + "-artifact";
    return "S-" + f.ruleId + "-" + f.location->path + ":" + std::to_string(f.location->span.line) + ":" +
           std::to_string(f.location->span.column);
}

} // namespace

bool finding_order(const Finding& a, const Finding& b)
{
    auto ka = sort_key(a);
    auto kb = sort_key(b);
    if (ka != kb)
        return ka < kb;
    return a.severity < b.severity;
}

void finalize_findings(std::vector<Finding>& findings)
{
    std::stable_sort(findings.begin(), findings.end(), finding_order);
    std::set<std::string> used;
    std::map<std::string, int> next;
    for (auto& f : findings) {
        auto id = base_id(f);
        auto candidate = id;
        int& n = next[id];
        if (n == 0)
            n = 1;
        while (used.count(candidate))
            candidate = id + "#" + std::to_string(++n);
        used.insert(candidate);
        f.id = candidate;
    }
}

} // namespace extsleuth::detect
