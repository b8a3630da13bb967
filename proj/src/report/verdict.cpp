#include "extsleuth/report/verdict.hpp"

#include <algorithm>

namespace extsleuth::report {

std::string_view to_string(RiskLevel l)
{
    switch (l) {
    case RiskLevel::Low: return "Low";
    case RiskLevel::Medium: return "Medium";
    case RiskLevel::High: return "High";
    }
    return "Low";
}

std::optional<RiskLevel> parse_risk_level(std::string_view s)
{
    for (auto l : {RiskLevel::Low, RiskLevel::Medium, RiskLevel::High})
        if (to_string(l) == s)
            return l;
    return std::nullopt;
}

int severity_weight(detect::Severity s, const ScoreWeights& w)
{
    switch (s) {
    case detect::Severity::High: return w.high;
    case detect::Severity::Medium: return w.medium;
    case detect::Severity::Low: return w.low;
    case detect::Severity::Info: return w.info;
    }
    return 0;
}

RiskVerdict aggregate_score(const std::vector<detect::Finding>& findings, const ScoreWeights& weights)
{
    RiskVerdict v;
    bool anyHigh = false;
    std::vector<const detect::Finding*> scoring;
    for (auto& f : findings) {
        v.score += severity_weight(f.severity, weights);
        anyHigh = anyHigh || f.severity == detect::Severity::High;
        if (f.severity != detect::Severity::Info)
            scoring.push_back(&f);
    }
    if (anyHigh)
        v.level = RiskLevel::High;
    else if (v.score >= weights.mediumThreshold)
        v.level = RiskLevel::Medium;
    std::sort(scoring.begin(), scoring.end(), [](auto* a, auto* b) {
        if (a->severity != b->severity)
            return a->severity > b->severity;
        return a->id < b->id;
    });
    for (auto* f : scoring)
        v.reasons.push_back(f->id.empty() ? f->ruleId : f->id);
    return v;
}

} // namespace extsleuth::report
