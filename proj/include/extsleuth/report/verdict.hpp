#pragma once

#include "extsleuth/detect/finding.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace extsleuth::report {

enum class RiskLevel { Low, Medium, High };

std::string_view to_string(RiskLevel l);
std::optional<RiskLevel> parse_risk_level(std::string_view s);

struct ScoreWeights {
    int high = 10;
    int medium = 3;
    int low = 1;
    int info = 0;
    /// Score at or above which a verdict without High findings is Medium.
    int mediumThreshold = 3;
};

struct RiskVerdict {
    RiskLevel level = RiskLevel::Low;
    int score = 0;
    /// Ids of the scoring findings, most severe first, then by id.
    std::vector<std::string> reasons;
    /// Digest is on the analyst's approved list. Does not change level.
    bool approved = false;

    bool operator==(const RiskVerdict&) const = default;
};

int severity_weight(detect::Severity s, const ScoreWeights& w = {});

/// High iff any High finding, else Medium iff score >= threshold, else Low.
RiskVerdict aggregate_score(const std::vector<detect::Finding>& findings, const ScoreWeights& weights = {});

} // namespace extsleuth::report
