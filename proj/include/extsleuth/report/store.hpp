#pragma once

#include "extsleuth/report/report.hpp"
#include "extsleuth/sandbox/event.hpp"

#include <filesystem>
#include <mutex>
#include <optional>
#include <set>
#include <string>

namespace extsleuth::report {

/// Directory of cached reports keyed by artifact digest and scenario hash:
///   <root>/<digest>/<scenarioHash>.report.json
///   <root>/<digest>/<scenarioHash>.events.jsonl
///   <root>/<digest>/artifact.bin (+ artifact.name), kept for reruns
///   <root>/approved.txt, one approved digest per line
/// Every write goes to a temporary file first and is renamed into place.
class ReportStore {
public:
    explicit ReportStore(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }

    /// Hit: the stored report with cached=true. A corrupt entry is removed
    /// and reported as a miss.
    std::optional<RiskReport> lookup(const std::string& digest, const std::string& scenarioHash) const;
    std::optional<std::vector<sandbox::SandboxEvent>> load_events(const std::string& digest,
                                                                   const std::string& scenarioHash) const;
    /// Stores the report (with cached=false) and its event log.
    void save(const RiskReport& report, const std::vector<sandbox::SandboxEvent>& events) const;

    void save_artifact(const std::string& digest, std::string_view bytes, const std::string& name) const;
    /// Bytes and original file name of a retained upload.
    std::optional<std::pair<std::string, std::string>> load_artifact(const std::string& digest) const;

    bool is_approved(const std::string& digest) const;
    void approve(const std::string& digest) const;

    std::filesystem::path report_path(const std::string& digest, const std::string& scenarioHash) const;
    std::filesystem::path events_path(const std::string& digest, const std::string& scenarioHash) const;
    static std::string events_file_name(const std::string& scenarioHash);

private:
    std::filesystem::path root_;
    mutable std::mutex approveMu_;
};

/// Writes `bytes` to a sibling temporary file and renames it over `path`.
/// Throws Error(Io).
void atomic_write(const std::filesystem::path& path, std::string_view bytes);

/// Reads a whole file; nullopt when it does not exist or cannot be read.
std::optional<std::string> read_file(const std::filesystem::path& path);

} // namespace extsleuth::report
