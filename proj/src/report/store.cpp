#include "extsleuth/report/store.hpp"
#include "extsleuth/common/error.hpp"
#include "extsleuth/common/text.hpp"

#include <atomic>
#include <fstream>
#include <regex>
#include <sstream>
#include <unistd.h>

namespace extsleuth::report {

namespace fs = std::filesystem;

namespace {

// Keys come from our own hashing, but the service passes them through from
// clients too; anything that is not plain hex never reaches the filesystem.
bool safe_key(const std::string& s)
{
    static const std::regex re("^[0-9a-f]{16,128}$");
    return std::regex_match(s, re);
}

void require_key(const std::string& s)
{
    if (!safe_key(s))
        throw Error(ErrorCode::Io, "invalid store key '" + s + "'");
}

} // namespace

std::optional<std::string> read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        return std::nullopt;
    return ss.str();
}

void atomic_write(const fs::path& path, std::string_view bytes)
{
    static std::atomic<unsigned> counter{0};
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorCode::Io, "cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out)
            throw Error(ErrorCode::Io, "short write to " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorCode::Io, "cannot move report into " + path.string());
    }
}

ReportStore::ReportStore(fs::path root)
    : root_(std::move(root))
{
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec)
        throw Error(ErrorCode::Io, "cannot create store " + root_.string() + ": " + ec.message());
}

std::string ReportStore::events_file_name(const std::string& scenarioHash)
{
    return scenarioHash + ".events.jsonl";
}

fs::path ReportStore::report_path(const std::string& digest, const std::string& scenarioHash) const
{
    require_key(digest);
    require_key(scenarioHash);
    return root_ / digest / (scenarioHash + ".report.json");
}

fs::path ReportStore::events_path(const std::string& digest, const std::string& scenarioHash) const
{
    require_key(digest);
    require_key(scenarioHash);
    return root_ / digest / events_file_name(scenarioHash);
}

std::optional<RiskReport> ReportStore::lookup(const std::string& digest, const std::string& scenarioHash) const
{
    if (!safe_key(digest) || !safe_key(scenarioHash))
        return std::nullopt;
    auto path = report_path(digest, scenarioHash);
    auto bytes = read_file(path);
    if (!bytes)
        return std::nullopt;
    try {
        auto r = deserialize_report(*bytes);
        if (r.artifact.digest != digest || r.scenarioHash != scenarioHash)
            throw Error(ErrorCode::SchemaVersionMismatch, "entry keyed under the wrong digest");
        if (r.dynamic && !load_events(digest, scenarioHash))
            throw Error(ErrorCode::SchemaVersionMismatch, "event log missing");
        r.cached = true;
        return r;
    } catch (const Error&) {
        std::error_code ec;
        fs::remove(path, ec);
        fs::remove(events_path(digest, scenarioHash), ec);
        return std::nullopt;
    }
}

std::optional<std::vector<sandbox::SandboxEvent>> ReportStore::load_events(const std::string& digest,
                                                                            const std::string& scenarioHash) const
{
    if (!safe_key(digest) || !safe_key(scenarioHash))
        return std::nullopt;
    auto bytes = read_file(events_path(digest, scenarioHash));
    if (!bytes)
        return std::nullopt;
    try {
        return sandbox::parse_events(*bytes);
    } catch (const Error&) {
        return std::nullopt;
    }
}

void ReportStore::save(const RiskReport& report, const std::vector<sandbox::SandboxEvent>& events) const
{
    auto copy = report;
    copy.cached = false;
    // Events first: a report on disk always has its log.
    atomic_write(events_path(report.artifact.digest, report.scenarioHash), sandbox::serialize_events(events));
    atomic_write(report_path(report.artifact.digest, report.scenarioHash), serialize_report(copy));
}

void ReportStore::save_artifact(const std::string& digest, std::string_view bytes, const std::string& name) const
{
    require_key(digest);
    atomic_write(root_ / digest / "artifact.bin", bytes);
    atomic_write(root_ / digest / "artifact.name", name);
}

std::optional<std::pair<std::string, std::string>> ReportStore::load_artifact(const std::string& digest) const
{
    if (!safe_key(digest))
        return std::nullopt;
    auto bytes = read_file(root_ / digest / "artifact.bin");
    if (!bytes)
        return std::nullopt;
    auto name = read_file(root_ / digest / "artifact.name").value_or("artifact");
    return std::make_pair(std::move(*bytes), std::move(name));
}

bool ReportStore::is_approved(const std::string& digest) const
{
    auto text = read_file(root_ / "approved.txt");
    if (!text)
        return false;
    for (auto& line : text::split(*text, '\n'))
        if (text::trim(line) == digest)
            return true;
    return false;
}

void ReportStore::approve(const std::string& digest) const
{
    require_key(digest);
    std::lock_guard lock(approveMu_);
    if (is_approved(digest))
        return;
    auto text = read_file(root_ / "approved.txt").value_or("");
    if (!text.empty() && text.back() != '\n')
        text += '\n';
    atomic_write(root_ / "approved.txt", text + digest + "\n");
}

} // namespace extsleuth::report
