#include "extsleuth/report/report.hpp"
#include "extsleuth/common/error.hpp"

namespace extsleuth::report {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& why)
{
    throw Error(ErrorCode::SchemaVersionMismatch, "malformed report: " + why);
}

template <typename T>
T get(const json& j, const char* key)
{
    auto it = j.find(key);
    if (it == j.end())
        malformed(std::string("missing \"") + key + "\"");
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        malformed(std::string("bad \"") + key + "\"");
    }
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key)
{
    if (!j.contains(key))
        return std::nullopt;
    return get<T>(j, key);
}

const json& obj(const json& j, const char* key)
{
    auto it = j.find(key);
    if (it == j.end() || !it->is_object())
        malformed(std::string("\"") + key + "\" is not an object");
    return *it;
}

const json& arr(const json& j, const char* key)
{
    auto it = j.find(key);
    if (it == j.end() || !it->is_array())
        malformed(std::string("\"") + key + "\" is not an array");
    return *it;
}

template <typename E, typename Parse>
E parse_enum(const json& j, const char* key, Parse parse)
{
    auto v = parse(get<std::string>(j, key));
    if (!v)
        malformed(std::string("unknown value for \"") + key + "\"");
    return *v;
}

} // namespace

ArtifactSummary summarize_artifact(const ingest::ExtensionArtifact& a)
{
    ArtifactSummary s;
    s.digest = a.digest;
    s.kind = a.kind;
    s.name = a.manifest.name;
    s.version = a.manifest.version;
    s.publisher = a.manifest.publisher;
    s.description = a.manifest.description;
    s.permissions = a.manifest.permissions;
    s.hostPatterns = a.manifest.hostPatterns;
    s.fileCount = a.files.size();
    for (auto& f : a.files)
        s.totalBytes += f.sizeBytes;
    s.privacyPolicyPath = a.privacyPolicyPath;
    return s;
}

json finding_to_json(const detect::Finding& f)
{
    json j = {
        {"id", f.id},
        {"ruleId", f.ruleId},
        {"severity", detect::to_string(f.severity)},
        {"title", f.title},
        {"detail", f.detail},
        {"evidence", f.evidence},
        {"phase", detect::to_string(f.phase)},
    };
    if (f.location)
        j["location"] = {{"path", f.location->path},
                         {"offset", f.location->span.offset},
                         {"length", f.location->span.length},
                         {"line", f.location->span.line},
                         {"column", f.location->span.column}};
    if (f.eventSeq)
        j["eventSeq"] = *f.eventSeq;
    return j;
}

detect::Finding finding_from_json(const json& j)
{
    if (!j.is_object())
        malformed("finding is not an object");
    detect::Finding f;
    f.id = get<std::string>(j, "id");
    f.ruleId = get<std::string>(j, "ruleId");
    f.severity = parse_enum<detect::Severity>(j, "severity", detect::parse_severity);
    f.title = get<std::string>(j, "title");
    f.detail = get<std::string>(j, "detail");
    f.evidence = get<std::string>(j, "evidence");
    f.phase = parse_enum<detect::Phase>(j, "phase", detect::parse_phase);
    if (j.contains("location")) {
        auto& l = obj(j, "location");
        detect::Location loc;
        loc.path = get<std::string>(l, "path");
        loc.span.offset = get<std::uint32_t>(l, "offset");
        loc.span.length = get<std::uint32_t>(l, "length");
        loc.span.line = get<std::uint32_t>(l, "line");
        loc.span.column = get<std::uint32_t>(l, "column");
        f.location = loc;
    }
    f.eventSeq = get_opt<std::uint64_t>(j, "eventSeq");
    return f;
}

json report_to_json(const RiskReport& r)
{
    json j;
    j["schema"] = r.schema;
    j["toolVersion"] = r.toolVersion;
    auto& a = r.artifact;
    j["artifact"] = {
        {"digest", a.digest},         {"kind", ingest::to_string(a.kind)}, {"name", a.name},
        {"version", a.version},       {"publisher", a.publisher},          {"description", a.description},
        {"permissions", a.permissions}, {"hostPatterns", a.hostPatterns},  {"fileCount", a.fileCount},
        {"totalBytes", a.totalBytes},
    };
    if (a.privacyPolicyPath)
        j["artifact"]["privacyPolicyPath"] = *a.privacyPolicyPath;
    j["scenarioHash"] = r.scenarioHash;
    j["scenario"] = r.scenario.is_null() ? json::object() : r.scenario;
    j["verdict"] = {{"level", to_string(r.verdict.level)}, {"score", r.verdict.score}, {"reasons", r.verdict.reasons}};
    if (r.verdict.approved)
        j["verdict"]["approved"] = true;
    j["findings"] = json::array();
    for (auto& f : r.findings)
        j["findings"].push_back(finding_to_json(f));
    j["contradictions"] = json::array();
    for (auto& f : r.contradictions)
        j["contradictions"].push_back(finding_to_json(f));
    if (r.dynamic) {
        auto& d = *r.dynamic;
        j["dynamic"] = {
            {"outcome", sandbox::to_string(d.outcome.status)},
            {"outcomeDetail", d.outcome.detail},
            {"eventCount", d.eventCount},
            {"finalVirtualTimeMs", d.finalVirtualTimeMs},
            {"tasksFired", d.tasksFired},
            {"filesWritten", d.filesWritten},
            {"eventLogRef", d.eventLogRef},
            {"eventLogDigest", d.eventLogDigest},
        };
    }
    if (r.llm) {
        j["llm"] = {{"model", r.llm->model}, {"narrative", r.llm->narrative}};
        if (r.llm->riskLevel)
            j["llm"]["riskLevel"] = to_string(*r.llm->riskLevel);
    }
    if (r.llmError)
        j["llmError"] = *r.llmError;
    if (r.timings)
        j["timings"] = {{"staticMs", r.timings->staticMs},
                        {"dynamicMs", r.timings->dynamicMs},
                        {"llmMs", r.timings->llmMs},
                        {"totalMs", r.timings->totalMs}};
    if (r.cached)
        j["cached"] = true;
    return j;
}

RiskReport report_from_json(const json& j)
{
    if (!j.is_object())
        malformed("not an object");
    auto schema = get<int>(j, "schema");
    if (schema != kReportSchema)
        throw Error(ErrorCode::SchemaVersionMismatch,
                    "report schema " + std::to_string(schema) + " is not supported (expected " + std::to_string(kReportSchema) + ")");
    RiskReport r;
    r.schema = schema;
    r.toolVersion = get<std::string>(j, "toolVersion");
    auto& a = obj(j, "artifact");
    r.artifact.digest = get<std::string>(a, "digest");
    r.artifact.kind = parse_enum<ingest::ArtifactKind>(a, "kind", ingest::parse_kind);
    r.artifact.name = get<std::string>(a, "name");
    r.artifact.version = get<std::string>(a, "version");
    r.artifact.publisher = get<std::string>(a, "publisher");
    r.artifact.description = get<std::string>(a, "description");
    r.artifact.permissions = get<std::vector<std::string>>(a, "permissions");
    r.artifact.hostPatterns = get<std::vector<std::string>>(a, "hostPatterns");
    r.artifact.fileCount = get<std::size_t>(a, "fileCount");
    r.artifact.totalBytes = get<std::size_t>(a, "totalBytes");
    r.artifact.privacyPolicyPath = get_opt<std::string>(a, "privacyPolicyPath");
    r.scenarioHash = get<std::string>(j, "scenarioHash");
    r.scenario = obj(j, "scenario");
    auto& v = obj(j, "verdict");
    r.verdict.level = parse_enum<RiskLevel>(v, "level", parse_risk_level);
    r.verdict.score = get<int>(v, "score");
    r.verdict.reasons = get<std::vector<std::string>>(v, "reasons");
    r.verdict.approved = get_opt<bool>(v, "approved").value_or(false);
    for (auto& f : arr(j, "findings"))
        r.findings.push_back(finding_from_json(f));
    for (auto& f : arr(j, "contradictions"))
        r.contradictions.push_back(finding_from_json(f));
    if (j.contains("dynamic")) {
        auto& d = obj(j, "dynamic");
        DynamicSummary s;
        s.outcome.status = parse_enum<sandbox::RunStatus>(d, "outcome", sandbox::parse_run_status);
        s.outcome.detail = get<std::string>(d, "outcomeDetail");
        s.eventCount = get<std::size_t>(d, "eventCount");
        s.finalVirtualTimeMs = get<std::int64_t>(d, "finalVirtualTimeMs");
        s.tasksFired = get<std::size_t>(d, "tasksFired");
        s.filesWritten = get<std::vector<std::string>>(d, "filesWritten");
        s.eventLogRef = get<std::string>(d, "eventLogRef");
        s.eventLogDigest = get<std::string>(d, "eventLogDigest");
        r.dynamic = s;
    }
    if (j.contains("llm")) {
        auto& l = obj(j, "llm");
        LlmResult res;
        res.model = get<std::string>(l, "model");
        res.narrative = get<std::string>(l, "narrative");
        if (l.contains("riskLevel"))
            res.riskLevel = parse_enum<RiskLevel>(l, "riskLevel", parse_risk_level);
        r.llm = res;
    }
    r.llmError = get_opt<std::string>(j, "llmError");
    if (j.contains("timings")) {
        auto& t = obj(j, "timings");
        r.timings = Timings{get<std::int64_t>(t, "staticMs"), get<std::int64_t>(t, "dynamicMs"), get<std::int64_t>(t, "llmMs"),
                            get<std::int64_t>(t, "totalMs")};
    }
    r.cached = get_opt<bool>(j, "cached").value_or(false);
    return r;
}

std::string serialize_report(const RiskReport& r)
{
    return report_to_json(r).dump(2) + "\n";
}

RiskReport deserialize_report(std::string_view bytes)
{
    auto j = json::parse(bytes, nullptr, false);
    if (j.is_discarded())
        malformed("not valid JSON");
    return report_from_json(j);
}

} // namespace extsleuth::report
