#include "extsleuth/detect/signatures.hpp"
#include "extsleuth/common/error.hpp"
#include "extsleuth/common/hash.hpp"
#include "extsleuth/common/text.hpp"

#include <boost/regex.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace extsleuth::detect {

extern const std::string_view kDefaultSignatureJson;

struct CompiledPattern {
    boost::regex re;
};

namespace {

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& why)
{
    throw Error(ErrorCode::MalformedSignatureDb, std::string(source) + ":" + std::to_string(line) + ": " + why);
}

std::size_t line_of(std::string_view text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

/// Byte offsets where each top-level element of the "entries" array starts.
/// Used only to point diagnostics at a line.
std::vector<std::size_t> entry_offsets(std::string_view json)
{
    std::vector<std::size_t> out;
    auto key = json.find("\"entries\"");
    if (key == std::string_view::npos)
        return out;
    auto open = json.find('[', key);
    if (open == std::string_view::npos)
        return out;
    int depth = 0;
    bool inString = false;
    for (std::size_t i = open + 1; i < json.size(); ++i) {
        char c = json[i];
        if (inString) {
            if (c == '\\')
                ++i;
            else if (c == '"')
                inString = false;
            continue;
        }
        if (c == '"') {
            if (depth == 0)
                out.push_back(i);
            inString = true;
        } else if (c == '{' || c == '[') {
            if (depth == 0)
                out.push_back(i);
            ++depth;
        } else if (c == '}' || c == ']') {
            if (depth == 0)
                break;
            --depth;
        } else if (depth == 0 && c != ',' && !std::isspace(static_cast<unsigned char>(c))) {
            out.push_back(i);
            while (i + 1 < json.size() && json[i + 1] != ',' && json[i + 1] != ']')
                ++i;
        }
    }
    return out;
}

std::vector<std::string> string_list(const nlohmann::json& j, const char* key, std::string_view source, std::size_t line)
{
    std::vector<std::string> out;
    if (!j.contains(key))
        return out;
    const auto& v = j.at(key);
    if (!v.is_array())
        fail(source, line, std::string("\"") + key + "\" must be an array of strings");
    for (auto& s : v) {
        if (!s.is_string())
            fail(source, line, std::string("\"") + key + "\" must be an array of strings");
        out.push_back(s.get<std::string>());
    }
    return out;
}

std::string required_string(const nlohmann::json& j, const char* key, std::string_view source, std::size_t line)
{
    if (!j.contains(key) || !j.at(key).is_string())
        fail(source, line, std::string("missing string field \"") + key + "\"");
    return j.at(key).get<std::string>();
}

std::vector<long long> version_parts(std::string_view v)
{
    std::vector<long long> parts;
    std::size_t i = 0;
    while (i < v.size() && !std::isdigit(static_cast<unsigned char>(v[i])))
        ++i;
    while (i < v.size()) {
        if (!std::isdigit(static_cast<unsigned char>(v[i])))
            break;
        long long n = 0;
        while (i < v.size() && std::isdigit(static_cast<unsigned char>(v[i]))) {
            n = std::min<long long>(n * 10 + (v[i] - '0'), 1'000'000'000'000LL);
            ++i;
        }
        parts.push_back(n);
        if (i + 1 < v.size() && v[i] == '.' && std::isdigit(static_cast<unsigned char>(v[i + 1])))
            ++i;
        else
            break;
    }
    return parts;
}

} // namespace

int compare_versions(std::string_view a, std::string_view b)
{
    auto pa = version_parts(a);
    auto pb = version_parts(b);
    auto n = std::max(pa.size(), pb.size());
    pa.resize(n, 0);
    pb.resize(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (pa[i] != pb[i])
            return pa[i] < pb[i] ? -1 : 1;
    return 0;
}

SignatureDb parse_signature_db(std::string_view json, std::string_view sourceName)
{
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
        fail(sourceName, line_of(json, e.byte == 0 ? 0 : e.byte - 1), e.what());
    }
    if (!root.is_object() || !root.contains("entries") || !root.at("entries").is_array())
        fail(sourceName, 1, "top level must be an object with an \"entries\" array");
    auto offsets = entry_offsets(json);
    SignatureDb db;
    std::size_t idx = 0;
    for (auto& e : root.at("entries")) {
        std::size_t line = idx < offsets.size() ? line_of(json, offsets[idx]) : 1;
        ++idx;
        if (!e.is_object())
            fail(sourceName, line, "entry must be an object");
        SignatureEntry entry;
        entry.library = required_string(e, "library", sourceName, line);
        entry.versionRegex = required_string(e, "versionRegex", sourceName, line);
        entry.vulnerableBelow = required_string(e, "vulnerableBelow", sourceName, line);
        entry.advisories = string_list(e, "advisories", sourceName, line);
        for (auto& h : string_list(e, "hashes", sourceName, line)) {
            auto lower = text::to_lower(h);
            if (lower.size() != 64 || lower.find_first_not_of("0123456789abcdef") != std::string::npos)
                fail(sourceName, line, "hash is not SHA-256 hex: " + h);
            entry.hashes.push_back(lower);
        }
        if (version_parts(entry.vulnerableBelow).empty())
            fail(sourceName, line, "vulnerableBelow is not a dotted version: " + entry.vulnerableBelow);
        auto compiled = std::make_shared<CompiledPattern>();
        try {
            compiled->re.assign(entry.versionRegex, boost::regex::perl);
        } catch (const boost::regex_error& err) {
            fail(sourceName, line, "versionRegex does not compile: " + std::string(err.what()));
        }
        if (compiled->re.mark_count() != 1)
            fail(sourceName, line, "versionRegex must have exactly one capture group");
        entry.pattern = std::move(compiled);
        db.entries.push_back(std::move(entry));
    }
    return db;
}

SignatureDb load_signature_db(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::MalformedSignatureDb, path.string() + ": cannot be read");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_signature_db(ss.str(), path.string());
}

const SignatureDb& default_signature_db()
{
    static const SignatureDb db = parse_signature_db(kDefaultSignatureJson, "signatures.json");
    return db;
}

std::vector<Finding> scan_vulnerable_libraries(const ingest::ExtensionArtifact& artifact,
                                               const code::CodeModel& model, const SignatureDb& db)
{
    (void)artifact;
    std::vector<Finding> out;
    for (auto& unit : model.units) {
        struct Hit {
            std::string version;
            std::set<std::string> advisories;
            code::Span span;
            bool byHash = false;
            bool any = false;
        };
        std::map<std::string, Hit> hits; // library -> merged hit
        std::string digest;
        for (auto& entry : db.entries) {
            auto& hit = hits[entry.library];
            if (!entry.hashes.empty()) {
                if (digest.empty())
                    digest = sha256_hex(unit.text);
                if (std::find(entry.hashes.begin(), entry.hashes.end(), digest) != entry.hashes.end()) {
                    hit.any = true;
                    hit.byHash = true;
                    hit.advisories.insert(entry.advisories.begin(), entry.advisories.end());
                    continue;
                }
            }
            boost::match_results<std::string::const_iterator> m;
            bool found = false;
            try {
                found = boost::regex_search(unit.text.begin(), unit.text.end(), m, entry.pattern->re);
            } catch (const std::runtime_error&) {
                found = false; // pathological pattern on this input
            }
            if (!found || !m[1].matched)
                continue;
            std::string version = m[1].str();
            if (compare_versions(version, entry.vulnerableBelow) >= 0)
                continue;
            if (!hit.any || hit.byHash) {
                hit.version = version;
                hit.span = span_at(unit.text, static_cast<std::size_t>(m.position(std::size_t{0})),
                                   static_cast<std::size_t>(m.length(0)));
            }
            hit.any = true;
            hit.advisories.insert(entry.advisories.begin(), entry.advisories.end());
        }
        for (auto& [library, hit] : hits) {
            if (!hit.any)
                continue;
            std::string label = hit.version.empty() ? library : library + " " + hit.version;
            std::string adv;
            for (auto& a : hit.advisories)
                adv += (adv.empty() ? "" : ", ") + a;
            auto severity = hit.advisories.empty() ? Severity::Info : Severity::Medium;
            std::string detail = hit.advisories.empty()
                ? "Bundled " + label + " is older than a flagged release."
                : "Bundled " + label + " is affected by " + adv + ".";
            code::Span span = hit.version.empty() ? span_at(unit.text, 0, 0) : hit.span;
            out.push_back(make_located_finding("vulnerable-library", severity, "vulnerable library " + label,
                                               detail, unit.path, unit.text, span));
        }
    }
    return out;
}

} // namespace extsleuth::detect
