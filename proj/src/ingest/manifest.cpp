#include "extsleuth/ingest/manifest.hpp"

#include "extsleuth/common/error.hpp"
#include "extsleuth/common/hash.hpp"
#include "extsleuth/common/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

namespace extsleuth::ingest {

using nlohmann::json;

namespace {

const FileEntry* find_file(const std::vector<FileEntry>& files, std::string_view path)
{
    auto it = std::lower_bound(files.begin(), files.end(), path,
                               [](const FileEntry& f, std::string_view p) { return f.path < p; });
    if (it != files.end() && it->path == path)
        return &*it;
    return nullptr;
}

json parse_json_file(const FileEntry& f)
{
    std::string_view body = f.bytes;
    if (text::starts_with(body, "\xEF\xBB\xBF"))
        body.remove_prefix(3);
    json j = json::parse(body, nullptr, false, /*ignore_comments=*/true);
    if (j.is_discarded())
        throw Error(ErrorCode::MalformedManifest, f.path + " is not valid JSON");
    if (!j.is_object())
        throw Error(ErrorCode::MalformedManifest, f.path + " root is not an object");
    return j;
}

std::string str_field(const json& j, const char* key)
{
    auto it = j.find(key);
    if (it != j.end() && it->is_string())
        return it->get<std::string>();
    return {};
}

std::vector<std::string> str_list(const json& j, const char* key)
{
    std::vector<std::string> out;
    auto it = j.find(key);
    if (it == j.end() || !it->is_array())
        return out;
    for (auto& v : *it)
        if (v.is_string())
            out.push_back(v.get<std::string>());
    return out;
}

// Resolves a manifest-relative reference to an artifact path.
std::string resolve_ref(const std::string& root, std::string_view ref)
{
    auto norm = normalize_entry_path(root + std::string(ref));
    return norm ? *norm : std::string(ref);
}

std::string resolve_chrome_message(const std::vector<FileEntry>& files, const json& manifest, const std::string& value)
{
    if (!text::starts_with(value, "__MSG_") || !text::ends_with(value, "__"))
        return value;
    auto key = text::to_lower(value.substr(6, value.size() - 8));
    auto locale = str_field(manifest, "default_locale");
    for (auto& loc : {locale, std::string("en"), std::string("en_US")}) {
        if (loc.empty())
            continue;
        auto* f = find_file(files, "_locales/" + loc + "/messages.json");
        if (!f)
            continue;
        auto j = json::parse(f->bytes, nullptr, false);
        if (!j.is_object())
            continue;
        for (auto& [k, v] : j.items())
            if (text::to_lower(k) == key && v.is_object() && v.contains("message") && v["message"].is_string())
                return v["message"].get<std::string>();
    }
    return value;
}

std::string author_name(const json& j)
{
    auto it = j.find("author");
    if (it == j.end())
        return {};
    if (it->is_string())
        return it->get<std::string>();
    if (it->is_object())
        return str_field(*it, "name");
    return {};
}

std::vector<std::string> html_script_sources(std::string_view html)
{
    static const std::regex re(R"(<script[^>]*\bsrc\s*=\s*["']([^"']+)["'])", std::regex::icase);
    std::vector<std::string> out;
    std::string s(html);
    for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator(); ++it)
        out.push_back((*it)[1].str());
    return out;
}

bool looks_like_match_pattern(std::string_view p)
{
    return p == "<all_urls>" || p.find("://") != std::string_view::npos;
}

ManifestInfo parse_chrome(const std::vector<FileEntry>& files)
{
    auto* mf = find_file(files, "manifest.json");
    if (!mf)
        throw Error(ErrorCode::MissingManifest, "manifest.json not found");
    auto j = parse_json_file(*mf);
    ManifestInfo m;
    m.name = resolve_chrome_message(files, j, str_field(j, "name"));
    m.version = str_field(j, "version");
    m.description = resolve_chrome_message(files, j, str_field(j, "description"));
    m.publisher = author_name(j);
    m.permissions = str_list(j, "permissions");
    for (auto& p : str_list(j, "host_permissions"))
        m.hostPatterns.push_back(p);
    for (auto& p : m.permissions)
        if (looks_like_match_pattern(p))
            m.hostPatterns.push_back(p);

    if (auto cs = j.find("content_scripts"); cs != j.end() && cs->is_array()) {
        for (auto& entry : *cs) {
            if (!entry.is_object())
                continue;
            ContentScript c;
            c.matches = str_list(entry, "matches");
            for (auto& s : str_list(entry, "js"))
                c.scripts.push_back(resolve_ref("", s));
            m.contentScripts.push_back(std::move(c));
        }
    }
    if (auto bg = j.find("background"); bg != j.end() && bg->is_object()) {
        auto sw = str_field(*bg, "service_worker");
        if (!sw.empty())
            m.backgroundScripts.push_back(resolve_ref("", sw));
        for (auto& s : str_list(*bg, "scripts"))
            m.backgroundScripts.push_back(resolve_ref("", s));
        auto page = str_field(*bg, "page");
        if (!page.empty()) {
            auto pagePath = resolve_ref("", page);
            if (auto* pf = find_file(files, pagePath)) {
                auto dir = pagePath.substr(0, pagePath.rfind('/') == std::string::npos ? 0 : pagePath.rfind('/') + 1);
                for (auto& src : html_script_sources(pf->bytes))
                    m.backgroundScripts.push_back(resolve_ref(dir, src));
            } else {
                m.missingReferences.push_back(pagePath);
            }
        }
        m.backgroundIsModule = str_field(*bg, "type") == "module";
    }
    if (auto dnr = j.find("declarative_net_request"); dnr != j.end() && dnr->is_object()) {
        if (auto rr = dnr->find("rule_resources"); rr != dnr->end() && rr->is_array())
            for (auto& r : *rr)
                if (r.is_object() && r.contains("path") && r["path"].is_string())
                    m.ruleResources.push_back(resolve_ref("", r["path"].get<std::string>()));
    }
    if (!m.backgroundScripts.empty())
        m.mainEntry = m.backgroundScripts.front();
    return m;
}

std::string resolve_main(const std::vector<FileEntry>& files, const std::string& root, const std::string& main,
                         bool defaultIndex)
{
    std::vector<std::string> candidates;
    if (!main.empty()) {
        auto base = resolve_ref(root, main);
        candidates = {base, base + ".js", base + "/index.js"};
    } else if (defaultIndex) {
        candidates = {resolve_ref(root, "index.js")};
    }
    for (auto& c : candidates)
        if (find_file(files, c))
            return c;
    // an explicit but unresolvable main is reported as a missing reference
    return main.empty() ? std::string() : candidates.front();
}

ManifestInfo parse_package_json(const std::vector<FileEntry>& files, ArtifactKind kind)
{
    std::string root;
    const FileEntry* pf = nullptr;
    if (kind == ArtifactKind::VscodeExtension && (pf = find_file(files, "extension/package.json")))
        root = "extension/";
    else
        pf = find_file(files, "package.json");
    if (!pf)
        throw Error(ErrorCode::MissingManifest, "package.json not found");
    auto j = parse_json_file(*pf);

    ManifestInfo m;
    m.root = root;
    m.name = str_field(j, "name");
    m.version = str_field(j, "version");
    m.description = str_field(j, "description");
    m.publisher = kind == ArtifactKind::VscodeExtension ? str_field(j, "publisher") : author_name(j);
    if (kind == ArtifactKind::VscodeExtension && m.publisher.empty())
        m.publisher = author_name(j);

    auto main = str_field(j, "main");
    if (kind == ArtifactKind::VscodeExtension) {
        m.activationEvents = str_list(j, "activationEvents");
        if (auto c = j.find("contributes"); c != j.end() && c->is_object()) {
            if (auto cmds = c->find("commands"); cmds != c->end() && cmds->is_array())
                for (auto& cmd : *cmds)
                    if (cmd.is_object())
                        if (auto id = str_field(cmd, "command"); !id.empty())
                            m.contributedCommands.push_back(id);
        }
        m.mainEntry = resolve_main(files, root, main, false);
    } else {
        if (auto s = j.find("scripts"); s != j.end() && s->is_object()) {
            for (const char* phase : {"preinstall", "install", "postinstall"}) {
                auto cmd = str_field(*s, phase);
                if (!cmd.empty())
                    m.lifecycleScripts.emplace_back(phase, cmd);
            }
        }
        m.mainEntry = resolve_main(files, root, main, true);
    }
    return m;
}

} // namespace

std::string_view to_string(ArtifactKind kind)
{
    switch (kind) {
    case ArtifactKind::ChromeExtension: return "chrome-extension";
    case ArtifactKind::VscodeExtension: return "vscode-extension";
    case ArtifactKind::NpmPackage: return "npm-package";
    }
    return "unknown";
}

std::optional<ArtifactKind> parse_kind(std::string_view t)
{
    if (t == "chrome-extension" || t == "crx" || t == "chrome")
        return ArtifactKind::ChromeExtension;
    if (t == "vscode-extension" || t == "vsix" || t == "vscode")
        return ArtifactKind::VscodeExtension;
    if (t == "npm-package" || t == "npm")
        return ArtifactKind::NpmPackage;
    return std::nullopt;
}

bool is_code_path(std::string_view path)
{
    auto lower = text::to_lower(path);
    for (auto ext : {".js", ".mjs", ".cjs", ".ts"})
        if (text::ends_with(lower, ext))
            return !text::ends_with(lower, ".d.ts");
    return false;
}

FileEntry make_file_entry(std::string path, std::string bytes)
{
    FileEntry f;
    f.isCode = is_code_path(path);
    f.sizeBytes = bytes.size();
    f.path = std::move(path);
    f.bytes = std::move(bytes);
    return f;
}

const FileEntry* ExtensionArtifact::find(std::string_view path) const
{
    return find_file(files, path);
}

std::string compute_digest(const std::vector<FileEntry>& files)
{
    Sha256 h;
    for (auto& f : files) {
        h.update(f.path);
        h.update(std::string_view("\0", 1));
        h.update(std::to_string(f.bytes.size()));
        h.update(std::string_view("\0", 1));
        h.update(f.bytes);
    }
    return h.finish_hex();
}

ManifestInfo parse_manifest(const std::vector<FileEntry>& files, ArtifactKind kind)
{
    ManifestInfo m = kind == ArtifactKind::ChromeExtension ? parse_chrome(files) : parse_package_json(files, kind);

    auto check = [&](const std::string& p) {
        if (!p.empty() && !find_file(files, p) &&
            std::find(m.missingReferences.begin(), m.missingReferences.end(), p) == m.missingReferences.end())
            m.missingReferences.push_back(p);
    };
    for (auto& s : m.backgroundScripts)
        check(s);
    for (auto& cs : m.contentScripts)
        for (auto& s : cs.scripts)
            check(s);
    for (auto& r : m.ruleResources)
        check(r);
    check(m.mainEntry);
    for (auto& [phase, cmd] : m.lifecycleScripts) {
        // "node <file>" references a file inside the package
        auto parts = text::split(text::trim(cmd), ' ');
        if (parts.size() == 2 && parts[0] == "node")
            check(resolve_ref(m.root, parts[1]));
    }
    return m;
}

std::string strip_html(std::string_view html)
{
    std::string noTags;
    bool inTag = false;
    for (char c : html) {
        if (c == '<') {
            inTag = true;
            noTags.push_back(' ');
        } else if (c == '>' && inTag) {
            inTag = false;
        } else if (!inTag) {
            noTags.push_back(c);
        }
    }
    static const std::pair<const char*, const char*> entities[] = {
        {"&nbsp;", " "}, {"&lt;", "<"}, {"&gt;", ">"}, {"&quot;", "\""}, {"&#39;", "'"}, {"&apos;", "'"}, {"&amp;", "&"},
    };
    for (auto& [from, to] : entities) {
        std::string::size_type pos = 0;
        std::string f = from;
        while ((pos = noTags.find(f, pos)) != std::string::npos) {
            noTags.replace(pos, f.size(), to);
            pos += std::string_view(to).size();
        }
    }
    return text::collapse_whitespace(noTags);
}

PackageMetadata extract_metadata(const std::vector<FileEntry>& files, const ManifestInfo& manifest)
{
    PackageMetadata md;
    md.description = manifest.description;
    for (const char* candidate : {"privacy.md", "privacy.txt", "privacy_policy.html"}) {
        for (auto& f : files) {
            if (!text::starts_with(f.path, manifest.root))
                continue;
            auto rest = std::string_view(f.path).substr(manifest.root.size());
            if (rest.find('/') != std::string_view::npos || !text::iequals(rest, candidate))
                continue;
            md.privacyPolicyPath = f.path;
            md.privacyPolicyText = text::ends_with(candidate, ".html") ? strip_html(f.bytes) : f.bytes;
            return md;
        }
    }
    return md;
}

ArtifactKind detect_directory_kind(const std::vector<FileEntry>& files)
{
    if (find_file(files, "manifest.json"))
        return ArtifactKind::ChromeExtension;
    if (find_file(files, "extension/package.json") || find_file(files, "extension.vsixmanifest"))
        return ArtifactKind::VscodeExtension;
    if (auto* pj = find_file(files, "package.json")) {
        auto j = json::parse(pj->bytes, nullptr, false);
        if (j.is_object() && j.contains("engines") && j["engines"].is_object() && j["engines"].contains("vscode"))
            return ArtifactKind::VscodeExtension;
        return ArtifactKind::NpmPackage;
    }
    throw Error(ErrorCode::UnknownArtifactKind, "directory has no manifest.json or package.json");
}

namespace {

IngestResult finish_ingest(std::vector<FileEntry> files, ArtifactKind kind, std::vector<UnpackDiagnostic> diags)
{
    IngestResult r;
    r.diagnostics = std::move(diags);
    auto& a = r.artifact;
    a.kind = kind;
    a.files = std::move(files);
    std::sort(a.files.begin(), a.files.end(), [](auto& x, auto& y) { return x.path < y.path; });
    a.digest = compute_digest(a.files);
    a.manifest = parse_manifest(a.files, kind);
    auto md = extract_metadata(a.files, a.manifest);
    a.privacyPolicyText = std::move(md.privacyPolicyText);
    a.privacyPolicyPath = std::move(md.privacyPolicyPath);
    return r;
}

} // namespace

IngestResult ingest_bytes(std::string_view bytes, std::string_view hintName, std::optional<ArtifactKind> kind)
{
    auto k = kind ? *kind : detect_artifact_kind(bytes, hintName);
    auto unpacked = unpack_artifact(bytes, k);
    return finish_ingest(std::move(unpacked.files), k, std::move(unpacked.diagnostics));
}

std::vector<FileEntry> read_directory(const std::filesystem::path& dir)
{
    namespace fs = std::filesystem;
    std::vector<FileEntry> files;
    for (auto it = fs::recursive_directory_iterator(dir, fs::directory_options::none);
         it != fs::recursive_directory_iterator(); ++it) {
        if (it->is_symlink() || !it->is_regular_file())
            continue;
        auto rel = fs::relative(it->path(), dir).generic_string();
        auto norm = normalize_entry_path(rel);
        if (!norm)
            continue;
        std::ifstream in(it->path(), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        files.push_back(make_file_entry(*norm, ss.str()));
    }
    std::sort(files.begin(), files.end(), [](auto& x, auto& y) { return x.path < y.path; });
    return files;
}

IngestResult ingest_directory(const std::filesystem::path& dir, std::optional<ArtifactKind> kind)
{
    auto files = read_directory(dir);
    auto k = kind ? *kind : detect_directory_kind(files);
    return finish_ingest(std::move(files), k, {});
}

std::string pack_artifact(const std::vector<FileEntry>& files, ArtifactKind kind)
{
    if (kind == ArtifactKind::NpmPackage) {
        std::vector<RawEntry> entries;
        for (auto& f : files)
            entries.push_back({"package/" + f.path, f.bytes});
        return gzip_compress(write_tar(entries));
    }
    std::vector<ZipWriteEntry> entries;
    for (auto& f : files)
        entries.push_back({f.path, f.bytes, true});
    auto zip = write_zip(entries);
    return kind == ArtifactKind::ChromeExtension ? write_crx3(zip) : zip;
}

} // namespace extsleuth::ingest
