#pragma once

#include "extsleuth/ingest/manifest.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace testgen {

using FileList = std::vector<std::pair<std::string, std::string>>;

/// In-memory artifact built the same way ingest does it, minus the archive.
inline extsleuth::ingest::ExtensionArtifact make_artifact(extsleuth::ingest::ArtifactKind kind, const FileList& files)
{
    using namespace extsleuth::ingest;
    ExtensionArtifact a;
    a.kind = kind;
    for (auto& [p, b] : files)
        a.files.push_back(make_file_entry(p, b));
    std::sort(a.files.begin(), a.files.end(), [](auto& x, auto& y) { return x.path < y.path; });
    a.manifest = parse_manifest(a.files, kind);
    auto md = extract_metadata(a.files, a.manifest);
    a.privacyPolicyText = md.privacyPolicyText;
    a.privacyPolicyPath = md.privacyPolicyPath;
    a.digest = compute_digest(a.files);
    return a;
}

inline std::string chrome_manifest(const std::string& background = "bg.js", const std::string& extra = "")
{
    return R"({"manifest_version":3,"name":"T","version":"1.0","background":{"service_worker":")" + background +
           "\"}" + extra + "}";
}

inline std::string npm_manifest(const std::string& main = "index.js", const std::string& extra = "")
{
    return R"({"name":"t","version":"1.0.0","main":")" + main + "\"" + extra + "}";
}

inline std::string vscode_manifest(const std::string& main = "./extension.js", const std::string& extra = "")
{
    return R"({"name":"t","publisher":"p","version":"1.0.0","engines":{"vscode":"^1.80.0"},"main":")" + main + "\"" +
           extra + "}";
}

} // namespace testgen
