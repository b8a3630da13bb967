#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace extsleuth::ingest {

enum class ArtifactKind {
    ChromeExtension,
    VscodeExtension,
    NpmPackage,
};

std::string_view to_string(ArtifactKind kind);
std::optional<ArtifactKind> parse_kind(std::string_view text);

struct FileEntry {
    std::string path; // relative, normalized, '/'-separated
    std::string bytes;
    bool isCode = false;
    std::size_t sizeBytes = 0;

    bool operator==(const FileEntry&) const = default;
};

FileEntry make_file_entry(std::string path, std::string bytes);

/// True for .js/.mjs/.cjs/.ts sources.
bool is_code_path(std::string_view path);

struct ContentScript {
    std::vector<std::string> matches;
    std::vector<std::string> scripts;

    bool operator==(const ContentScript&) const = default;
};

struct ManifestInfo {
    std::string name;
    std::string version;
    std::string publisher;
    std::string description;
    std::vector<std::string> permissions;
    std::vector<std::string> hostPatterns;
    std::vector<ContentScript> contentScripts;
    std::vector<std::string> backgroundScripts;
    bool backgroundIsModule = false;
    std::vector<std::string> activationEvents;
    std::vector<std::string> contributedCommands;
    /// preinstall/install/postinstall in execution order
    std::vector<std::pair<std::string, std::string>> lifecycleScripts;
    std::string mainEntry;
    /// Directory holding the manifest ("" or "extension/" for VSIX).
    std::string root;
    /// Paths referenced by the manifest that do not resolve to a file.
    std::vector<std::string> missingReferences;
    /// declarativeNetRequest static rule files.
    std::vector<std::string> ruleResources;

    bool operator==(const ManifestInfo&) const = default;
};

struct ExtensionArtifact {
    ArtifactKind kind = ArtifactKind::ChromeExtension;
    std::vector<FileEntry> files; // sorted by path
    ManifestInfo manifest;
    std::optional<std::string> privacyPolicyText;
    std::optional<std::string> privacyPolicyPath;
    std::string digest;

    const FileEntry* find(std::string_view path) const;
};

/// SHA-256 over (path, size, bytes) triples in sorted path order.
std::string compute_digest(const std::vector<FileEntry>& sortedFiles);

} // namespace extsleuth::ingest
