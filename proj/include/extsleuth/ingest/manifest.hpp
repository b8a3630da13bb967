#pragma once

#include "extsleuth/ingest/archive.hpp"
#include "extsleuth/ingest/artifact.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace extsleuth::ingest {

/// Reads the manifest schema that belongs to `kind` and nothing else:
/// manifest.json for chrome, (extension/)package.json for VSIX and npm.
/// Throws Error(MissingManifest) or Error(MalformedManifest).
ManifestInfo parse_manifest(const std::vector<FileEntry>& files, ArtifactKind kind);

struct PackageMetadata {
    std::string description;
    std::optional<std::string> privacyPolicyText;
    std::optional<std::string> privacyPolicyPath;
};

/// Policy discovery looks only inside the package, for PRIVACY.md,
/// privacy.txt or privacy_policy.html (case-insensitive) next to the manifest.
PackageMetadata extract_metadata(const std::vector<FileEntry>& files, const ManifestInfo& manifest);

/// Removes every <...> run, decodes the common entities, collapses whitespace.
std::string strip_html(std::string_view html);

struct IngestResult {
    ExtensionArtifact artifact;
    std::vector<UnpackDiagnostic> diagnostics;
};

/// detect (unless `kind` is given) + unpack + parse_manifest + extract_metadata.
IngestResult ingest_bytes(std::string_view bytes, std::string_view hintName,
                          std::optional<ArtifactKind> kind = std::nullopt);

/// Same as ingest_bytes for an already unpacked directory tree.
IngestResult ingest_directory(const std::filesystem::path& dir, std::optional<ArtifactKind> kind = std::nullopt);

/// Directory-kind heuristic: manifest.json -> chrome, extension/package.json or
/// a package.json with engines.vscode -> vscode, package.json -> npm.
ArtifactKind detect_directory_kind(const std::vector<FileEntry>& files);

/// Builds the archive format native to `kind` from a file list.
std::string pack_artifact(const std::vector<FileEntry>& files, ArtifactKind kind);

std::vector<FileEntry> read_directory(const std::filesystem::path& dir);

} // namespace extsleuth::ingest
