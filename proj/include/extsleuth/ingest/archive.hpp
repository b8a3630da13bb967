#pragma once

#include "extsleuth/ingest/artifact.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace extsleuth::ingest {

/// Per-entry problem found while unpacking. The entry is skipped, the rest
/// of the archive is still extracted.
struct UnpackDiagnostic {
    std::string entry;
    std::string reason; // "UnsafePath", "UnsupportedCompression", "CrcMismatch", ...
};

struct UnpackResult {
    std::vector<FileEntry> files; // sorted by path
    std::vector<UnpackDiagnostic> diagnostics;
};

struct UnpackLimits {
    std::size_t maxEntryBytes = 64u << 20;
    std::size_t maxTotalBytes = 256u << 20;
    std::size_t maxEntries = 20000;
};

/// Normalizes an archive member name: backslashes become '/', "." and empty
/// segments disappear, leading slashes are stripped. Returns nullopt for
/// names with ".." segments, drive prefixes or NUL bytes.
std::optional<std::string> normalize_entry_path(std::string_view raw);

struct RawEntry {
    std::string name;
    std::string bytes;
};

// Low-level container readers. They throw Error(CorruptArchive) only when the
// container itself is unreadable.
std::vector<RawEntry> read_zip(std::string_view bytes, std::vector<UnpackDiagnostic>& diags,
                               const UnpackLimits& limits = {});
std::vector<RawEntry> read_tar(std::string_view bytes, std::vector<UnpackDiagnostic>& diags,
                               const UnpackLimits& limits = {});
std::string gunzip(std::string_view bytes, std::size_t maxBytes);
/// Returns the ZIP payload of a CRX2/CRX3 file (signatures are not checked).
std::string_view crx_payload(std::string_view bytes);

bool has_crx_magic(std::string_view bytes);
bool has_zip_magic(std::string_view bytes);
bool has_gzip_magic(std::string_view bytes);

ArtifactKind detect_artifact_kind(std::string_view bytes, std::string_view hintName);

UnpackResult unpack_artifact(std::string_view bytes, ArtifactKind kind, const UnpackLimits& limits = {});

// Writers, used for fixtures and the `pack` subcommand.
struct ZipWriteEntry {
    std::string name;
    std::string bytes;
    bool deflate = true;
};
std::string write_zip(const std::vector<ZipWriteEntry>& entries);
std::string write_tar(const std::vector<RawEntry>& entries);
std::string gzip_compress(std::string_view raw);
/// Wraps a ZIP into a CRX3 container with an opaque (unsigned) header.
std::string write_crx3(std::string_view zip, std::string_view header = {});

} // namespace extsleuth::ingest
