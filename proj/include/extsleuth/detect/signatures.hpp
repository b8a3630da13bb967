#pragma once

#include "extsleuth/code/features.hpp"
#include "extsleuth/detect/finding.hpp"
#include "extsleuth/ingest/artifact.hpp"

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace extsleuth::detect {

struct CompiledPattern;

struct SignatureEntry {
    std::string library;
    std::string versionRegex; // exactly one capture group
    std::string vulnerableBelow;
    std::vector<std::string> advisories;
    std::vector<std::string> hashes; // lower-case SHA-256 hex of whole files
    std::shared_ptr<const CompiledPattern> pattern;
};

struct SignatureDb {
    std::vector<SignatureEntry> entries;
};

/// Parses `{"entries": [...]}`. Throws Error(MalformedSignatureDb) with the
/// line of the offending construct.
SignatureDb parse_signature_db(std::string_view json, std::string_view sourceName = "<memory>");
SignatureDb load_signature_db(const std::filesystem::path& path);

/// The database shipped with the tool (data/signatures.json).
const SignatureDb& default_signature_db();

/// Dotted-numeric comparison; non-numeric suffixes are ignored and missing
/// components count as zero. Returns <0, 0, >0.
int compare_versions(std::string_view a, std::string_view b);

/// One finding per (file, library): matching entries of the same library are
/// merged and their advisories unioned. Medium, or Info without advisories.
std::vector<Finding> scan_vulnerable_libraries(const ingest::ExtensionArtifact& artifact,
                                               const code::CodeModel& model, const SignatureDb& db);

} // namespace extsleuth::detect
