#pragma once

#include "extsleuth/code/ast.hpp"
#include "extsleuth/ingest/artifact.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace extsleuth::code {

inline constexpr std::size_t kMaxArgLiteralBytes = 512;
inline constexpr std::size_t kMaxParseBytes = 4u << 20;

struct CallSite {
    std::string calleePath;   // syntactic, e.g. "cp.exec" or "require('child_process').exec"
    std::string resolvedPath; // aliases resolved, e.g. "child_process.exec"
    std::vector<std::string> argLiterals;
    Span span;
    bool isNew = false;
};

enum class LiteralClass { Plain, Url, Base64Candidate };
std::string_view to_string(LiteralClass c);

struct StringLiteralRecord {
    std::string value; // cooked
    Span span;         // raw text between the delimiters
    LiteralClass classification = LiteralClass::Plain;
};

struct ObfuscationMetrics {
    double nonAlnumRatio = 0;
    double avgIdentifierLength = 0;
    std::size_t maxLineLength = 0; // code points
    double shannonEntropyBitsPerChar = 0;
    double whitespaceFraction = 0;
    bool minified = false;
};

enum class InvisibleCategory { ZeroWidth, BidiControl, Bom };
std::string_view to_string(InvisibleCategory c);

struct InvisibleCharHit {
    std::size_t charIndex = 0; // code point index
    char32_t codePoint = 0;
    InvisibleCategory category = InvisibleCategory::ZeroWidth;
    Span span; // byte offset/length in the text
};

struct Base64Blob {
    Span span;
    std::size_t decodedSizeBytes = 0;
    std::string preview; // first 64 decoded bytes
    std::string decodedSha256;
};

/// A relational or equality comparison with each operand's source text.
/// Identifier operands bound once to a constant initializer also carry that
/// initializer's text.
struct Comparison {
    std::string op;
    std::string left;
    std::string right;
    Span span;
};

enum class ParseStatus { Parsed, ParseFailed };

struct SourceUnit {
    std::string path;
    std::string text;
    ParseStatus parseStatus = ParseStatus::ParseFailed;
    std::string parseError; // empty when parsed
    bool minified = false;
    bool hasInvisibleUnicode = false;

    std::vector<CallSite> callSites;
    std::vector<StringLiteralRecord> strings;
    std::vector<Comparison> comparisons;
    ObfuscationMetrics metrics;
    std::vector<InvisibleCharHit> invisible;
    std::vector<Base64Blob> blobs;

    /// Raw source bytes at a span, clamped to the text.
    std::string_view slice(const Span& s) const;
};

struct CodeModel {
    std::vector<SourceUnit> units; // sorted by path

    const SourceUnit* find(std::string_view path) const;
};

struct ParsedSource {
    std::shared_ptr<const Ast> ast; // null when parse-failed
    std::string error;
};

ParsedSource parse_source(std::string_view text);

std::vector<CallSite> enumerate_call_sites(const Ast& ast, std::string_view text);

LiteralClass classify_literal(std::string_view value);
std::vector<StringLiteralRecord> extract_string_literals(const Ast& ast, std::string_view text);
/// Quoted-string scan used when the unit does not parse.
std::vector<StringLiteralRecord> extract_string_literals_text(std::string_view text);

std::vector<Comparison> extract_comparisons(const Ast& ast, std::string_view text);

ObfuscationMetrics compute_obfuscation_metrics(std::string_view text);
std::vector<InvisibleCharHit> detect_invisible_unicode(std::string_view text);

/// Decodes base64-candidate literals; failures are demoted to Plain in place.
std::vector<Base64Blob> extract_base64_blobs(std::vector<StringLiteralRecord>& literals);

/// Every http(s) URL embedded in a string, in order of appearance.
std::vector<std::string> find_urls(std::string_view s);

SourceUnit analyze_source(std::string path, std::string text);
CodeModel build_code_model(const ingest::ExtensionArtifact& artifact);

} // namespace extsleuth::code
