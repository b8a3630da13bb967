#include "extsleuth/detect/rules.hpp"
#include "extsleuth/common/error.hpp"
#include "extsleuth/common/text.hpp"

#include <boost/regex.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

namespace extsleuth::detect {

namespace {

constexpr std::int64_t kMsPerDay = 86'400'000;

const std::array<std::string_view, 7> kChildProcessFns = {
    "exec", "execSync", "execFile", "execFileSync", "spawn", "spawnSync", "fork",
};

const std::array<std::string_view, 6> kNativeExtensions = {".node", ".wasm", ".exe", ".dll", ".so", ".dylib"};

std::string manifest_path(const ingest::ExtensionArtifact& a)
{
    return a.manifest.root + (a.kind == ingest::ArtifactKind::ChromeExtension ? "manifest.json" : "package.json");
}

struct Ctx {
    const ingest::ExtensionArtifact& artifact;
    const code::CodeModel& model;
    const StaticConfig& config;
    std::vector<Finding> out;

    void add(Finding f)
    {
        if (config.disabledRules.count(f.ruleId))
            return;
        if (auto it = config.severityOverrides.find(f.ruleId); it != config.severityOverrides.end())
            f.severity = it->second;
        out.push_back(std::move(f));
    }

    void located(std::string_view rule, Severity sev, std::string title, std::string detail,
                 const std::string& path, std::string_view source, code::Span span)
    {
        add(make_located_finding(std::string(rule), sev, std::move(title), std::move(detail), path, source, span));
    }

    void unlocated(std::string_view rule, Severity sev, std::string title, std::string detail)
    {
        Finding f;
        f.ruleId = std::string(rule);
        f.severity = sev;
        f.title = std::move(title);
        f.detail = std::move(detail);
        add(std::move(f));
    }

    /// Locates `needle` inside the manifest file; falls back to artifact level.
    void in_manifest(std::string_view rule, Severity sev, std::string title, std::string detail, std::string_view needle)
    {
        auto path = manifest_path(artifact);
        if (const auto* file = artifact.find(path); file && !needle.empty()) {
            auto pos = file->bytes.find(std::string("\"") + std::string(needle) + "\"");
            if (pos != std::string::npos) {
                located(rule, sev, std::move(title), std::move(detail), path, file->bytes,
                        span_at(file->bytes, pos + 1, needle.size()));
                return;
            }
        }
        unlocated(rule, sev, std::move(title), std::move(detail));
    }
};

bool ends_with_member(std::string_view path, std::string_view member)
{
    return path == member || (text::ends_with(path, member) && path.size() > member.size() &&
                              path[path.size() - member.size() - 1] == '.');
}

void url_rules(Ctx& c, const code::SourceUnit& unit)
{
    std::set<std::pair<std::string, std::string>> seen; // (rule, url)
    for (auto& lit : unit.strings) {
        for (auto& url : code::find_urls(lit.value)) {
            ParsedUrl parsed;
            try {
                parsed = parse_url(url);
            } catch (const Error&) {
                continue;
            }
            auto cls = classify_url(parsed, c.config.lists);
            std::string_view rule;
            Severity sev = Severity::Medium;
            std::string title;
            std::string detail;
            if (cls == DomainClass::KnownBenign)
                continue;
            if (is_discord_webhook(parsed)) {
                rule = "discord-webhook-url";
                sev = Severity::High;
                title = "Hardcoded Discord webhook URL";
                detail = "A Discord webhook endpoint can receive uploaded data without any server of the author's own.";
            } else if (cls == DomainClass::ExfilIndicator) {
                rule = "url-exfil-indicator";
                sev = Severity::High;
                title = "URL matches an exfiltration indicator";
                detail = "Host " + parsed.host + " matches a known exfiltration indicator.";
            } else {
                rule = "suspicious-url";
                sev = Severity::Medium;
                title = "Hardcoded URL to an unknown domain";
                detail = "Host " + parsed.host + " is not on the allowlist.";
            }
            if (!seen.insert({std::string(rule), url}).second)
                continue;
            c.located(rule, sev, title, detail, unit.path, unit.text, lit.span);
        }
    }
}

void call_rules(Ctx& c, const code::SourceUnit& unit)
{
    for (auto& call : unit.callSites) {
        const auto& p = call.resolvedPath;
        if (p == "eval" || p == "Function") {
            c.located("eval-or-function-constructor", Severity::Medium,
                      p == "eval" ? "Dynamic code evaluation via eval" : "Dynamic code via the Function constructor",
                      "Code built at run time hides its behavior from static review.", unit.path, unit.text, call.span);
        }
        for (auto fn : kChildProcessFns) {
            if (p != "child_process." + std::string(fn))
                continue;
            bool powershell = std::any_of(call.argLiterals.begin(), call.argLiterals.end(),
                                          [](const std::string& a) { return text::icontains(a, "powershell"); });
            c.located("child-process-exec", powershell ? Severity::High : Severity::Medium,
                      powershell ? "Launches PowerShell" : "Spawns a child process",
                      "Calls " + p + (powershell ? " with a PowerShell command line." : " from extension code."),
                      unit.path, unit.text, call.span);
        }
        bool install = std::any_of(call.argLiterals.begin(), call.argLiterals.end(),
                                   [](const std::string& a) { return a == "workbench.extensions.installExtension"; });
        if (install) {
            c.located("vscode-install-extension", Severity::Medium, "Extension installing another extension",
                      "Invokes workbench.extensions.installExtension programmatically.", unit.path, unit.text,
                      call.span);
        }
    }
}

void blob_rules(Ctx& c, const code::SourceUnit& unit)
{
    for (auto& blob : unit.blobs) {
        if (blob.decodedSizeBytes < kBase64MediumBytes)
            continue;
        auto sev = blob.decodedSizeBytes >= kBase64HighBytes ? Severity::High : Severity::Medium;
        c.located("base64-blob", sev, "Large base64-encoded blob",
                  "Decodes to " + text::human_size(blob.decodedSizeBytes) + " (sha256 " + blob.decodedSha256 + ").",
                  unit.path, unit.text, blob.span);
    }
}

void invisible_rules(Ctx& c, const code::SourceUnit& unit)
{
    std::size_t i = 0;
    while (i < unit.invisible.size()) {
        std::size_t j = i + 1;
        while (j < unit.invisible.size() && unit.invisible[j].span.offset == unit.invisible[j - 1].span.end())
            ++j;
        auto first = unit.invisible[i].span;
        auto last = unit.invisible[j - 1].span;
        auto span = first;
        span.length = last.end() - first.offset;
        std::string kinds;
        std::set<std::string_view> cats;
        for (auto k = i; k < j; ++k)
            cats.insert(code::to_string(unit.invisible[k].category));
        for (auto cat : cats)
            kinds += (kinds.empty() ? "" : ", ") + std::string(cat);
        c.located("invisible-unicode", Severity::High, "Invisible Unicode characters in code",
                  std::to_string(j - i) + " invisible code point(s) (" + kinds + ") in a row.", unit.path, unit.text,
                  span);
        i = j;
    }
}

void date_rules(Ctx& c, const code::SourceUnit& unit)
{
    for (auto& cmp : unit.comparisons) {
        for (const auto* side : {&cmp.left, &cmp.right}) {
            auto ms = literal_date_ms(*side);
            if (!ms || *ms <= c.config.analysisDateMs)
                continue;
            c.located("date-threshold-compare", Severity::Medium, "possible logic bomb",
                      "Compares against a literal date after the analysis date.", unit.path, unit.text, cmp.span);
            break;
        }
    }
}

void obfuscation_rules(Ctx& c, const code::SourceUnit& unit)
{
    if (unit.parseStatus == code::ParseStatus::ParseFailed) {
        c.located("unparsed-source", Severity::Info, "Source could not be parsed",
                  "Text-level rules only: " + std::string(text::utf8_prefix(unit.parseError, 160)), unit.path,
                  unit.text, span_at(unit.text, 0, 0));
    }
    const auto& m = unit.metrics;
    if (m.minified || m.nonAlnumRatio > c.config.obfuscationRatioThreshold) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "minified=%s nonAlnumRatio=%.3f entropy=%.3f maxLine=%zu.",
                      m.minified ? "true" : "false", m.nonAlnumRatio, m.shannonEntropyBitsPerChar, m.maxLineLength);
        auto firstLine = std::min(unit.text.find('\n'), std::size_t{80});
        c.located("obfuscation-metrics-elevated", Severity::Info, "obfuscation metrics elevated", buf, unit.path,
                  unit.text, span_at(unit.text, 0, std::min(firstLine, unit.text.size())));
    }
}

bool is_url_literal_present(const code::CodeModel& model)
{
    for (auto& unit : model.units)
        for (auto& lit : unit.strings)
            if (!code::find_urls(lit.value).empty())
                return true;
    return false;
}

void cookies_rule(Ctx& c)
{
    if (!is_url_literal_present(c.model))
        return;
    for (auto& unit : c.model.units) {
        for (auto& call : unit.callSites) {
            const auto& p = call.resolvedPath;
            if (text::starts_with(p, "chrome.cookies.") || text::starts_with(p, "browser.cookies.")) {
                c.located("cookies-api-plus-network", Severity::High, "Cookie access combined with network endpoints",
                          "Reads cookies via " + p + " in an artifact that also embeds URLs.", unit.path, unit.text,
                          call.span);
                return;
            }
        }
    }
}

bool csp_header(std::string_view s)
{
    return text::iequals(s, "content-security-policy") || text::iequals(s, "content-security-policy-report-only");
}

void csp_rules(Ctx& c)
{
    for (auto& res : c.artifact.manifest.ruleResources) {
        const auto* file = c.artifact.find(res);
        if (!file)
            continue;
        auto j = nlohmann::json::parse(file->bytes, nullptr, false);
        if (j.is_discarded() || !j.is_array())
            continue;
        bool strips = false;
        std::string header;
        for (auto& rule : j) {
            if (!rule.is_object() || !rule.contains("action") || !rule["action"].is_object())
                continue;
            auto& action = rule["action"];
            if (!action.contains("responseHeaders") || !action["responseHeaders"].is_array())
                continue;
            for (auto& h : action["responseHeaders"]) {
                if (!h.is_object() || !h.contains("header") || !h["header"].is_string())
                    continue;
                auto name = h["header"].get<std::string>();
                auto op = h.value("operation", std::string());
                if (csp_header(name) && op == "remove") {
                    strips = true;
                    header = name;
                }
            }
        }
        if (!strips)
            continue;
        auto pos = file->bytes.find(header);
        c.located("csp-strip", Severity::High, "Strips Content-Security-Policy headers",
                  "A declarativeNetRequest rule removes the " + header + " response header.", res, file->bytes,
                  span_at(file->bytes, pos == std::string::npos ? 0 : pos, pos == std::string::npos ? 0 : header.size()));
    }
    for (auto& unit : c.model.units) {
        bool updates = std::any_of(unit.callSites.begin(), unit.callSites.end(), [](const code::CallSite& cs) {
            return ends_with_member(cs.resolvedPath, "declarativeNetRequest.updateDynamicRules") ||
                   ends_with_member(cs.resolvedPath, "declarativeNetRequest.updateSessionRules");
        });
        if (!updates)
            continue;
        bool removes = std::any_of(unit.strings.begin(), unit.strings.end(),
                                   [](const code::StringLiteralRecord& s) { return s.value == "remove"; });
        if (!removes)
            continue;
        for (auto& lit : unit.strings) {
            if (csp_header(lit.value)) {
                c.located("csp-strip", Severity::High, "Strips Content-Security-Policy headers",
                          "Registers a dynamic rule that removes the " + lit.value + " response header.", unit.path,
                          unit.text, lit.span);
                break;
            }
        }
    }
}

void manifest_rules(Ctx& c)
{
    for (auto& ref : c.artifact.manifest.missingReferences)
        c.in_manifest("missing-reference", Severity::Info, "Manifest references a missing file",
                      "Referenced path " + ref + " is not in the package.", ref);
    std::vector<std::string> patterns = c.artifact.manifest.hostPatterns;
    for (auto& cs : c.artifact.manifest.contentScripts)
        patterns.insert(patterns.end(), cs.matches.begin(), cs.matches.end());
    std::set<std::string> reported;
    for (auto& p : patterns) {
        try {
            (void)MatchPattern::parse(p);
        } catch (const Error& e) {
            if (reported.insert(p).second)
                c.in_manifest("malformed-match-pattern", Severity::Info, "Malformed match pattern", e.what(), p);
        }
    }
    for (auto& file : c.artifact.files) {
        bool byExt = std::any_of(kNativeExtensions.begin(), kNativeExtensions.end(),
                                 [&](std::string_view ext) { return text::ends_with(text::to_lower(file.path), ext); });
        std::string_view b = file.bytes;
        bool byMagic = text::starts_with(b, "\x7f" "ELF") || text::starts_with(b, std::string_view("\0asm", 4)) ||
                       (text::starts_with(b, "MZ") && b.size() > 64 && !file.isCode);
        if (byExt || byMagic) {
            Finding f;
            f.ruleId = "native-binary-present";
            f.severity = Severity::Low;
            f.title = "Native binary in package";
            f.detail = "Compiled payload of " + text::human_size(file.bytes.size()) + " is not analyzed.";
            f.location = Location{file.path, span_at(file.bytes, 0, 0)};
            c.add(std::move(f));
        }
    }
}

std::optional<std::int64_t> make_ms(std::int64_t y, int mon, int d, int h = 0, int mi = 0, int s = 0, int ms = 0,
                                    int offsetMin = 0)
{
    static constexpr std::array<int, 12> kDays = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (y < 1970 || y > 9999 || mon < 1 || mon > 12 || d < 1 || d > kDays[static_cast<std::size_t>(mon - 1)] ||
        h > 24 || mi > 59 || s > 59)
        return std::nullopt;
    bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (mon == 2 && d == 29 && !leap)
        return std::nullopt;
    auto days = days_from_civil(y, static_cast<unsigned>(mon), static_cast<unsigned>(d));
    return days * kMsPerDay + ((h * 60LL + mi - offsetMin) * 60LL + s) * 1000LL + ms;
}

int month_from_name(std::string_view name)
{
    static constexpr std::array<std::string_view, 12> kNames = {"jan", "feb", "mar", "apr", "may", "jun",
                                                                "jul", "aug", "sep", "oct", "nov", "dec"};
    if (name.size() < 3)
        return 0;
    auto lower = text::to_lower(name);
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (text::starts_with(lower, kNames[i]))
            return static_cast<int>(i) + 1;
    return 0;
}

int to_int(const boost::ssub_match& m, int fallback = 0)
{
    return m.matched ? std::stoi(m.str()) : fallback;
}

} // namespace

std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d)
{
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::optional<std::int64_t> parse_date_text(std::string_view input)
{
    std::string s(text::trim(input));
    boost::smatch m;
    static const boost::regex iso(
        R"(^(\d{4})-(\d{2})-(\d{2})(?:[T ](\d{2}):(\d{2})(?::(\d{2})(?:\.(\d{1,3})\d*)?)?)?\s*(Z|([+-])(\d{2}):?(\d{2}))?$)");
    if (boost::regex_match(s, m, iso)) {
        int offset = 0;
        if (m[9].matched)
            offset = (m[9].str() == "-" ? -1 : 1) * (to_int(m[10]) * 60 + to_int(m[11]));
        int ms = 0;
        if (m[7].matched) {
            auto frac = m[7].str();
            while (frac.size() < 3)
                frac += '0';
            ms = std::stoi(frac);
        }
        return make_ms(to_int(m[1]), to_int(m[2]), to_int(m[3]), to_int(m[4]), to_int(m[5]), to_int(m[6]), ms, offset);
    }
    static const boost::regex slashed(R"(^(\d{4})/(\d{1,2})/(\d{1,2})$)");
    if (boost::regex_match(s, m, slashed))
        return make_ms(to_int(m[1]), to_int(m[2]), to_int(m[3]));
    static const boost::regex monthFirst(
        R"(^(?:[A-Za-z]{3,9},?\s+)?([A-Za-z]{3,9})\.?\s+(\d{1,2})(?:st|nd|rd|th)?,?\s+(\d{4})(?:\s+(\d{2}):(\d{2})(?::(\d{2}))?)?(?:\s+(?:GMT|UTC|Z))?$)");
    if (boost::regex_match(s, m, monthFirst)) {
        int mon = month_from_name(m[1].str());
        if (mon == 0)
            return std::nullopt;
        return make_ms(to_int(m[3]), mon, to_int(m[2]), to_int(m[4]), to_int(m[5]), to_int(m[6]));
    }
    static const boost::regex dayFirst(R"(^(\d{1,2})\s+([A-Za-z]{3,9})\.?,?\s+(\d{4})$)");
    if (boost::regex_match(s, m, dayFirst)) {
        int mon = month_from_name(m[2].str());
        if (mon == 0)
            return std::nullopt;
        return make_ms(to_int(m[3]), mon, to_int(m[1]));
    }
    return std::nullopt;
}

std::optional<std::int64_t> literal_date_ms(std::string_view operandView)
{
    std::string operand(operandView);
    boost::smatch m;
    static const boost::regex ctorString(R"((?:new\s+Date|Date\.parse)\s*\(\s*(['"`])([^'"`\n]{4,64})\1\s*\))");
    if (boost::regex_search(operand, m, ctorString))
        if (auto v = parse_date_text(m[2].str()))
            return v;
    static const boost::regex ctorParts(R"((?:new\s+Date|Date\.UTC)\s*\(\s*(\d{4})\s*,\s*(\d{1,2})(?:\s*,\s*(\d{1,2}))?)");
    if (boost::regex_search(operand, m, ctorParts))
        if (auto v = make_ms(to_int(m[1]), to_int(m[2]) + 1, to_int(m[3], 1)))
            return v;
    static const boost::regex quoted(R"((['"`])(\d{4}-\d{2}-\d{2}[^'"`\n]{0,30})\1)");
    if (boost::regex_search(operand, m, quoted))
        if (auto v = parse_date_text(m[2].str()))
            return v;
    static const boost::regex epoch(R"((?:^|[^\w.])(\d{12,14})(?![\w.]))");
    if (boost::regex_search(operand, m, epoch))
        return std::stoll(m[1].str());
    return std::nullopt;
}

const std::vector<RuleInfo>& builtin_rules()
{
    static const std::vector<RuleInfo> rules = {
        {"discord-webhook-url", Severity::High, "Hardcoded Discord webhook URL"},
        {"url-exfil-indicator", Severity::High, "URL matches an exfiltration indicator"},
        {"suspicious-url", Severity::Medium, "Hardcoded URL to an unknown domain"},
        {"eval-or-function-constructor", Severity::Medium, "Dynamic code evaluation"},
        {"child-process-exec", Severity::Medium, "Spawns a child process (High with PowerShell)"},
        {"base64-blob", Severity::Medium, "Large base64-encoded blob (High from 100KB)"},
        {"invisible-unicode", Severity::High, "Invisible Unicode characters in code"},
        {"cookies-api-plus-network", Severity::High, "Cookie access combined with network endpoints"},
        {"date-threshold-compare", Severity::Medium, "possible logic bomb"},
        {"vscode-install-extension", Severity::Medium, "Extension installing another extension"},
        {"csp-strip", Severity::High, "Strips Content-Security-Policy headers"},
        {"obfuscation-metrics-elevated", Severity::Info, "obfuscation metrics elevated"},
        {"unparsed-source", Severity::Info, "Source could not be parsed"},
        {"missing-reference", Severity::Info, "Manifest references a missing file"},
        {"malformed-match-pattern", Severity::Info, "Malformed match pattern"},
        {"native-binary-present", Severity::Low, "Native binary in package"},
        {"vulnerable-library", Severity::Medium, "vulnerable library"},
    };
    return rules;
}

std::vector<Finding> run_pattern_rules(const ingest::ExtensionArtifact& artifact, const code::CodeModel& model,
                                       const StaticConfig& config)
{
    Ctx c{artifact, model, config, {}};
    for (auto& unit : model.units) {
        url_rules(c, unit);
        call_rules(c, unit);
        blob_rules(c, unit);
        invisible_rules(c, unit);
        date_rules(c, unit);
        obfuscation_rules(c, unit);
    }
    cookies_rule(c);
    csp_rules(c);
    manifest_rules(c);
    std::stable_sort(c.out.begin(), c.out.end(), finding_order);
    return std::move(c.out);
}

std::vector<Finding> run_static_engine(const ingest::ExtensionArtifact& artifact, const code::CodeModel& model,
                                       const SignatureDb& db, const StaticConfig& config)
{
    auto findings = run_pattern_rules(artifact, model, config);
    if (config.disabledRules.count("vulnerable-library")) {
        finalize_findings(findings);
        return findings;
    }
    for (auto& f : scan_vulnerable_libraries(artifact, model, db)) {
        if (auto it = config.severityOverrides.find(f.ruleId); it != config.severityOverrides.end())
            f.severity = it->second;
        findings.push_back(std::move(f));
    }
    finalize_findings(findings);
    return findings;
}

} // namespace extsleuth::detect
