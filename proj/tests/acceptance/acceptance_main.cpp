// End-to-end acceptance checks. Each criterion prints one line:
//   [CRITERION] <name>: PASS|FAIL
// followed by indented detail lines for anything that went wrong. The
// process exits nonzero when any criterion fails.

#include "fixture_corpus.hpp"
#include "host_watch.hpp"
#include "artifact_builder.hpp"
#include "random_source.hpp"
#include "scheduler_oracle.hpp"

#include "extsleuth/common/base64.hpp"
#include "extsleuth/common/hash.hpp"
#include "extsleuth/service/pipeline.hpp"

#include <json.hpp>

#include <sys/socket.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace extsleuth;
using report::RiskLevel;

namespace {

// Pinned tolerances.
constexpr double kFixtureBudgetSeconds = 10.0;
constexpr double kFixtureBudgetSecondsCi = 20.0; // shared CI runners are noisy
constexpr double kDayTimerWallSeconds = 1.0;
constexpr int kSchedulerSets = 1000;
constexpr std::int64_t kDay = 86'400'000;
constexpr std::int64_t kHour = 3'600'000;
constexpr std::int64_t kBombDate = 1748736000000; // 2025-06-01T00:00:00Z

class Criterion {
public:
    explicit Criterion(std::string name)
        : name_(std::move(name))
    {
    }

    void check(bool ok, const std::string& what)
    {
        if (!ok)
            failures_.push_back(what);
    }

    bool report() const
    {
        std::cout << "[CRITERION] " << name_ << ": " << (failures_.empty() ? "PASS" : "FAIL") << "\n";
        for (auto& f : failures_)
            std::cout << "    " << f << "\n";
        std::cout.flush();
        return failures_.empty();
    }

private:
    std::string name_;
    std::vector<std::string> failures_;
};

struct Scratch {
    fs::path dir;
    Scratch()
    {
        std::string tmpl = (fs::temp_directory_path() / "extsleuth-accept-XXXXXX").string();
        if (!mkdtemp(tmpl.data()))
            throw std::runtime_error("mkdtemp failed");
        dir = tmpl;
    }
    ~Scratch()
    {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
};

service::PipelineOptions quiet(const sandbox::ScenarioConfig& scenario)
{
    service::PipelineOptions o;
    o.scenario = scenario;
    o.recordTimings = false;
    return o;
}

bool has_id(const report::RiskReport& r, const std::string& id)
{
    return std::any_of(r.findings.begin(), r.findings.end(), [&](auto& f) { return f.id == id; });
}

std::size_t count_high(const report::RiskReport& r)
{
    return std::count_if(r.findings.begin(), r.findings.end(), [](auto& f) { return f.severity == detect::Severity::High; }) +
           std::count_if(r.contradictions.begin(), r.contradictions.end(),
                         [](auto& f) { return f.severity == detect::Severity::High; });
}

std::string id_list(const report::RiskReport& r)
{
    std::string s;
    for (auto& f : r.findings)
        s += (s.empty() ? "" : ", ") + f.id;
    return s;
}

// --- 1. malicious corpus ----------------------------------------------------

void malicious_corpus(Criterion& c)
{
    const std::map<std::string, std::vector<std::string>> expected = {
        {"cookie-stealer",
         {"S-url-exfil-indicator-background.js:3:14", "S-cookies-api-plus-network-background.js:8:25",
          "D-cookie-exfiltration-6", "D-network-exfil-indicator-6"}},
        {"vsix-powershell",
         {"S-child-process-exec-extension/extension.js:25:3", "S-vscode-install-extension-extension/extension.js:26:9",
          "S-base64-blob-extension/extension.js:9:20", "S-suspicious-url-extension/extension.js:8:16", "D-process-exec-4",
          "D-install-extension-6", "D-network-unknown-host-2"}},
        {"clipboard-webhook",
         {"S-discord-webhook-url-extension.js:4:15", "D-clipboard-exfiltration-5", "D-network-exfil-indicator-5"}},
        {"npm-zerowidth",
         {"S-invisible-unicode-preinstall.js:8:12", "S-child-process-exec-preinstall.js:35:3", "D-process-exec-3",
          "D-network-unknown-host-1"}},
    };
    for (auto& f : corpus::malicious()) {
        auto r = service::analyze_artifact(corpus::load(f), quiet(corpus::scenario(f))).report;
        c.check(r.verdict.level == RiskLevel::High,
                f.label() + ": verdict " + std::string(to_string(r.verdict.level)) + " (score " +
                    std::to_string(r.verdict.score) + ")");
        for (auto& id : expected.at(f.name))
            c.check(has_id(r, id), f.label() + ": missing " + id + " in [" + id_list(r) + "]");
    }
}

// --- 2. benign corpus -------------------------------------------------------

void benign_corpus(Criterion& c)
{
    for (auto& f : corpus::benign()) {
        auto r = service::analyze_artifact(corpus::load(f), quiet(corpus::scenario(f))).report;
        c.check(r.verdict.level != RiskLevel::High, f.label() + ": verdict High");
        c.check(count_high(r) == 0, f.label() + ": " + std::to_string(count_high(r)) + " High findings: " + id_list(r));
    }
}

// --- 3. time machine --------------------------------------------------------

bool has_write_at(const std::vector<sandbox::SandboxEvent>& events, std::int64_t at)
{
    return std::any_of(events.begin(), events.end(), [&](auto& e) {
        return e.category == sandbox::EventCategory::Filesystem && e.virtualTimeMs == at;
    });
}

void time_machine(Criterion& c)
{
    auto defaults = sandbox::ScenarioConfig::defaults();
    auto start = defaults.virtualStartDate;

    {
        corpus::Fixture f{"timing", "day-timer"};
        auto a = corpus::load(f);
        auto t0 = std::chrono::steady_clock::now();
        auto out = service::analyze_artifact(a, quiet(defaults));
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.check(secs < kDayTimerWallSeconds, "day-timer took " + std::to_string(secs) + " s of wall time");
        c.check(has_write_at(out.events, start + kDay), "day-timer: no filesystem event at start+24h");
    }
    {
        corpus::Fixture f{"timing", "minute-chain"};
        auto out = service::analyze_artifact(corpus::load(f), quiet(defaults));
        c.check(has_write_at(out.events, start + kHour), "minute-chain: no filesystem event at start+60min");
    }
    {
        corpus::Fixture f{"timing", "logic-bomb"};
        auto a = corpus::load(f);
        const std::vector<std::pair<std::string, std::int64_t>> starts = {
            {"default", start},
            {"2025-05-31", kBombDate - kDay},
            {"2025-06-01T00:00:00Z", kBombDate},
            {"2025-06-01T00:00:00.001Z", kBombDate + 1},
            {"2025-06-02", kBombDate + kDay},
            {"2026-06-02", 1780358400000},
        };
        for (auto& [label, at] : starts) {
            auto sc = defaults;
            sc.virtualStartDate = at;
            auto out = service::analyze_artifact(a, quiet(sc));
            bool payload = std::any_of(out.events.begin(), out.events.end(), [](auto& e) {
                return e.category == sandbox::EventCategory::Network &&
                       e.argsSummary.find("weather-widget-cdn.example/stage2") != std::string::npos;
            });
            bool want = at > kBombDate;
            c.check(payload == want, "logic-bomb start " + label + ": payload " + (payload ? "fired" : "absent"));
        }
    }
}

// --- 4. determinism ---------------------------------------------------------

void determinism(Criterion& c)
{
    for (auto& f : corpus::all()) {
        auto a = corpus::load(f);
        std::string reports[2], events[2];
        for (int run = 0; run < 2; ++run) {
            auto o = quiet(corpus::scenario(f));
            o.model = std::make_shared<report::MockAdapter>();
            auto out = service::analyze_artifact(a, o);
            reports[run] = report::serialize_report(out.report);
            events[run] = sandbox::serialize_events(out.events);
        }
        c.check(events[0] == events[1], f.label() + ": event logs differ between runs");
        c.check(reports[0] == reports[1], f.label() + ": report bytes differ between runs");
    }
}

// --- 5. containment ---------------------------------------------------------

bool under(const fs::path& p, const fs::path& root)
{
    auto rel = p.lexically_normal().lexically_relative(root.lexically_normal());
    return !rel.empty() && *rel.begin() != "..";
}

struct HostFileState {
    bool exists = false;
    std::uintmax_t size = 0;
    fs::file_time_type mtime{};
    bool operator==(const HostFileState&) const = default;
};

HostFileState host_state(const fs::path& p)
{
    std::error_code ec;
    HostFileState s;
    s.exists = fs::exists(p, ec);
    if (s.exists) {
        s.size = fs::is_regular_file(p, ec) ? fs::file_size(p, ec) : 0;
        s.mtime = fs::last_write_time(p, ec);
    }
    return s;
}

void containment(Criterion& c, const fs::path& scratch)
{

    // The watcher must see what it claims to see.
    {
        hostwatch::start();
        { std::ofstream(scratch / "control.txt") << "x"; }
        int fd = ::socket(AF_INET, SOCK_STREAM, 0);
        if (fd >= 0)
            ::close(fd);
        auto ctl = hostwatch::stop();
        c.check(ctl.sockets == 1, "control: watcher counted " + std::to_string(ctl.sockets) + " sockets, expected 1");
        bool sawWrite = std::any_of(ctl.writtenPaths.begin(), ctl.writtenPaths.end(),
                                    [&](auto& p) { return fs::path(p).filename() == "control.txt"; });
        c.check(sawWrite, "control: watcher missed a file write");
    }

    // Guest-side paths the fixtures write to; none may change on the host.
    const std::vector<fs::path> guestPaths = {"/tmp/chain-done", "/tmp/delayed-report.txt", "/tmp/payload.exe",
                                              "/tmp/update.ps1"};
    std::vector<HostFileState> before;
    for (auto& p : guestPaths)
        before.push_back(host_state(p));

    auto store = scratch / "containment-store";
    std::vector<corpus::Fixture> fixtures = corpus::all();
    std::vector<extsleuth::ingest::ExtensionArtifact> artifacts;
    for (auto& f : fixtures)
        artifacts.push_back(corpus::load(f));

    for (auto policy : {sandbox::NetworkPolicy::Block, sandbox::NetworkPolicy::Stub}) {
        auto policyName = std::string(to_string(policy));
        report::ReportStore rs(store / policyName);
        hostwatch::start();
        std::size_t events = 0;
        for (std::size_t i = 0; i < fixtures.size(); ++i) {
            auto o = quiet(corpus::scenario(fixtures[i]));
            o.scenario.networkPolicy = policy;
            o.store = &rs;
            events += service::analyze_artifact(artifacts[i], o).events.size();
        }
        auto w = hostwatch::stop();
        c.check(events > 0, policyName + ": the corpus produced no events");
        c.check(w.sockets == 0, policyName + ": " + std::to_string(w.sockets) + " sockets created");
        c.check(w.connects == 0, policyName + ": " + std::to_string(w.connects) + " connect() calls");
        for (auto& p : w.writtenPaths)
            c.check(under(p, scratch), policyName + ": host write outside the scratch directory: " + p);
        c.check(!w.writtenPaths.empty(), policyName + ": no store writes observed (watcher not engaged?)");
    }
    for (std::size_t i = 0; i < guestPaths.size(); ++i)
        c.check(host_state(guestPaths[i]) == before[i], "host file changed: " + guestPaths[i].string());
}

// --- 6. scheduler -----------------------------------------------------------

void scheduler_oracle(Criterion& c)
{
    testgen::Rng rng(0xacce97);
    const std::int64_t start = sandbox::ScenarioConfig::defaults().virtualStartDate;
    for (int set = 0; set < kSchedulerSets; ++set) {
        auto ts = schedoracle::random_task_set(rng);
        auto expected = schedoracle::oracle(ts, start);
        auto actual = schedoracle::run_scheduler(ts, start);
        c.check(actual.firings == expected, "set " + std::to_string(set) + ": firing sequence differs from the oracle");
        c.check(actual.clockMismatches == 0, "set " + std::to_string(set) + ": now() differed from dueMs in a callback");
        for (std::size_t k = 1; k < actual.firings.size(); ++k)
            if (actual.firings[k].at < actual.firings[k - 1].at) {
                c.check(false, "set " + std::to_string(set) + ": clock went backwards");
                break;
            }
    }
}

// --- 7. static detectors against independent oracles -------------------------

std::vector<detect::Finding> scan_js(const std::string& js)
{
    using namespace testgen;
    auto a = make_artifact(ingest::ArtifactKind::NpmPackage, {{"package.json", npm_manifest()}, {"index.js", js}});
    auto model = code::build_code_model(a);
    return detect::run_static_engine(a, model, detect::default_signature_db());
}

std::vector<detect::Finding> with_rule(const std::vector<detect::Finding>& fs_, const std::string& rule)
{
    std::vector<detect::Finding> out;
    std::copy_if(fs_.begin(), fs_.end(), std::back_inserter(out), [&](auto& f) { return f.ruleId == rule; });
    return out;
}

// Discord webhook endpoints, written from the documented URL shapes.
bool oracle_webhook(const std::string& url)
{
    static const std::regex re(R"(^https?://([a-z0-9-]+\.)*(discord|discordapp)\.com/api/(v[0-9]+/)?webhooks/.*)",
                               std::regex::icase);
    return std::regex_match(url, re);
}

// Code points that render as nothing but change what the source means.
bool oracle_invisible(const std::string& s)
{
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char b = static_cast<unsigned char>(s[i]);
        char32_t cp;
        std::size_t n;
        if (b < 0x80) { cp = b; n = 1; }
        else if ((b >> 5) == 6) { cp = b & 0x1f; n = 2; }
        else if ((b >> 4) == 14) { cp = b & 0x0f; n = 3; }
        else { cp = b & 0x07; n = 4; }
        for (std::size_t k = 1; k < n && i + k < s.size(); ++k)
            cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3f);
        i += n;
        if ((cp >= 0x200b && cp <= 0x200f) || (cp >= 0x202a && cp <= 0x202e) || (cp >= 0x2060 && cp <= 0x2064) ||
            (cp >= 0x2066 && cp <= 0x2069) || cp == 0xfeff)
            return true;
    }
    return false;
}

// Independent RFC 4648 encoder for the round trip.
std::string oracle_b64(const std::string& raw)
{
    static const char* abc = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    std::size_t i = 0;
    for (; i + 3 <= raw.size(); i += 3) {
        unsigned v = (static_cast<unsigned char>(raw[i]) << 16) | (static_cast<unsigned char>(raw[i + 1]) << 8) |
                     static_cast<unsigned char>(raw[i + 2]);
        out += {abc[v >> 18], abc[(v >> 12) & 63], abc[(v >> 6) & 63], abc[v & 63]};
    }
    if (raw.size() - i == 1) {
        unsigned v = static_cast<unsigned char>(raw[i]) << 16;
        out += {abc[v >> 18], abc[(v >> 12) & 63], '=', '='};
    } else if (raw.size() - i == 2) {
        unsigned v = (static_cast<unsigned char>(raw[i]) << 16) | (static_cast<unsigned char>(raw[i + 1]) << 8);
        out += {abc[v >> 18], abc[(v >> 12) & 63], abc[(v >> 6) & 63], '='};
    }
    return out;
}

void static_oracles(Criterion& c)
{

    // Webhook: the URL literal is the only thing that changes per case.
    const std::vector<std::pair<std::string, bool>> webhooks = {
        {"https://discord.com/api/webhooks/1122334455667788990/AbC-def_123", true},
        {"https://discordapp.com/api/webhooks/99887766/tok", true},
        {"https://canary.discord.com/api/v10/webhooks/123/xyz", true},
        {"https://discord.com/channels/1122334455/667788", false},
        {"https://discord.com/api/v10/users/@me", false},
        {"https://hooks.slack.com/services/T000/B000/XXXX", false},
        {"https://notdiscord.com/api/webhooks/1/2", false},
    };
    int pos = 0, neg = 0;
    for (auto& [url, label] : webhooks) {
        c.check(oracle_webhook(url) == label, "webhook oracle disagrees with its label for " + url);
        auto got = with_rule(scan_js("const hook = \"" + url + "\";\nfetch(hook, {method: \"POST\", body: \"x\"});\n"),
                             "discord-webhook-url");
        (label ? pos : neg)++;
        c.check(!got.empty() == label, "webhook detector " + std::string(label ? "missed " : "flagged ") + url);
    }
    c.check(pos >= 3 && neg >= 3, "webhook: fewer than three cases per side");

    // Base64: random payloads around the size threshold.
    testgen::Rng rng(0xb64);
    struct B64Case {
        std::size_t rawBytes;
        bool valid;
        bool flagged;
    };
    const std::vector<B64Case> b64 = {
        {12 * 1024, true, true},  {40 * 1024 + 1, true, true}, {detect::kBase64MediumBytes + 2, true, true},
        {6 * 1024, true, false},  {detect::kBase64MediumBytes - 3, true, false}, {16 * 1024, false, false},
    };
    for (auto& bc : b64) {
        std::string raw(bc.rawBytes, '\0');
        for (auto& ch : raw)
            ch = static_cast<char>(rng.below(256));
        auto enc = oracle_b64(raw);
        auto round = base64::decode_strict(enc);
        c.check(round && *round == raw, "base64 round trip failed for " + std::to_string(bc.rawBytes) + " bytes");
        if (!bc.valid)
            enc.insert(enc.size() / 2, "!!"); // no longer base64
        auto got = with_rule(scan_js("const blob = \"" + enc + "\";\nmodule.exports = blob;\n"), "base64-blob");
        auto label = std::to_string(bc.rawBytes) + (bc.valid ? "" : " (corrupted)") + " bytes";
        c.check(!got.empty() == bc.flagged, "base64 detector " + std::string(bc.flagged ? "missed " : "flagged ") + label);
        if (!got.empty() && bc.flagged) {
            c.check(got[0].detail.find(sha256_hex(raw)) != std::string::npos,
                    "base64 finding for " + label + " does not carry the decoded payload's sha256");
            c.check(enc.compare(0, got[0].evidence.size(), got[0].evidence) == 0,
                    "base64 evidence for " + label + " is not a prefix of the encoded literal");
        }
    }

    // Invisible Unicode.
    const std::vector<std::string> invisibles = {
        "const a = \"x​y\";\n",
        "const t = `‌‍‌‍`;\nmodule.exports = t;\n",
        "if (user !== \"admin⁦\") { run(); }\n",
        "const word = \"⁠join\";\n",
        "const plain = \"hello\";\n",
        "const accented = \"café naïve über\";\n",
        "const emoji = \"ready \U0001F680\";\n",
    };
    pos = neg = 0;
    for (auto& js : invisibles) {
        bool label = oracle_invisible(js);
        (label ? pos : neg)++;
        auto got = with_rule(scan_js(js), "invisible-unicode");
        c.check(!got.empty() == label, "invisible-unicode detector disagrees with the oracle on: " + js);
    }
    c.check(pos >= 3 && neg >= 3, "invisible-unicode: fewer than three cases per side");

    // PowerShell launches are High; other process spawns are not.
    const std::vector<std::pair<std::string, bool>> shells = {
        {"require(\"child_process\").exec(\"powershell.exe -NoProfile -Command Get-Date\");\n", true},
        {"const cp = require(\"child_process\");\ncp.spawn(\"PowerShell\", [\"-enc\", \"AAAA\"]);\n", true},
        {"const { execSync } = require(\"child_process\");\nexecSync(\"cmd /c powershell -w hidden iex x\");\n", true},
        {"require(\"child_process\").exec(\"ls -la\");\n", false},
        {"console.log(\"powershell is a shell\");\n", false},
        {"// powershell.exe -enc AAAA\nmodule.exports = 1;\n", false},
    };
    pos = neg = 0;
    for (auto& [js, label] : shells) {
        (label ? pos : neg)++;
        auto got = with_rule(scan_js(js), "child-process-exec");
        bool high = std::any_of(got.begin(), got.end(), [](auto& f) { return f.severity == detect::Severity::High; });
        c.check(high == label, "powershell detector " + std::string(label ? "missed: " : "flagged: ") + js);
    }
    c.check(pos >= 3 && neg >= 3, "powershell: fewer than three cases per side");

    // Every located finding's span slices exactly its evidence.
    std::size_t located = 0;
    for (auto& f : corpus::all()) {
        auto a = corpus::load(f);
        auto r = service::analyze_artifact(a, quiet(corpus::scenario(f))).report;
        auto all = r.findings;
        all.insert(all.end(), r.contradictions.begin(), r.contradictions.end());
        for (auto& fd : all) {
            if (!fd.location)
                continue;
            ++located;
            auto* file = a.find(fd.location->path);
            if (!file) {
                c.check(false, f.label() + ": " + fd.id + " points at a missing file");
                continue;
            }
            auto& sp = fd.location->span;
            bool inRange = sp.end() <= file->bytes.size();
            c.check(inRange && file->bytes.substr(sp.offset, sp.length) == fd.evidence,
                    f.label() + ": slice(span) != evidence for " + fd.id);
        }
    }
    c.check(located > 0, "no located findings in the corpus");
}

// --- 8. performance ---------------------------------------------------------

void performance(Criterion& c)
{
    bool ci = std::getenv("CI") != nullptr;
    double budget = ci ? kFixtureBudgetSecondsCi : kFixtureBudgetSeconds;
    for (auto& f : corpus::all()) {
        auto t0 = std::chrono::steady_clock::now();
        auto a = corpus::load(f);
        service::analyze_artifact(a, quiet(corpus::scenario(f)));
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.check(secs < budget, f.label() + " took " + std::to_string(secs) + " s (limit " + std::to_string(budget) + " s)");
    }
}

// --- 9. CLI exit codes ------------------------------------------------------

struct CliRun {
    int exit = -1;
    std::string out;
};

std::string shell_quote(const std::string& s)
{
    std::string q = "'";
    for (char ch : s)
        q += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
    return q + "'";
}

CliRun run_cli(const std::vector<std::string>& args)
{
    std::string cmd = shell_quote(EXTSLEUTH_CLI);
    for (auto& a : args)
        cmd += " " + shell_quote(a);
    cmd += " 2>/dev/null";
    CliRun r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p)
        return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0)
        r.out.append(buf, n);
    int status = ::pclose(p);
    r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void cli_exit_codes(Criterion& c, const fs::path& scratch)
{
    ::unsetenv("EXTSLEUTH_STORE");
    ::unsetenv("EXTSLEUTH_MODEL");
    auto store = (scratch / "cli-store").string();
    auto level_code = [](const std::string& level) { return level == "High" ? 2 : level == "Medium" ? 1 : 0; };

    std::map<std::string, int> expected;
    for (auto& f : corpus::malicious())
        expected[f.label()] = 2;
    for (auto& f : corpus::benign())
        expected[f.label()] = 0;
    expected["timing/logic-bomb"] = 1;

    for (auto& f : corpus::all()) {
        auto packed = corpus::pack(f);
        auto path = scratch / packed.fileName;
        std::ofstream(path, std::ios::binary) << packed.bytes;
        std::vector<std::string> args = {"scan", path.string(), "--format", "json", "--store", store};
        if (fs::exists(f.scenario_file()))
            args.insert(args.end(), {"--scenario", f.scenario_file().string()});
        auto r = run_cli(args);
        if (auto it = expected.find(f.label()); it != expected.end())
            c.check(r.exit == it->second,
                    f.label() + ": exit " + std::to_string(r.exit) + ", expected " + std::to_string(it->second));
        try {
            auto j = nlohmann::json::parse(r.out);
            auto level = j.at("verdict").at("level").get<std::string>();
            c.check(level_code(level) == r.exit, f.label() + ": exit " + std::to_string(r.exit) + " but verdict " + level);
        } catch (const std::exception& e) {
            c.check(false, f.label() + ": stdout is not a report (" + e.what() + ")");
        }
    }

    auto missing = run_cli({"scan", (scratch / "does-not-exist.crx").string(), "--store", store});
    c.check(missing.exit == service::kExitAnalysisError, "missing path: exit " + std::to_string(missing.exit));

    testgen::Rng rng(0x9a5ba9e);
    auto garbage = scratch / "garbage.bin";
    std::ofstream(garbage, std::ios::binary) << rng.bytes(4096) + "not an archive";
    auto bad = run_cli({"scan", garbage.string(), "--store", store});
    c.check(bad.exit == service::kExitAnalysisError, "garbage input: exit " + std::to_string(bad.exit));
}

} // namespace

int main()
{
    Scratch scratch;
    const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria = {
        {"malicious-corpus-high-with-expected-findings", malicious_corpus},
        {"benign-corpus-not-high", benign_corpus},
        {"time-machine-fast-forward", time_machine},
        {"deterministic-replay", determinism},
        {"sandbox-containment", [&](Criterion& c) { containment(c, scratch.dir); }},
        {"scheduler-order-matches-replay-oracle", scheduler_oracle},
        {"static-detectors-match-oracles", static_oracles},
        {"per-fixture-analysis-time", performance},
        {"cli-exit-codes", [&](Criterion& c) { cli_exit_codes(c, scratch.dir); }},
    };
    int failed = 0;
    for (auto& [name, run] : criteria) {
        Criterion c(name);
        try {
            run(c);
        } catch (const std::exception& e) {
            c.check(false, std::string("uncaught exception: ") + e.what());
        }
        failed += !c.report();
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
    return failed ? 1 : 0;
}
