#include "extsleuth/common/error.hpp"
#include "extsleuth/service/http_server.hpp"
#include "extsleuth/service/pipeline.hpp"

#include "fixture_corpus.hpp"
#include "random_source.hpp"

#include <gtest/gtest.h>
#include <httplib.h>

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

namespace fs = std::filesystem;
using namespace extsleuth;
using namespace extsleuth::service;
using nlohmann::json;

namespace {

constexpr std::int64_t kJune2 = 1748822400000; // 2025-06-02T00:00:00Z

struct TempDir {
    fs::path path;
    TempDir()
    {
        std::string tmpl = (fs::temp_directory_path() / "extsleuth-svc-XXXXXX").string();
        if (!mkdtemp(tmpl.data()))
            throw std::runtime_error("mkdtemp");
        path = tmpl;
    }
    ~TempDir()
    {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

corpus::Packed packed(const std::string& group, const std::string& name)
{
    return corpus::pack({group, name});
}

bool has_stage2(const std::vector<sandbox::SandboxEvent>& events)
{
    return std::any_of(events.begin(), events.end(),
                       [](auto& e) { return e.argsSummary.find("weather-widget-cdn.example/stage2") != std::string::npos; });
}

class Http : public ::testing::Test {
protected:
    void SetUp() override
    {
        ServiceConfig cfg;
        cfg.storeDir = dir.path / "store";
        cfg.workers = 2;
        cfg.model = std::make_shared<report::MockAdapter>();
        service = std::make_unique<AnalysisService>(cfg);
        HttpConfig h;
        h.port = 0;
        server = std::make_unique<HttpServer>(*service, h);
        thread = std::thread([this] { server->run(); });
        client = std::make_unique<httplib::Client>("127.0.0.1", server->port());
        client->set_read_timeout(30, 0);
    }

    void TearDown() override
    {
        server->stop();
        thread.join();
    }

    json post_raw(const corpus::Packed& p, const std::string& query = "", int expect = 202)
    {
        auto res = client->Post("/analyses?name=" + p.fileName + query, p.bytes, "application/octet-stream");
        EXPECT_TRUE(res);
        if (!res)
            return nullptr;
        EXPECT_EQ(res->status, expect) << res->body;
        return json::parse(res->body);
    }

    json wait_done(const std::string& id)
    {
        auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(60);
        while (std::chrono::steady_clock::now() < deadline) {
            auto res = client->Get("/analyses/" + id);
            if (!res || res->status != 200)
                return nullptr;
            auto j = json::parse(res->body);
            if (j["state"] == "done" || j["state"] == "failed")
                return j;
            std::this_thread::sleep_for(std::chrono::milliseconds(20));
        }
        ADD_FAILURE() << "analysis " << id << " did not finish";
        return nullptr;
    }

    std::vector<sandbox::SandboxEvent> stream(const std::string& id)
    {
        auto res = client->Get("/analyses/" + id + "/events");
        EXPECT_TRUE(res);
        if (!res)
            return {};
        EXPECT_EQ(res->status, 200);
        EXPECT_EQ(res->get_header_value("Content-Type"), "application/x-ndjson");
        return sandbox::parse_events(res->body);
    }

    TempDir dir;
    std::unique_ptr<AnalysisService> service;
    std::unique_ptr<HttpServer> server;
    std::thread thread;
    std::unique_ptr<httplib::Client> client;
};

TEST_F(Http, HealthReportsVersionAndQueue)
{
    auto res = client->Get("/health");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    auto j = json::parse(res->body);
    EXPECT_EQ(j["status"], "ok");
    EXPECT_EQ(j["version"], std::string(report::kToolVersion));
    EXPECT_EQ(j["pending"], 0);
}

TEST_F(Http, UploadRunsToAHighVerdict)
{
    auto sub = post_raw(packed("malicious", "cookie-stealer"));
    ASSERT_TRUE(sub.is_object());
    EXPECT_FALSE(sub["cached"].get<bool>());
    EXPECT_EQ(sub["location"], "/analyses/" + sub["id"].get<std::string>());

    auto rec = wait_done(sub["id"]);
    ASSERT_EQ(rec["state"], "done") << rec.dump();
    EXPECT_EQ(rec["report"]["verdict"]["level"], "High");
    EXPECT_TRUE(rec["report"].contains("llm"));
    EXPECT_EQ(rec["digest"], rec["report"]["artifact"]["digest"]);

    // Reads do not change anything.
    auto again = client->Get("/analyses/" + sub["id"].get<std::string>());
    ASSERT_TRUE(again);
    EXPECT_EQ(json::parse(again->body), rec);
}

TEST_F(Http, DuplicateUploadReturnsTheSameAnalysis)
{
    auto p = packed("benign", "word-count");
    auto first = post_raw(p);
    auto second = post_raw(p);
    EXPECT_EQ(first["id"], second["id"]);
    EXPECT_TRUE(second["cached"].get<bool>());
    // Skipping the model is a different analysis.
    auto third = post_raw(p, "&scenario=" + httplib::detail::encode_url(R"({"skipLlm":true})"));
    EXPECT_NE(third["id"], first["id"]);
    auto rec = wait_done(third["id"]);
    EXPECT_FALSE(rec["report"].contains("llm"));
    EXPECT_TRUE(rec["skipLlm"].get<bool>());
}

TEST_F(Http, MultipartUploadCarriesAScenario)
{
    auto p = packed("timing", "logic-bomb");
    httplib::MultipartFormDataItems items = {
        {"artifact", p.bytes, p.fileName, "application/octet-stream"},
        {"scenario", json{{"virtualStartDate", kJune2}}.dump(), "", "application/json"},
    };
    auto res = client->Post("/analyses", items);
    ASSERT_TRUE(res);
    ASSERT_EQ(res->status, 202) << res->body;
    auto id = json::parse(res->body)["id"].get<std::string>();
    auto rec = wait_done(id);
    ASSERT_EQ(rec["state"], "done");
    EXPECT_EQ(rec["report"]["scenario"]["virtualStartDate"], kJune2);
    EXPECT_TRUE(has_stage2(stream(id)));
}

TEST_F(Http, RejectsBadUploadsAndScenarios)
{
    testgen::Rng rng(7);
    auto garbage = client->Post("/analyses?name=x.crx", rng.bytes(2048) + "zz", "application/octet-stream");
    ASSERT_TRUE(garbage);
    EXPECT_EQ(garbage->status, 400);
    EXPECT_TRUE(json::parse(garbage->body).contains("error"));

    auto empty = client->Post("/analyses", "", "application/octet-stream");
    ASSERT_TRUE(empty);
    EXPECT_EQ(empty->status, 400);

    httplib::MultipartFormDataItems noArtifact = {{"other", "x", "x.bin", "application/octet-stream"}};
    auto missing = client->Post("/analyses", noArtifact);
    ASSERT_TRUE(missing);
    EXPECT_EQ(missing->status, 400);

    auto p = packed("benign", "word-count");
    for (std::string bad : {R"({"networkPolicy":"teleport"})", R"({"bogusField":1})", R"({"skipLlm":"yes"})",
                            R"([1,2])", R"({not json)"}) {
        httplib::Headers h = {{"X-Scenario", bad}};
        auto res = client->Post("/analyses?name=" + p.fileName, h, p.bytes, "application/octet-stream");
        ASSERT_TRUE(res);
        EXPECT_EQ(res->status, 422) << bad;
    }
    EXPECT_EQ(service->pending(), 0u);
}

TEST_F(Http, UnknownIdsAre404)
{
    for (std::string path : {"/analyses/nope", "/analyses/nope/events", "/analyses/nope/files/manifest.json"}) {
        auto res = client->Get(path);
        ASSERT_TRUE(res);
        EXPECT_EQ(res->status, 404) << path;
    }
    auto res = client->Post("/analyses/nope/rerun", "{}", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 404);
}

TEST_F(Http, EventStreamMatchesTheLog)
{
    auto sub = post_raw(packed("timing", "minute-chain"));
    std::string id = sub["id"];
    // Started while the analysis may still be running; must end on its own.
    auto live = stream(id);
    auto rec = wait_done(id);
    ASSERT_EQ(rec["state"], "done");
    auto log = service->events(id)->snapshot();
    EXPECT_EQ(live, log);
    EXPECT_EQ(stream(id), log);
    ASSERT_FALSE(log.empty());
    for (std::size_t i = 1; i < live.size(); ++i)
        EXPECT_LT(live[i - 1].seq, live[i].seq);
    EXPECT_EQ(rec["report"]["dynamic"]["eventCount"], log.size());
}

TEST_F(Http, RerunAppliesTheScenarioOnTopOfTheParent)
{
    auto sub = post_raw(packed("timing", "logic-bomb"));
    std::string parent = sub["id"];
    ASSERT_EQ(wait_done(parent)["state"], "done");
    EXPECT_FALSE(has_stage2(stream(parent)));

    auto body = json{{"virtualStartDate", kJune2}}.dump();
    auto res = client->Post("/analyses/" + parent + "/rerun", body, "application/json");
    ASSERT_TRUE(res);
    ASSERT_EQ(res->status, 202) << res->body;
    std::string child = json::parse(res->body)["id"];
    EXPECT_NE(child, parent);
    auto rec = wait_done(child);
    ASSERT_EQ(rec["state"], "done");
    EXPECT_EQ(rec["parentId"], parent);
    EXPECT_EQ(rec["digest"], json::parse(client->Get("/analyses/" + parent)->body)["digest"]);
    EXPECT_TRUE(has_stage2(stream(child)));
    // Untouched fields come from the parent.
    EXPECT_EQ(rec["report"]["scenario"]["navigations"].size(), 2u);

    auto same = client->Post("/analyses/" + parent + "/rerun", body, "application/json");
    ASSERT_TRUE(same);
    EXPECT_EQ(json::parse(same->body)["id"], child);
    EXPECT_TRUE(json::parse(same->body)["cached"].get<bool>());

    auto bad = client->Post("/analyses/" + parent + "/rerun", R"({"maxTasks":"many"})", "application/json");
    ASSERT_TRUE(bad);
    EXPECT_EQ(bad->status, 422);
}

TEST_F(Http, RerunOfStealerWithBlockedNetworkStillFlagsIt)
{
    auto sub = post_raw(packed("malicious", "cookie-stealer"));
    std::string parent = sub["id"];
    ASSERT_EQ(wait_done(parent)["state"], "done");
    auto res = client->Post("/analyses/" + parent + "/rerun", R"({"networkPolicy":"block","skipLlm":true})",
                            "application/json");
    ASSERT_TRUE(res);
    ASSERT_EQ(res->status, 202);
    auto rec = wait_done(json::parse(res->body)["id"]);
    ASSERT_EQ(rec["state"], "done");
    EXPECT_EQ(rec["report"]["scenario"]["networkPolicy"], "block");
    EXPECT_EQ(rec["report"]["verdict"]["level"], "High");
    auto events = stream(rec["id"]);
    EXPECT_TRUE(std::any_of(events.begin(), events.end(), [](auto& e) { return e.blocked; }));
}

TEST_F(Http, FilesServeBytesAndListings)
{
    corpus::Fixture f{"malicious", "vsix-powershell"};
    auto sub = post_raw(corpus::pack(f));
    std::string id = sub["id"];
    auto artifact = corpus::load(f);

    auto one = client->Get("/analyses/" + id + "/files/extension/package.json");
    ASSERT_TRUE(one);
    ASSERT_EQ(one->status, 200);
    EXPECT_EQ(one->body, artifact.find("extension/package.json")->bytes);
    EXPECT_EQ(one->get_header_value("X-File-Path"), "extension/package.json");

    auto all = client->Get("/analyses/" + id + "/files");
    ASSERT_TRUE(all);
    ASSERT_EQ(all->status, 200);
    auto listing = json::parse(all->body);
    std::vector<std::string> paths = listing["paths"];
    EXPECT_TRUE(std::is_sorted(paths.begin(), paths.end()));
    EXPECT_EQ(paths.size(), artifact.files.size());

    auto sub_dir = json::parse(client->Get("/analyses/" + id + "/files/extension")->body);
    EXPECT_EQ(sub_dir["prefix"], "extension/");
    for (auto& p : sub_dir["paths"])
        EXPECT_EQ(p.get<std::string>().rfind("extension/", 0), 0u);

    for (std::string bad : {"/files/../etc/passwd", "/files/extension/../../x", "/files/no-such-file"}) {
        auto res = client->Get("/analyses/" + id + bad);
        ASSERT_TRUE(res);
        EXPECT_EQ(res->status, 404) << bad;
    }
}

TEST(HttpBinding, RemoteAddressesNeedExplicitPermission)
{
    TempDir dir;
    ServiceConfig cfg;
    cfg.storeDir = dir.path;
    cfg.workers = 1;
    AnalysisService svc(cfg);
    HttpConfig h;
    h.port = 0;
    h.host = "0.0.0.0";
    EXPECT_THROW(HttpServer(svc, h), std::invalid_argument);
    h.host = "192.168.1.20";
    EXPECT_THROW(HttpServer(svc, h), std::invalid_argument);

    EXPECT_TRUE(is_loopback_host("127.0.0.1"));
    EXPECT_TRUE(is_loopback_host("localhost"));
    EXPECT_TRUE(is_loopback_host("::1"));
    EXPECT_FALSE(is_loopback_host("0.0.0.0"));
    EXPECT_FALSE(is_loopback_host("10.0.0.1"));
}

TEST(Service, ScenarioRequestOverlaysTheBase)
{
    auto base = sandbox::ScenarioConfig::defaults();
    auto req = parse_scenario_request(json{{"clipboardText", "hi"}}, base);
    EXPECT_EQ(req.scenario.clipboardText, "hi");
    EXPECT_EQ(req.scenario.virtualStartDate, base.virtualStartDate);
    EXPECT_FALSE(req.skipLlm);
    EXPECT_EQ(parse_scenario_request(nullptr, base).scenario.virtualStartDate, base.virtualStartDate);
    EXPECT_THROW(parse_scenario_request(json::array(), base), Error);
}

TEST(Service, ShutdownClosesQueuedLogs)
{
    TempDir dir;
    std::shared_ptr<const sandbox::EventLog> log;
    {
        ServiceConfig cfg;
        cfg.storeDir = dir.path;
        cfg.workers = 1;
        AnalysisService svc(cfg);
        std::vector<std::string> ids;
        for (auto& f : corpus::all())
            ids.push_back(svc.submit(corpus::pack(f).bytes, corpus::pack(f).fileName, nullptr).id);
        log = svc.events(ids.back());
    }
    EXPECT_TRUE(log->closed());
}

// --- CLI ---------------------------------------------------------------------

struct CliRun {
    int exit = -1;
    std::string out;
};

CliRun cli(const std::string& args, const std::string& env = "")
{
    std::string cmd = env + (env.empty() ? "" : " ") + "'" EXTSLEUTH_CLI "' " + args + " 2>/dev/null";
    CliRun r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p)
        return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0)
        r.out.append(buf, n);
    int st = ::pclose(p);
    r.exit = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string dir_of(const std::string& group, const std::string& name)
{
    return "'" + corpus::Fixture{group, name}.dir().string() + "'";
}

TEST(Cli, TextOutputForAStealer)
{
    auto r = cli("scan " + dir_of("malicious", "cookie-stealer"), "env -u EXTSLEUTH_STORE -u EXTSLEUTH_MODEL");
    EXPECT_EQ(r.exit, 2);
    EXPECT_NE(r.out.find("Verdict: High"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("cookie"), std::string::npos);
}

TEST(Cli, StoreFromEnvironmentCachesReports)
{
    TempDir dir;
    auto store = (dir.path / "s").string();
    auto env = "env -u EXTSLEUTH_MODEL EXTSLEUTH_STORE='" + store + "'";
    auto first = cli("scan --format json " + dir_of("benign", "tab-counter"), env);
    ASSERT_EQ(first.exit, 0);
    EXPECT_TRUE(fs::exists(store));
    auto second = cli("scan --format json " + dir_of("benign", "tab-counter"), env);
    ASSERT_EQ(second.exit, 0);
    EXPECT_EQ(json::parse(first.out)["verdict"], json::parse(second.out)["verdict"]);
}

TEST(Cli, BatchScanTakesTheWorstExitCode)
{
    auto r = cli("scan --format json -j 2 " + dir_of("benign", "word-count") + " " + dir_of("timing", "logic-bomb"),
                 "env -u EXTSLEUTH_STORE -u EXTSLEUTH_MODEL");
    EXPECT_EQ(r.exit, 1);
    auto j = json::parse(r.out);
    ASSERT_TRUE(j.is_array());
    ASSERT_EQ(j.size(), 2u);
    EXPECT_EQ(j[0]["report"]["verdict"]["level"], "Low");
    EXPECT_EQ(j[1]["report"]["verdict"]["level"], "Medium");
}

TEST(Cli, PackedArchiveScansLikeItsDirectory)
{
    TempDir dir;
    auto out = (dir.path / "npm.tgz").string();
    ASSERT_EQ(cli("pack " + dir_of("malicious", "npm-zerowidth") + " -o '" + out + "'").exit, 0);
    auto env = "env -u EXTSLEUTH_STORE -u EXTSLEUTH_MODEL";
    auto fromDir = json::parse(cli("scan --format json " + dir_of("malicious", "npm-zerowidth"), env).out);
    auto fromTgz = json::parse(cli("scan --format json '" + out + "'", env).out);
    EXPECT_EQ(fromDir["artifact"]["digest"], fromTgz["artifact"]["digest"]);
    EXPECT_EQ(fromDir["findings"], fromTgz["findings"]);
}

TEST(Cli, ApproveMarksTheVerdictButKeepsTheLevel)
{
    TempDir dir;
    auto env = "env -u EXTSLEUTH_STORE -u EXTSLEUTH_MODEL";
    auto store = " --store '" + (dir.path / "s").string() + "'";
    ASSERT_EQ(cli("approve " + dir_of("malicious", "clipboard-webhook") + store, env).exit, 0);
    auto r = cli("scan --format json " + dir_of("malicious", "clipboard-webhook") + store, env);
    EXPECT_EQ(r.exit, 2);
    auto j = json::parse(r.out);
    EXPECT_TRUE(j["verdict"].value("approved", false));
    EXPECT_EQ(j["verdict"]["level"], "High");
}

TEST(Cli, UsageErrorsExitWithThree)
{
    EXPECT_EQ(cli("scan").exit, 3);
    EXPECT_EQ(cli("scan --format yaml x").exit, 3);
    EXPECT_EQ(cli("--help").exit, 0);
}

} // namespace
