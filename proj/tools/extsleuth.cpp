#include "extsleuth/common/error.hpp"
#include "extsleuth/detect/urls.hpp"
#include "extsleuth/ingest/manifest.hpp"
#include "extsleuth/report/store.hpp"
#include "extsleuth/service/analysis_service.hpp"
#include "extsleuth/service/http_server.hpp"
#include "extsleuth/service/pipeline.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using namespace extsleuth;

namespace {

struct CommonOptions {
    std::string signatures;
    std::string allowlist;
    std::string store;
    std::string model;

    void add(CLI::App* cmd)
    {
        cmd->add_option("--signatures", signatures, "Vulnerable-library signature database (JSON)");
        cmd->add_option("--allowlist", allowlist, "Extra known-benign host suffixes, one per line");
        cmd->add_option("--store", store, "Report cache directory (EXTSLEUTH_STORE overrides)");
        cmd->add_option("--model", model, "Model adapter: mock[:seed], stdio:<command>, http://host:port/path (default: $EXTSLEUTH_MODEL)");
    }

    std::string store_dir() const
    {
        if (const char* env = std::getenv("EXTSLEUTH_STORE"); env && *env)
            return env;
        return store;
    }

    std::string model_spec() const
    {
        if (!model.empty())
            return model;
        const char* env = std::getenv("EXTSLEUTH_MODEL");
        return env ? env : "";
    }

    detect::StaticConfig static_config() const
    {
        detect::StaticConfig c;
        if (!allowlist.empty()) {
            auto extra = detect::load_host_list(allowlist);
            c.lists.allowlist.insert(c.lists.allowlist.end(), extra.begin(), extra.end());
        }
        return c;
    }
};

std::optional<ingest::ArtifactKind> kind_from_flag(const std::string& k)
{
    if (k == "crx")
        return ingest::ArtifactKind::ChromeExtension;
    if (k == "vsix")
        return ingest::ArtifactKind::VscodeExtension;
    if (k == "npm")
        return ingest::ArtifactKind::NpmPackage;
    return std::nullopt;
}

ingest::ExtensionArtifact load_artifact(const fs::path& p, std::optional<ingest::ArtifactKind> kind)
{
    if (fs::is_directory(p))
        return ingest::ingest_directory(p, kind).artifact;
    auto bytes = report::read_file(p);
    if (!bytes || !fs::is_regular_file(p))
        throw Error(ErrorCode::Io, "cannot read " + p.string());
    return ingest::ingest_bytes(*bytes, p.filename().string(), kind).artifact;
}

struct ScanResult {
    std::string path;
    std::optional<service::AnalysisOutput> out;
    std::string error;
};

int cmd_scan(const std::vector<std::string>& paths, const std::string& kindFlag, const std::string& scenarioFile, bool noLlm,
             bool noDynamic, const std::string& net, const std::string& outFile, const std::string& format, unsigned jobs,
             const CommonOptions& common)
{
    service::PipelineOptions o;
    std::optional<detect::SignatureDb> db;
    std::optional<report::ReportStore> store;
    try {
        if (!scenarioFile.empty()) {
            auto text = report::read_file(scenarioFile);
            if (!text)
                throw Error(ErrorCode::Io, "cannot read scenario " + scenarioFile);
            o.scenario = sandbox::parse_scenario(*text);
        }
        if (!net.empty()) {
            o.scenario.networkPolicy = *sandbox::parse_network_policy(net);
            // Asking for record on the command line is the explicit opt-in.
            o.sandbox.allowLiveNetwork = o.scenario.networkPolicy == sandbox::NetworkPolicy::Record;
        }
        o.runDynamic = !noDynamic;
        if (!noLlm && !common.model_spec().empty())
            o.model = report::make_adapter(common.model_spec());
        o.staticConfig = common.static_config();
        if (!common.signatures.empty()) {
            db = detect::load_signature_db(common.signatures);
            o.signatures = &*db;
        }
        if (auto dir = common.store_dir(); !dir.empty()) {
            store.emplace(dir);
            o.store = &*store;
        }
    } catch (const std::exception& e) {
        std::cerr << "extsleuth: " << e.what() << "\n";
        return service::kExitAnalysisError;
    }

    std::vector<ScanResult> results(paths.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < paths.size();) {
            results[i].path = paths[i];
            try {
                auto artifact = load_artifact(paths[i], kind_from_flag(kindFlag));
                results[i].out = service::analyze_artifact(artifact, o);
            } catch (const std::exception& e) {
                results[i].error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::min<std::size_t>(std::max(1u, jobs), paths.size()); ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    int code = 0;
    std::string output;
    nlohmann::json batch = nlohmann::json::array();
    for (auto& r : results) {
        if (!r.out) {
            std::cerr << "extsleuth: " << r.path << ": " << r.error << "\n";
            code = service::kExitAnalysisError;
            if (paths.size() > 1)
                batch.push_back({{"path", r.path}, {"error", r.error}});
            continue;
        }
        if (code != service::kExitAnalysisError)
            code = std::max(code, service::exit_code_for(r.out->report.verdict.level));
        if (format == "json") {
            if (paths.size() == 1)
                output = report::serialize_report(r.out->report);
            else
                batch.push_back({{"path", r.path}, {"report", report::report_to_json(r.out->report)}});
        } else {
            if (paths.size() > 1)
                output += "== " + r.path + "\n";
            output += service::format_text(r.out->report, r.out->events);
            if (r.out->report.llm && !r.out->report.llm->narrative.empty())
                output += "\n" + r.out->report.llm->narrative + (r.out->report.llm->narrative.back() == '\n' ? "" : "\n");
        }
    }
    if (format == "json" && paths.size() > 1)
        output = batch.dump(2) + "\n";

    if (outFile.empty()) {
        std::cout << output;
    } else {
        try {
            report::atomic_write(outFile, output);
        } catch (const std::exception& e) {
            std::cerr << "extsleuth: " << e.what() << "\n";
            return service::kExitAnalysisError;
        }
    }
    return code;
}

int cmd_serve(const service::HttpConfig& http, unsigned workers, bool allowLive, const CommonOptions& common)
{
    // Signals are taken by a dedicated thread so that stopping the server
    // happens outside signal context.
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);

    try {
        service::ServiceConfig cfg;
        if (auto dir = common.store_dir(); !dir.empty())
            cfg.storeDir = dir;
        cfg.workers = workers;
        if (!common.model_spec().empty())
            cfg.model = report::make_adapter(common.model_spec());
        cfg.staticConfig = common.static_config();
        if (!common.signatures.empty())
            cfg.signatures = detect::load_signature_db(common.signatures);
        cfg.sandbox.allowLiveNetwork = allowLive;

        service::AnalysisService svc(cfg);
        service::HttpServer server(svc, http);
        std::thread sig([&] {
            int s = 0;
            sigwait(&set, &s);
            server.stop();
        });
        std::cerr << fmt::format("extsleuth: listening on http://{}:{} (store {})\n", http.host, server.port(), cfg.storeDir.string());
        server.run();
        pthread_kill(sig.native_handle(), SIGTERM);
        sig.join();
    } catch (const std::exception& e) {
        std::cerr << "extsleuth: " << e.what() << "\n";
        return service::kExitAnalysisError;
    }
    return 0;
}

int cmd_pack(const std::string& dir, const std::string& kindFlag, const std::string& out)
{
    try {
        auto files = ingest::read_directory(dir);
        auto kind = kind_from_flag(kindFlag).value_or(ingest::detect_directory_kind(files));
        report::atomic_write(out, ingest::pack_artifact(files, kind));
        std::cerr << fmt::format("extsleuth: wrote {} ({}, {} files)\n", out, ingest::to_string(kind), files.size());
    } catch (const std::exception& e) {
        std::cerr << "extsleuth: " << e.what() << "\n";
        return service::kExitAnalysisError;
    }
    return 0;
}

int cmd_approve(const std::string& target, const std::string& kindFlag, const CommonOptions& common)
{
    try {
        auto dir = common.store_dir();
        if (dir.empty())
            throw std::invalid_argument("approve needs --store or EXTSLEUTH_STORE");
        std::string digest = target;
        if (fs::exists(target))
            digest = load_artifact(target, kind_from_flag(kindFlag)).digest;
        report::ReportStore(dir).approve(digest);
        std::cout << digest << "\n";
    } catch (const std::exception& e) {
        std::cerr << "extsleuth: " << e.what() << "\n";
        return service::kExitAnalysisError;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Static and sandboxed dynamic analysis of browser extensions, VS Code extensions and npm packages"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(report::kToolVersion));

    CommonOptions common;
    std::string kind = "auto";
    const std::vector<std::string> kinds = {"auto", "crx", "vsix", "npm"};

    auto* scan = app.add_subcommand("scan", "Analyze one or more artifacts (archives or unpacked directories)");
    std::vector<std::string> paths;
    std::string scenario, net, out, format = "text";
    bool noLlm = false, noDynamic = false;
    unsigned jobs = std::max(1u, std::min(4u, std::thread::hardware_concurrency()));
    scan->add_option("paths", paths, "Artifacts to analyze")->required();
    scan->add_option("--kind", kind, "Artifact kind")->check(CLI::IsMember(kinds));
    scan->add_option("--scenario", scenario, "Scenario JSON file");
    scan->add_flag("--no-llm", noLlm, "Skip the model narrative");
    scan->add_flag("--no-dynamic", noDynamic, "Skip sandbox execution");
    scan->add_option("--net", net, "Network policy")->check(CLI::IsMember({"block", "stub", "record"}));
    scan->add_option("--out", out, "Write the report here instead of stdout");
    scan->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    scan->add_option("-j,--jobs", jobs, "Concurrent analyses in batch mode")->check(CLI::PositiveNumber);
    common.add(scan);

    auto* serve = app.add_subcommand("serve", "Run the local analysis service");
    service::HttpConfig http;
    unsigned workers = 2;
    bool allowLive = false;
    std::string staticDir;
    serve->add_option("--host", http.host, "Listen address");
    serve->add_option("--port", http.port, "Listen port (0 picks one)");
    serve->add_flag("--allow-remote", http.allowRemote, "Permit a non-loopback listen address");
    serve->add_option("--workers", workers, "Concurrent analyses")->check(CLI::PositiveNumber);
    serve->add_option("--static", staticDir, "Directory of dashboard assets to serve under /");
    serve->add_flag("--allow-live-network", allowLive, "Let scenarios with networkPolicy=record reach real hosts");
    common.add(serve);

    auto* pack = app.add_subcommand("pack", "Build a CRX, VSIX or npm tarball from a directory");
    std::string packDir, packOut;
    pack->add_option("dir", packDir, "Unpacked artifact")->required()->check(CLI::ExistingDirectory);
    pack->add_option("--kind", kind, "Artifact kind")->check(CLI::IsMember(kinds));
    pack->add_option("-o,--out", packOut, "Archive to write")->required();

    auto* approve = app.add_subcommand("approve", "Mark an artifact (path or digest) as analyst-approved");
    std::string approveTarget;
    approve->add_option("target", approveTarget, "Artifact path or digest")->required();
    approve->add_option("--kind", kind, "Artifact kind")->check(CLI::IsMember(kinds));
    common.add(approve);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : service::kExitAnalysisError;
    }

    if (*scan)
        return cmd_scan(paths, kind, scenario, noLlm, noDynamic, net, out, format, jobs, common);
    if (*serve) {
        if (!staticDir.empty())
            http.staticDir = staticDir;
        return cmd_serve(http, workers, allowLive, common);
    }
    if (*pack)
        return cmd_pack(packDir, kind, packOut);
    return cmd_approve(approveTarget, kind, common);
}
