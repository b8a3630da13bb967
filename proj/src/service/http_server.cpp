#include "extsleuth/service/http_server.hpp"
#include "extsleuth/common/error.hpp"
#include "extsleuth/report/report.hpp"

#include <httplib.h>

#include <atomic>
#include <stdexcept>

namespace extsleuth::service {

bool is_loopback_host(std::string_view host)
{
    return host == "localhost" || host == "::1" || host == "[::1]" || host.substr(0, 4) == "127.";
}

namespace {

using nlohmann::json;

void send_json(httplib::Response& res, int status, const json& body)
{
    res.status = status;
    res.set_content(body.dump(2) + "\n", "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message)
{
    send_json(res, status, json{{"error", message}});
}

json parse_request_json(const std::string& text)
{
    if (text.empty())
        return nullptr;
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidScenario, std::string("scenario is not JSON: ") + e.what());
    }
}

void send_submit(httplib::Response& res, const SubmitResult& r)
{
    send_json(res, 202, json{{"id", r.id}, {"cached", r.cached}, {"location", "/analyses/" + r.id}});
}

} // namespace

struct HttpServer::Impl {
    AnalysisService& service;
    HttpConfig config;
    httplib::Server srv;
    int port = 0;
    std::atomic<bool> stopping{false};

    Impl(AnalysisService& s, HttpConfig c)
        : service(s)
        , config(std::move(c))
    {
    }

    void routes();
    void submit(const httplib::Request& req, httplib::Response& res);
    void stream(const std::string& id, httplib::Response& res);
};

void HttpServer::Impl::submit(const httplib::Request& req, httplib::Response& res)
{
    std::string bytes, name, scenarioText;
    if (req.is_multipart_form_data()) {
        if (!req.has_file("artifact"))
            return send_error(res, 400, "multipart upload needs an 'artifact' part");
        auto part = req.get_file_value("artifact");
        bytes = std::move(part.content);
        name = part.filename;
        if (req.has_file("scenario"))
            scenarioText = req.get_file_value("scenario").content;
    } else {
        bytes = req.body;
        name = req.get_param_value("name");
        scenarioText = req.has_param("scenario") ? req.get_param_value("scenario") : req.get_header_value("X-Scenario");
    }
    try {
        send_submit(res, service.submit(bytes, name, parse_request_json(scenarioText)));
    } catch (const BadUpload& e) {
        send_error(res, 400, e.what());
    } catch (const Error& e) {
        send_error(res, e.code() == ErrorCode::InvalidScenario ? 422 : 500, e.what());
    }
}

void HttpServer::Impl::stream(const std::string& id, httplib::Response& res)
{
    auto log = service.events(id);
    if (!log)
        return send_error(res, 404, "unknown analysis " + id);
    res.set_chunked_content_provider("application/x-ndjson", [this, log, sent = std::size_t{0}](std::size_t, httplib::DataSink& sink) mutable {
        if (stopping)
            return false;
        log->wait_beyond(sent, 250);
        // Read `closed` before the events so a close racing with this read
        // cannot end the stream early.
        bool closed = log->closed();
        auto batch = log->since(sent);
        std::string chunk;
        for (auto& e : batch)
            chunk += sandbox::serialize_event(e) + "\n";
        sent += batch.size();
        if (!chunk.empty() && !sink.write(chunk.data(), chunk.size()))
            return false;
        if (closed && sent == log->size())
            sink.done();
        return sink.is_writable();
    });
}

void HttpServer::Impl::routes()
{
    srv.set_payload_max_length(256u << 20);

    srv.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, json{{"status", "ok"}, {"version", report::kToolVersion}, {"pending", service.pending()}});
    });

    srv.Post("/analyses", [this](const httplib::Request& req, httplib::Response& res) { submit(req, res); });

    srv.Get(R"(/analyses/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        auto rec = service.get(req.matches[1]);
        if (!rec)
            return send_error(res, 404, "unknown analysis");
        send_json(res, 200, record_to_json(*rec));
    });

    srv.Get(R"(/analyses/([^/]+)/events)",
            [this](const httplib::Request& req, httplib::Response& res) { stream(req.matches[1], res); });

    srv.Post(R"(/analyses/([^/]+)/rerun)", [this](const httplib::Request& req, httplib::Response& res) {
        try {
            auto r = service.rerun(req.matches[1], parse_request_json(req.body));
            if (!r)
                return send_error(res, 404, "unknown analysis");
            send_submit(res, *r);
        } catch (const Error& e) {
            send_error(res, e.code() == ErrorCode::InvalidScenario ? 422 : 500, e.what());
        }
    });

    srv.Get(R"(/analyses/([^/]+)/files(?:/(.*))?)", [this](const httplib::Request& req, httplib::Response& res) {
        auto found = service.file(req.matches[1], req.matches[2]);
        if (auto* f = std::get_if<FileBytes>(&found)) {
            res.set_header("X-File-Path", f->path);
            res.set_content(f->bytes, "application/octet-stream");
        } else if (auto* l = std::get_if<FileListing>(&found)) {
            send_json(res, 200, json{{"prefix", l->prefix}, {"paths", l->paths}});
        } else {
            send_error(res, 404, "no such file");
        }
    });

    if (config.staticDir && !srv.set_mount_point("/", config.staticDir->string()))
        throw std::invalid_argument("static directory " + config.staticDir->string() + " does not exist");
}

HttpServer::HttpServer(AnalysisService& service, HttpConfig config)
    : impl_(std::make_unique<Impl>(service, std::move(config)))
{
    auto& c = impl_->config;
    if (!c.allowRemote && !is_loopback_host(c.host))
        throw std::invalid_argument("refusing to listen on non-loopback address " + c.host + " without explicit permission");
    impl_->routes();
    if (c.port == 0)
        impl_->port = impl_->srv.bind_to_any_port(c.host);
    else
        impl_->port = impl_->srv.bind_to_port(c.host, c.port) ? c.port : -1;
    if (impl_->port <= 0)
        throw std::runtime_error("cannot listen on " + c.host + ":" + std::to_string(c.port));
}

HttpServer::~HttpServer()
{
    stop();
}

int HttpServer::port() const
{
    return impl_->port;
}

void HttpServer::run()
{
    impl_->srv.listen_after_bind();
}

void HttpServer::stop()
{
    impl_->stopping = true;
    impl_->srv.stop();
}

} // namespace extsleuth::service
