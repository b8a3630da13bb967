#pragma once

#include "extsleuth/service/analysis_service.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace extsleuth::service {

struct HttpConfig {
    std::string host = "127.0.0.1";
    int port = 8765; // 0 picks a free port
    /// Required before binding anything other than a loopback address.
    bool allowRemote = false;
    /// Built dashboard assets, served under "/" when set.
    std::optional<std::filesystem::path> staticDir;
};

bool is_loopback_host(std::string_view host);

/// HTTP/1.1 front end for an AnalysisService:
///   POST /analyses                      upload (raw body or multipart "artifact" + "scenario")
///   GET  /analyses/{id}                 record, with the report once done
///   GET  /analyses/{id}/events          event log lines, chunked, live
///   POST /analyses/{id}/rerun           JSON scenario request
///   GET  /analyses/{id}/files/{path}    file bytes or a listing for "" and directories
///   GET  /health
class HttpServer {
public:
    /// Throws std::invalid_argument for a non-loopback host without
    /// allowRemote, std::runtime_error when the port cannot be bound.
    HttpServer(AnalysisService& service, HttpConfig config);
    ~HttpServer();

    int port() const;
    /// Serves until stop() is called from another thread.
    void run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace extsleuth::service
