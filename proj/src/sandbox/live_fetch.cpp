#include "extsleuth/common/error.hpp"
#include "extsleuth/common/url.hpp"
#include "extsleuth/sandbox/network.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

namespace extsleuth::sandbox {

namespace {

constexpr int kLiveTimeoutSeconds = 10;

} // namespace

NetworkResponse live_fetch(const NetworkRequest& req)
{
    NetworkResponse out;
    ParsedUrl u;
    try {
        u = parse_url(req.url);
    } catch (const Error& e) {
        out.networkError = true;
        out.error = e.what();
        return out;
    }
    if (u.scheme != "http" && u.scheme != "https") {
        out.networkError = true;
        out.error = "unsupported scheme " + u.scheme;
        return out;
    }
    auto origin = u.scheme + "://" + (u.host.find(':') != std::string::npos ? "[" + u.host + "]" : u.host);
    if (u.port)
        origin += ":" + std::to_string(*u.port);
    httplib::Client cli(origin);
    cli.set_connection_timeout(kLiveTimeoutSeconds);
    cli.set_read_timeout(kLiveTimeoutSeconds);
    cli.set_follow_location(false);

    httplib::Result res;
    const auto& path = u.path;
    if (req.method == "GET")
        res = cli.Get(path);
    else if (req.method == "HEAD")
        res = cli.Head(path);
    else if (req.method == "DELETE")
        res = cli.Delete(path);
    else if (req.method == "PUT")
        res = cli.Put(path, req.body, "application/octet-stream");
    else if (req.method == "PATCH")
        res = cli.Patch(path, req.body, "application/octet-stream");
    else if (req.method == "POST")
        res = cli.Post(path, req.body, "application/octet-stream");
    else {
        out.networkError = true;
        out.error = "method " + req.method + " is not forwarded";
        return out;
    }
    if (!res) {
        out.networkError = true;
        out.error = httplib::to_string(res.error());
        return out;
    }
    out.status = res->status;
    out.body = res->body;
    return out;
}

} // namespace extsleuth::sandbox
