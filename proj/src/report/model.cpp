#include "extsleuth/report/model.hpp"
#include "extsleuth/common/error.hpp"
#include "extsleuth/common/hash.hpp"
#include "extsleuth/common/text.hpp"
#include "extsleuth/common/url.hpp"

#include <httplib.h>
#include <json.hpp>

#include <boost/regex.hpp>

#include <algorithm>
#include <cerrno>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <stdexcept>
#include <sys/wait.h>
#include <unistd.h>

extern char** environ;

namespace extsleuth::report {

std::string mock_model_response(const std::string& prompt, unsigned seed)
{
    static constexpr RiskLevel kLevels[] = {RiskLevel::Low, RiskLevel::Medium, RiskLevel::High};
    auto level = kLevels[seed % 3];
    auto lines = std::count(prompt.begin(), prompt.end(), '\n');
    std::string out = "Summary: reviewed " + std::to_string(prompt.size()) + " characters of context in " +
                      std::to_string(lines) + " lines (digest " + sha256_hex(prompt).substr(0, 12) + ").\n";
    out += "Assessment: this is a fixed mock response used for testing; it does not analyze the input.\n";
    out += "Privacy: no opinion.\n";
    out += "Risk level: " + std::string(to_string(level)) + ".\n";
    return out;
}

std::string MockAdapter::invoke(const std::string& prompt, int)
{
    return mock_model_response(prompt, seed_);
}

std::string MockAdapter::descriptor() const
{
    return "mock:" + std::to_string(seed_);
}

// ---- stdio

StdioAdapter::StdioAdapter(std::vector<std::string> argv, std::chrono::milliseconds timeout)
    : argv_(std::move(argv))
    , timeout_(timeout)
{
    if (argv_.empty())
        throw std::invalid_argument("stdio adapter needs a command");
}

std::string StdioAdapter::descriptor() const
{
    std::string s = "stdio:";
    for (std::size_t i = 0; i < argv_.size(); ++i)
        s += (i ? " " : "") + argv_[i];
    return s;
}

namespace {

struct Fd {
    int fd = -1;
    ~Fd() { reset(); }
    void reset()
    {
        if (fd >= 0)
            ::close(fd);
        fd = -1;
    }
};

} // namespace

std::string StdioAdapter::invoke(const std::string& prompt, int)
{
    int in[2], out[2];
    if (::pipe2(in, O_CLOEXEC) != 0)
        throw std::runtime_error(std::string("pipe: ") + std::strerror(errno));
    if (::pipe2(out, O_CLOEXEC) != 0) {
        ::close(in[0]);
        ::close(in[1]);
        throw std::runtime_error(std::string("pipe: ") + std::strerror(errno));
    }
    Fd inR{in[0]}, inW{in[1]}, outR{out[0]}, outW{out[1]};

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, inR.fd, STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, outW.fd, STDOUT_FILENO);
    std::vector<char*> args;
    for (auto& a : argv_)
        args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    pid_t pid = 0;
    int rc = ::posix_spawnp(&pid, args[0], &actions, nullptr, args.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0)
        throw std::runtime_error("cannot start model command " + argv_[0] + ": " + std::strerror(rc));
    inR.reset();
    outW.reset();

    // Feed stdin and drain stdout together so a chatty child cannot deadlock.
    ::fcntl(inW.fd, F_SETFL, O_NONBLOCK);
    std::size_t written = 0;
    std::string response;
    auto deadline = std::chrono::steady_clock::now() + timeout_;
    auto old = std::signal(SIGPIPE, SIG_IGN);
    bool timedOut = false;
    while (outR.fd >= 0) {
        if (written >= prompt.size())
            inW.reset();
        pollfd fds[2];
        int n = 0;
        fds[n++] = {outR.fd, POLLIN, 0};
        if (inW.fd >= 0)
            fds[n++] = {inW.fd, POLLOUT, 0};
        auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now()).count();
        if (left <= 0) {
            timedOut = true;
            break;
        }
        if (::poll(fds, n, static_cast<int>(std::min<long long>(left, 1000))) < 0 && errno != EINTR)
            break;
        if (n > 1 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
            auto w = ::write(inW.fd, prompt.data() + written, prompt.size() - written);
            if (w > 0)
                written += static_cast<std::size_t>(w);
            else if (w < 0 && errno != EAGAIN)
                written = prompt.size();
        }
        if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
            char buf[4096];
            auto r = ::read(outR.fd, buf, sizeof buf);
            if (r > 0)
                response.append(buf, static_cast<std::size_t>(r));
            else if (r == 0 || errno != EINTR)
                outR.reset();
        }
    }
    std::signal(SIGPIPE, old);
    inW.reset();
    if (timedOut)
        ::kill(pid, SIGKILL);
    int status = 0;
    ::waitpid(pid, &status, 0);
    if (timedOut)
        throw std::runtime_error("model command timed out");
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
        throw std::runtime_error("model command failed with status " + std::to_string(status));
    return response;
}

// ---- http

HttpAdapter::HttpAdapter(std::string url, std::chrono::milliseconds timeout)
    : url_(std::move(url))
    , timeout_(timeout)
{
}

std::string HttpAdapter::descriptor() const
{
    return url_;
}

std::string HttpAdapter::invoke(const std::string& prompt, int maxOutputTokens)
{
    ParsedUrl u;
    try {
        u = parse_url(url_);
    } catch (const Error& e) {
        throw std::runtime_error(e.what());
    }
    if (u.scheme != "http")
        throw std::runtime_error("model endpoint must be plain http on a local host");
    httplib::Client cli(u.host, u.port.value_or(80));
    auto secs = static_cast<time_t>(std::max<long long>(1, timeout_.count() / 1000));
    cli.set_read_timeout(secs);
    cli.set_write_timeout(secs);
    nlohmann::json body = {{"prompt", prompt}, {"max_tokens", maxOutputTokens}};
    auto res = cli.Post(u.path, body.dump(), "application/json");
    if (!res)
        throw std::runtime_error("model endpoint unreachable: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw std::runtime_error("model endpoint answered " + std::to_string(res->status));
    auto j = nlohmann::json::parse(res->body, nullptr, false);
    if (j.is_object())
        for (const char* key : {"text", "response", "content"})
            if (auto it = j.find(key); it != j.end() && it->is_string())
                return it->get<std::string>();
    return res->body;
}

std::unique_ptr<ModelAdapter> make_adapter(const std::string& spec)
{
    if (spec == "mock")
        return std::make_unique<MockAdapter>();
    if (text::starts_with(spec, "mock:"))
        return std::make_unique<MockAdapter>(static_cast<unsigned>(std::stoul(spec.substr(5))));
    if (text::starts_with(spec, "stdio:")) {
        std::vector<std::string> argv;
        for (auto& a : text::split(spec.substr(6), ' '))
            if (!a.empty())
                argv.push_back(a);
        return std::make_unique<StdioAdapter>(argv);
    }
    if (text::starts_with(spec, "http://"))
        return std::make_unique<HttpAdapter>(spec);
    throw std::invalid_argument("unknown model adapter '" + spec + "'");
}

ModelOutput parse_model_output(const std::string& text)
{
    static const boost::regex re("risk level *[:\\-] *(high|medium|low)", boost::regex::icase);
    ModelOutput out;
    out.narrative = text;
    for (boost::sregex_iterator it(text.begin(), text.end(), re), end; it != end; ++it) {
        auto word = text::to_lower((*it)[1].str());
        out.riskLevel = word == "high" ? RiskLevel::High : word == "medium" ? RiskLevel::Medium : RiskLevel::Low;
    }
    return out;
}

} // namespace extsleuth::report
