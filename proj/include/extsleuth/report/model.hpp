#pragma once

#include "extsleuth/report/verdict.hpp"

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace extsleuth::report {

/// Boundary to whatever language model writes the advisory narrative.
class ModelAdapter {
public:
    virtual ~ModelAdapter() = default;
    /// Throws std::runtime_error when the model cannot be reached.
    virtual std::string invoke(const std::string& prompt, int maxOutputTokens) = 0;
    virtual std::string descriptor() const = 0;
};

/// Deterministic stand-in: a fixed template whose risk level is picked by
/// the seed (0 Low, 1 Medium, 2 High, modulo 3).
std::string mock_model_response(const std::string& prompt, unsigned seed);

class MockAdapter : public ModelAdapter {
public:
    explicit MockAdapter(unsigned seed = 2)
        : seed_(seed)
    {
    }
    std::string invoke(const std::string& prompt, int maxOutputTokens) override;
    std::string descriptor() const override;

private:
    unsigned seed_;
};

/// Runs `argv` once per request: the prompt goes to stdin, stdout is the
/// response. A non-zero exit or a timeout is an error.
class StdioAdapter : public ModelAdapter {
public:
    explicit StdioAdapter(std::vector<std::string> argv, std::chrono::milliseconds timeout = std::chrono::minutes(5));
    std::string invoke(const std::string& prompt, int maxOutputTokens) override;
    std::string descriptor() const override;

private:
    std::vector<std::string> argv_;
    std::chrono::milliseconds timeout_;
};

/// POSTs {"prompt", "max_tokens"} as JSON to a local endpoint and accepts
/// either a JSON body with "text"/"response"/"content" or plain text.
class HttpAdapter : public ModelAdapter {
public:
    explicit HttpAdapter(std::string url, std::chrono::milliseconds timeout = std::chrono::minutes(5));
    std::string invoke(const std::string& prompt, int maxOutputTokens) override;
    std::string descriptor() const override;

private:
    std::string url_;
    std::chrono::milliseconds timeout_;
};

/// "mock[:seed]", "stdio:<command line>" or "http://host:port/path".
/// Throws std::invalid_argument for anything else.
std::unique_ptr<ModelAdapter> make_adapter(const std::string& spec);

struct ModelOutput {
    std::optional<RiskLevel> riskLevel; // nullopt = Unknown
    std::string narrative;
};

/// Last case-insensitive "risk level *[:-] *(high|medium|low)" wins.
ModelOutput parse_model_output(const std::string& text);

} // namespace extsleuth::report
