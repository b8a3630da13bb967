#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace extsleuth {

enum class ErrorCode {
    UnknownArtifactKind,
    CorruptArchive,
    MissingManifest,
    MalformedManifest,
    MalformedSignatureDb,
    MalformedUrl,
    MalformedMatchPattern,
    BackwardJump,
    InterpreterInitFailure,
    SchemaVersionMismatch,
    InvalidScenario,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Base error for every failure that crosses a module boundary. Per-entry
/// problems (unsafe archive paths, unparsable sources) are reported as data
/// instead and never surface as an Error.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message)
        , code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace extsleuth
