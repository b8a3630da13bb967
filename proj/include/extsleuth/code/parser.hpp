#pragma once

#include "extsleuth/code/ast.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace extsleuth::code {

inline constexpr std::size_t kMaxParseDepth = 1000;

struct ParseResult {
    std::unique_ptr<Ast> ast; // always non-null; root is null on failure
    bool ok = false;
    std::string error;
    Span errorAt;
};

/// Parses script or module source (import/export and top-level await are
/// accepted everywhere). Never throws for bad input; failures are reported
/// in the result.
ParseResult parse_js(std::string_view src);

} // namespace extsleuth::code
