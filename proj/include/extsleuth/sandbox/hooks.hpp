#pragma once

#include "extsleuth/sandbox/event.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace extsleuth::sandbox {

/// What the guest gets back from an emulated API.
enum class ReturnPolicy {
    Emulated,  // behaves like the real API against sandbox state
    Seeded,    // answers from scenario data (cookieJar, dummyStorage, clipboard)
    Inert,     // accepts the call, returns an empty/neutral value
};

/// Realm profiles an API is installed into.
enum Profile : unsigned {
    kChromeBackground = 1u << 0,
    kChromePage = 1u << 1,
    kVscode = 1u << 2,
    kNode = 1u << 3,
};

struct HookSpec {
    std::string name;   // dotted host-API path
    EventCategory category = EventCategory::ExtensionApi;
    std::string action; // event action; equals name unless overridden
    bool record = true;
    ReturnPolicy returns = ReturnPolicy::Emulated;
    bool blocked = false; // the side effect is never carried out
    unsigned profiles = 0;
};

/// The single table of emulated host APIs. The guest prelude may only
/// report calls through names listed here.
class HostHookRegistry {
public:
    static const HostHookRegistry& builtin();

    const HookSpec* find(std::string_view name) const;
    const std::vector<HookSpec>& entries() const { return entries_; }

private:
    explicit HostHookRegistry(std::vector<HookSpec> entries);
    std::vector<HookSpec> entries_; // sorted by name
};

/// Name of the hook that reports guest access to anything not emulated.
inline constexpr std::string_view kUnimplementedApi = "unimplemented-api";

} // namespace extsleuth::sandbox
