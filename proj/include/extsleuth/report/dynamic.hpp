#pragma once

#include "extsleuth/detect/finding.hpp"
#include "extsleuth/detect/urls.hpp"
#include "extsleuth/sandbox/event.hpp"

#include <vector>

namespace extsleuth::report {

/// More unimplemented-api events than this yields an Info finding.
inline constexpr std::size_t kUnimplementedStorm = 50;

/// Maps sandbox event patterns to Dynamic-phase findings (ids unassigned;
/// run detect::finalize_findings over the combined list). Network findings
/// are merged per (rule, host) and anchored on the first event.
std::vector<detect::Finding> derive_dynamic_findings(const std::vector<sandbox::SandboxEvent>& events,
                                                     const detect::HostLists& lists = detect::HostLists::defaults());

} // namespace extsleuth::report
