#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Counts host side effects made by this process while watching: sockets
// created, connect() calls, and paths opened for writing or created,
// renamed or removed. Works by interposing the libc entry points, so the
// executable must export its symbols (ENABLE_EXPORTS).
namespace hostwatch {

struct Report {
    std::size_t sockets = 0;
    std::size_t connects = 0;
    std::vector<std::string> writtenPaths; // absolute
};

void start();
Report stop();

} // namespace hostwatch
