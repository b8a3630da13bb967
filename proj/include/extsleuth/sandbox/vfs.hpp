#pragma once

#include "extsleuth/ingest/artifact.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace extsleuth::sandbox {

/// In-memory POSIX-style tree. The artifact is seeded read-write under
/// /ext, /tmp starts empty. Nothing here touches the host filesystem.
class VirtualFs {
public:
    static constexpr std::string_view kArtifactRoot = "/ext";
    static constexpr std::string_view kScratchRoot = "/tmp";

    VirtualFs();
    explicit VirtualFs(const std::vector<ingest::FileEntry>& files);

    /// Absolute, '.'/'..' resolved; relative paths are resolved against `cwd`.
    static std::string normalize(std::string_view path, std::string_view cwd = "/");

    std::optional<std::string> read(std::string_view path) const;
    /// Creates parent directories implicitly.
    void write(std::string_view path, std::string data, bool append = false);
    bool exists(std::string_view path) const;
    bool is_directory(std::string_view path) const;
    bool remove(std::string_view path);
    void mkdir(std::string_view path);
    /// Sorted immediate children; nullopt when not a directory.
    std::optional<std::vector<std::string>> list(std::string_view path) const;

    /// Paths written during the run, sorted.
    std::vector<std::string> written() const;

private:
    std::map<std::string, std::string> files_;
    std::set<std::string> dirs_;
    std::set<std::string> written_;

    void add_parents(const std::string& path);
};

} // namespace extsleuth::sandbox
