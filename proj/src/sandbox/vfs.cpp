#include "extsleuth/sandbox/vfs.hpp"
#include "extsleuth/common/text.hpp"

namespace extsleuth::sandbox {

VirtualFs::VirtualFs()
{
    dirs_.insert("/");
    dirs_.insert(std::string(kArtifactRoot));
    dirs_.insert(std::string(kScratchRoot));
}

VirtualFs::VirtualFs(const std::vector<ingest::FileEntry>& files)
    : VirtualFs()
{
    for (auto& f : files) {
        auto p = normalize(f.path, kArtifactRoot);
        files_[p] = f.bytes;
        add_parents(p);
    }
}

std::string VirtualFs::normalize(std::string_view path, std::string_view cwd)
{
    std::string joined;
    if (!path.empty() && (path[0] == '/' || path[0] == '\\'))
        joined = std::string(path);
    else
        joined = std::string(cwd) + "/" + std::string(path);
    for (auto& c : joined)
        if (c == '\\')
            c = '/';
    std::vector<std::string> parts;
    for (auto& seg : text::split(joined, '/')) {
        if (seg.empty() || seg == ".")
            continue;
        if (seg == "..") {
            if (!parts.empty())
                parts.pop_back();
            continue;
        }
        parts.push_back(seg);
    }
    std::string out;
    for (auto& p : parts)
        out += "/" + p;
    return out.empty() ? "/" : out;
}

void VirtualFs::add_parents(const std::string& path)
{
    auto p = path;
    while (true) {
        auto slash = p.rfind('/');
        if (slash == std::string::npos)
            break;
        p = slash == 0 ? "/" : p.substr(0, slash);
        dirs_.insert(p);
        if (p == "/")
            break;
    }
}

std::optional<std::string> VirtualFs::read(std::string_view path) const
{
    auto it = files_.find(normalize(path));
    if (it == files_.end())
        return std::nullopt;
    return it->second;
}

void VirtualFs::write(std::string_view path, std::string data, bool append)
{
    auto p = normalize(path);
    if (append)
        files_[p] += data;
    else
        files_[p] = std::move(data);
    add_parents(p);
    written_.insert(p);
}

bool VirtualFs::exists(std::string_view path) const
{
    auto p = normalize(path);
    return files_.count(p) || dirs_.count(p);
}

bool VirtualFs::is_directory(std::string_view path) const
{
    return dirs_.count(normalize(path)) > 0;
}

bool VirtualFs::remove(std::string_view path)
{
    return files_.erase(normalize(path)) > 0;
}

void VirtualFs::mkdir(std::string_view path)
{
    auto p = normalize(path);
    dirs_.insert(p);
    add_parents(p);
}

std::optional<std::vector<std::string>> VirtualFs::list(std::string_view path) const
{
    auto p = normalize(path);
    if (!dirs_.count(p))
        return std::nullopt;
    auto prefix = p == "/" ? std::string("/") : p + "/";
    std::set<std::string> names;
    auto collect = [&](const std::string& full) {
        if (full.size() <= prefix.size() || full.compare(0, prefix.size(), prefix) != 0)
            return;
        auto rest = full.substr(prefix.size());
        names.insert(rest.substr(0, rest.find('/')));
    };
    for (auto& [f, _] : files_)
        collect(f);
    for (auto& d : dirs_)
        collect(d);
    return std::vector<std::string>(names.begin(), names.end());
}

std::vector<std::string> VirtualFs::written() const
{
    return {written_.begin(), written_.end()};
}

} // namespace extsleuth::sandbox
