// The interposers below replace libc symbols for the whole process, and
// fortified inline wrappers would clash with them.
#undef _FORTIFY_SOURCE

#include "host_watch.hpp"

#include <dlfcn.h>
#include <fcntl.h>
#include <unistd.h>

#include <atomic>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <mutex>

namespace hostwatch {
namespace {

std::atomic<bool> g_on{false};
std::atomic<std::size_t> g_sockets{0};
std::atomic<std::size_t> g_connects{0};
std::mutex g_mu;
std::vector<std::string>* g_paths = nullptr;
thread_local bool t_inside = false;

std::string absolute(int dirfd, const char* p)
{
    if (!p)
        return "?";
    if (p[0] == '/')
        return p;
    char base[4096] = {};
    if (dirfd == AT_FDCWD) {
        if (!getcwd(base, sizeof base))
            return p;
    } else {
        auto link = "/proc/self/fd/" + std::to_string(dirfd);
        auto n = readlink(link.c_str(), base, sizeof base - 1);
        if (n < 0)
            return p;
        base[n] = 0;
    }
    return std::string(base) + "/" + p;
}

void note_write(int dirfd, const char* p)
{
    if (!g_on || t_inside)
        return;
    t_inside = true;
    {
        std::lock_guard lk(g_mu);
        if (g_paths)
            g_paths->push_back(absolute(dirfd, p));
    }
    t_inside = false;
}

bool writes(int flags)
{
    return (flags & (O_WRONLY | O_RDWR | O_CREAT | O_TRUNC | O_APPEND)) != 0;
}

template <typename F>
F real(const char* name)
{
    return reinterpret_cast<F>(dlsym(RTLD_NEXT, name));
}

} // namespace

void start()
{
    std::lock_guard lk(g_mu);
    delete g_paths;
    g_paths = new std::vector<std::string>();
    g_sockets = 0;
    g_connects = 0;
    g_on = true;
}

Report stop()
{
    g_on = false;
    std::lock_guard lk(g_mu);
    Report r;
    r.sockets = g_sockets;
    r.connects = g_connects;
    if (g_paths)
        r.writtenPaths = *g_paths;
    return r;
}

} // namespace hostwatch

using hostwatch::note_write;
using hostwatch::real;
using hostwatch::writes;

extern "C" {

int socket(int domain, int type, int protocol)
{
    static auto fn = real<int (*)(int, int, int)>("socket");
    if (hostwatch::g_on)
        ++hostwatch::g_sockets;
    return fn(domain, type, protocol);
}

int connect(int fd, const struct sockaddr* addr, socklen_t len)
{
    static auto fn = real<int (*)(int, const struct sockaddr*, socklen_t)>("connect");
    if (hostwatch::g_on)
        ++hostwatch::g_connects;
    return fn(fd, addr, len);
}

#define EXTSLEUTH_OPEN(name)                                                                                           \
    int name(const char* path, int flags, ...)                                                                         \
    {                                                                                                                  \
        static auto fn = real<int (*)(const char*, int, ...)>(#name);                                                  \
        mode_t mode = 0;                                                                                               \
        if (flags & (O_CREAT | O_TMPFILE)) {                                                                           \
            va_list ap;                                                                                                \
            va_start(ap, flags);                                                                                       \
            mode = va_arg(ap, mode_t);                                                                                 \
            va_end(ap);                                                                                                \
        }                                                                                                              \
        if (writes(flags))                                                                                             \
            note_write(AT_FDCWD, path);                                                                                \
        return fn(path, flags, mode);                                                                                  \
    }
EXTSLEUTH_OPEN(open)
EXTSLEUTH_OPEN(open64)

#define EXTSLEUTH_OPENAT(name)                                                                                         \
    int name(int dirfd, const char* path, int flags, ...)                                                              \
    {                                                                                                                  \
        static auto fn = real<int (*)(int, const char*, int, ...)>(#name);                                             \
        mode_t mode = 0;                                                                                               \
        if (flags & (O_CREAT | O_TMPFILE)) {                                                                           \
            va_list ap;                                                                                                \
            va_start(ap, flags);                                                                                       \
            mode = va_arg(ap, mode_t);                                                                                 \
            va_end(ap);                                                                                                \
        }                                                                                                              \
        if (writes(flags))                                                                                             \
            note_write(dirfd, path);                                                                                   \
        return fn(dirfd, path, flags, mode);                                                                           \
    }
EXTSLEUTH_OPENAT(openat)
EXTSLEUTH_OPENAT(openat64)

int __open_2(const char* path, int flags)
{
    static auto fn = real<int (*)(const char*, int)>("__open_2");
    if (writes(flags))
        note_write(AT_FDCWD, path);
    return fn(path, flags);
}

int __open64_2(const char* path, int flags)
{
    static auto fn = real<int (*)(const char*, int)>("__open64_2");
    if (writes(flags))
        note_write(AT_FDCWD, path);
    return fn(path, flags);
}

int creat(const char* path, mode_t mode)
{
    static auto fn = real<int (*)(const char*, mode_t)>("creat");
    note_write(AT_FDCWD, path);
    return fn(path, mode);
}

FILE* fopen(const char* path, const char* mode)
{
    static auto fn = real<FILE* (*)(const char*, const char*)>("fopen");
    if (mode && std::strpbrk(mode, "wa+"))
        note_write(AT_FDCWD, path);
    return fn(path, mode);
}

FILE* fopen64(const char* path, const char* mode)
{
    static auto fn = real<FILE* (*)(const char*, const char*)>("fopen64");
    if (mode && std::strpbrk(mode, "wa+"))
        note_write(AT_FDCWD, path);
    return fn(path, mode);
}

int mkdir(const char* path, mode_t mode)
{
    static auto fn = real<int (*)(const char*, mode_t)>("mkdir");
    note_write(AT_FDCWD, path);
    return fn(path, mode);
}

int rename(const char* from, const char* to)
{
    static auto fn = real<int (*)(const char*, const char*)>("rename");
    note_write(AT_FDCWD, to);
    return fn(from, to);
}

int unlink(const char* path)
{
    static auto fn = real<int (*)(const char*)>("unlink");
    note_write(AT_FDCWD, path);
    return fn(path);
}

} // extern "C"
