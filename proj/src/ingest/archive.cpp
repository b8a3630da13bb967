#include "extsleuth/ingest/archive.hpp"

#include "extsleuth/common/error.hpp"
#include "extsleuth/common/text.hpp"

#include <nlohmann/json.hpp>
#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <map>

namespace extsleuth::ingest {

namespace {

std::uint16_t rd16(std::string_view b, std::size_t off)
{
    if (off + 2 > b.size())
        throw Error(ErrorCode::CorruptArchive, "truncated read at offset " + std::to_string(off));
    return static_cast<std::uint16_t>(static_cast<unsigned char>(b[off]) |
                                      (static_cast<unsigned char>(b[off + 1]) << 8));
}

std::uint32_t rd32(std::string_view b, std::size_t off)
{
    if (off + 4 > b.size())
        throw Error(ErrorCode::CorruptArchive, "truncated read at offset " + std::to_string(off));
    return static_cast<std::uint32_t>(static_cast<unsigned char>(b[off])) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + 1])) << 8) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + 2])) << 16) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + 3])) << 24);
}

void wr16(std::string& out, std::uint16_t v)
{
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>(v >> 8));
}

void wr32(std::string& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

constexpr std::uint32_t kEocdSig = 0x06054b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kLocalSig = 0x04034b50;

// Raw deflate or gzip inflation, bounded by maxOut.
std::optional<std::string> inflate_bytes(std::string_view in, int windowBits, std::size_t maxOut,
                                         std::size_t expected = 0)
{
    z_stream zs {};
    if (inflateInit2(&zs, windowBits) != Z_OK)
        return std::nullopt;
    std::string out;
    if (expected)
        out.reserve(std::min(expected, maxOut));
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
    zs.avail_in = static_cast<uInt>(in.size());
    char buf[64 * 1024];
    int rc = Z_OK;
    while (true) {
        zs.next_out = reinterpret_cast<Bytef*>(buf);
        zs.avail_out = sizeof(buf);
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            return std::nullopt;
        }
        out.append(buf, sizeof(buf) - zs.avail_out);
        if (out.size() > maxOut) {
            inflateEnd(&zs);
            return std::nullopt;
        }
        if (rc == Z_STREAM_END) {
            // gzip allows concatenated members
            if (windowBits > MAX_WBITS && zs.avail_in >= 2 &&
                static_cast<unsigned char>(zs.next_in[0]) == 0x1f &&
                static_cast<unsigned char>(zs.next_in[1]) == 0x8b) {
                inflateReset(&zs);
                continue;
            }
            break;
        }
        if (zs.avail_in == 0 && zs.avail_out != 0) {
            // input exhausted without stream end
            inflateEnd(&zs);
            return std::nullopt;
        }
    }
    inflateEnd(&zs);
    return out;
}

std::string tar_field(std::string_view block, std::size_t off, std::size_t len)
{
    auto f = block.substr(off, len);
    auto nul = f.find('\0');
    return std::string(f.substr(0, nul));
}

std::optional<std::uint64_t> tar_number(std::string_view block, std::size_t off, std::size_t len)
{
    auto f = block.substr(off, len);
    if (!f.empty() && (static_cast<unsigned char>(f[0]) & 0x80)) {
        std::uint64_t v = static_cast<unsigned char>(f[0]) & 0x7F;
        for (std::size_t i = 1; i < f.size(); ++i)
            v = (v << 8) | static_cast<unsigned char>(f[i]);
        return v;
    }
    std::uint64_t v = 0;
    bool any = false;
    for (char c : f) {
        if (c == '\0' || c == ' ') {
            if (any)
                break;
            continue;
        }
        if (c < '0' || c > '7')
            return std::nullopt;
        v = v * 8 + static_cast<std::uint64_t>(c - '0');
        any = true;
    }
    return v;
}

std::map<std::string, std::string> parse_pax(std::string_view data)
{
    std::map<std::string, std::string> out;
    std::size_t pos = 0;
    while (pos < data.size()) {
        auto sp = data.find(' ', pos);
        if (sp == std::string_view::npos)
            break;
        std::size_t len = 0;
        try {
            len = std::stoul(std::string(data.substr(pos, sp - pos)));
        } catch (...) {
            break;
        }
        if (len == 0 || pos + len > data.size())
            break;
        auto rec = data.substr(sp + 1, len - (sp + 1 - pos));
        if (!rec.empty() && rec.back() == '\n')
            rec.remove_suffix(1);
        auto eq = rec.find('=');
        if (eq != std::string_view::npos)
            out[std::string(rec.substr(0, eq))] = std::string(rec.substr(eq + 1));
        pos += len;
    }
    return out;
}

} // namespace

std::optional<std::string> normalize_entry_path(std::string_view raw)
{
    if (raw.find('\0') != std::string_view::npos)
        return std::nullopt;
    std::string p(raw);
    std::replace(p.begin(), p.end(), '\\', '/');
    if (p.size() >= 2 && std::isalpha(static_cast<unsigned char>(p[0])) && p[1] == ':')
        return std::nullopt;
    std::string out;
    for (auto& seg : text::split(p, '/')) {
        if (seg.empty() || seg == ".")
            continue;
        if (seg == "..")
            return std::nullopt;
        if (!out.empty())
            out.push_back('/');
        out += seg;
    }
    if (out.empty())
        return std::nullopt;
    return out;
}

bool has_crx_magic(std::string_view b) { return b.size() >= 4 && b.substr(0, 4) == "Cr24"; }
bool has_zip_magic(std::string_view b) { return b.size() >= 2 && b.substr(0, 2) == "PK"; }
bool has_gzip_magic(std::string_view b)
{
    return b.size() >= 2 && static_cast<unsigned char>(b[0]) == 0x1f && static_cast<unsigned char>(b[1]) == 0x8b;
}

std::vector<RawEntry> read_zip(std::string_view b, std::vector<UnpackDiagnostic>& diags, const UnpackLimits& limits)
{
    if (b.size() < 22)
        throw Error(ErrorCode::CorruptArchive, "zip too small for end-of-central-directory record");
    std::size_t eocd = std::string_view::npos;
    std::size_t lowest = b.size() >= 22 + 0xFFFF ? b.size() - 22 - 0xFFFF : 0;
    for (std::size_t pos = b.size() - 22 + 1; pos-- > lowest;) {
        if (rd32(b, pos) == kEocdSig) {
            eocd = pos;
            break;
        }
    }
    if (eocd == std::string_view::npos)
        throw Error(ErrorCode::CorruptArchive, "zip end-of-central-directory not found");

    std::size_t count = rd16(b, eocd + 10);
    std::size_t cdSize = rd32(b, eocd + 12);
    std::size_t cdOffset = rd32(b, eocd + 16);
    if (cdOffset == 0xFFFFFFFFu || count == 0xFFFF)
        throw Error(ErrorCode::CorruptArchive, "zip64 archives are not supported");
    if (cdOffset + cdSize > eocd)
        throw Error(ErrorCode::CorruptArchive, "central directory out of bounds");
    if (count > limits.maxEntries)
        throw Error(ErrorCode::CorruptArchive, "too many entries");

    std::vector<RawEntry> out;
    std::size_t total = 0;
    std::size_t pos = cdOffset;
    for (std::size_t i = 0; i < count; ++i) {
        if (rd32(b, pos) != kCentralSig)
            throw Error(ErrorCode::CorruptArchive, "bad central directory signature");
        auto flags = rd16(b, pos + 8);
        auto method = rd16(b, pos + 10);
        auto crc = rd32(b, pos + 16);
        std::size_t csize = rd32(b, pos + 20);
        std::size_t usize = rd32(b, pos + 24);
        std::size_t nameLen = rd16(b, pos + 28);
        std::size_t extraLen = rd16(b, pos + 30);
        std::size_t commentLen = rd16(b, pos + 32);
        std::size_t localOff = rd32(b, pos + 42);
        if (pos + 46 + nameLen > b.size())
            throw Error(ErrorCode::CorruptArchive, "truncated central directory entry");
        std::string name(b.substr(pos + 46, nameLen));
        pos += 46 + nameLen + extraLen + commentLen;

        if (!name.empty() && name.back() == '/')
            continue; // directory
        if (flags & 1) {
            diags.push_back({name, "Encrypted"});
            continue;
        }
        if (usize > limits.maxEntryBytes || total + usize > limits.maxTotalBytes) {
            diags.push_back({name, "TooLarge"});
            continue;
        }
        if (rd32(b, localOff) != kLocalSig) {
            diags.push_back({name, "BadLocalHeader"});
            continue;
        }
        std::size_t dataOff = localOff + 30 + rd16(b, localOff + 26) + rd16(b, localOff + 28);
        if (dataOff + csize > b.size()) {
            diags.push_back({name, "Truncated"});
            continue;
        }
        auto data = b.substr(dataOff, csize);
        std::string bytes;
        if (method == 0) {
            bytes.assign(data);
        } else if (method == 8) {
            auto inflated = inflate_bytes(data, -MAX_WBITS, limits.maxEntryBytes, usize);
            if (!inflated) {
                diags.push_back({name, "InflateFailed"});
                continue;
            }
            bytes = std::move(*inflated);
        } else {
            diags.push_back({name, "UnsupportedCompression"});
            continue;
        }
        if (bytes.size() != usize ||
            crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size())) != crc) {
            diags.push_back({name, "CrcMismatch"});
            continue;
        }
        total += bytes.size();
        out.push_back({std::move(name), std::move(bytes)});
    }
    return out;
}

std::vector<RawEntry> read_tar(std::string_view b, std::vector<UnpackDiagnostic>& diags, const UnpackLimits& limits)
{
    std::vector<RawEntry> out;
    std::size_t pos = 0;
    std::size_t total = 0;
    std::string longName;
    std::map<std::string, std::string> pax;
    while (pos + 512 <= b.size()) {
        auto block = b.substr(pos, 512);
        if (std::all_of(block.begin(), block.end(), [](char c) { return c == '\0'; }))
            break;
        unsigned sum = 0;
        for (std::size_t i = 0; i < 512; ++i)
            sum += (i >= 148 && i < 156) ? ' ' : static_cast<unsigned char>(block[i]);
        auto stored = tar_number(block, 148, 8);
        if (!stored || *stored != sum)
            throw Error(ErrorCode::CorruptArchive, "tar header checksum mismatch at offset " + std::to_string(pos));
        auto size = tar_number(block, 124, 12);
        if (!size)
            throw Error(ErrorCode::CorruptArchive, "bad tar size field");
        char type = block[156];
        std::string name = tar_field(block, 0, 100);
        if (tar_field(block, 257, 5) == "ustar") {
            auto prefix = tar_field(block, 345, 155);
            if (!prefix.empty())
                name = prefix + "/" + name;
        }
        std::size_t dataOff = pos + 512;
        if (dataOff + *size > b.size())
            throw Error(ErrorCode::CorruptArchive, "truncated tar entry " + name);
        auto data = b.substr(dataOff, *size);
        pos = dataOff + ((*size + 511) / 512) * 512;

        if (type == 'L') {
            longName = std::string(data.substr(0, data.find('\0')));
            continue;
        }
        if (type == 'x') {
            pax = parse_pax(data);
            continue;
        }
        if (type == 'g')
            continue;
        if (!longName.empty()) {
            name = longName;
            longName.clear();
        }
        if (auto it = pax.find("path"); it != pax.end())
            name = it->second;
        pax.clear();
        if (type != '0' && type != '\0' && type != '7') {
            if (type != '5')
                diags.push_back({name, "UnsupportedEntryType"});
            continue;
        }
        if (*size > limits.maxEntryBytes || total + *size > limits.maxTotalBytes) {
            diags.push_back({name, "TooLarge"});
            continue;
        }
        if (out.size() >= limits.maxEntries)
            throw Error(ErrorCode::CorruptArchive, "too many entries");
        total += *size;
        out.push_back({std::move(name), std::string(data)});
    }
    return out;
}

std::string gunzip(std::string_view bytes, std::size_t maxBytes)
{
    auto out = inflate_bytes(bytes, 16 + MAX_WBITS, maxBytes);
    if (!out)
        throw Error(ErrorCode::CorruptArchive, "gzip stream is corrupt, truncated or too large");
    return std::move(*out);
}

std::string_view crx_payload(std::string_view b)
{
    if (!has_crx_magic(b))
        throw Error(ErrorCode::CorruptArchive, "missing Cr24 magic");
    auto version = rd32(b, 4);
    std::size_t start = 0;
    if (version == 3) {
        start = 12 + static_cast<std::size_t>(rd32(b, 8));
    } else if (version == 2) {
        start = 16 + static_cast<std::size_t>(rd32(b, 8)) + rd32(b, 12);
    } else {
        throw Error(ErrorCode::CorruptArchive, "unsupported CRX version " + std::to_string(version));
    }
    if (start > b.size())
        throw Error(ErrorCode::CorruptArchive, "CRX header length exceeds file size");
    return b.substr(start);
}

ArtifactKind detect_artifact_kind(std::string_view bytes, std::string_view hintName)
{
    if (bytes.empty())
        throw Error(ErrorCode::UnknownArtifactKind, "empty input");
    auto hint = text::to_lower(hintName);
    if (has_crx_magic(bytes))
        return ArtifactKind::ChromeExtension;
    if (has_zip_magic(bytes)) {
        std::vector<UnpackDiagnostic> diags;
        auto entries = read_zip(bytes, diags);
        bool vsixManifest = false;
        const RawEntry* chromeManifest = nullptr;
        for (auto& e : entries) {
            auto norm = normalize_entry_path(e.name);
            if (!norm)
                continue;
            if (*norm == "extension.vsixmanifest" || *norm == "extension/package.json")
                vsixManifest = true;
            if (*norm == "manifest.json")
                chromeManifest = &e;
        }
        if (vsixManifest || text::ends_with(hint, ".vsix"))
            return ArtifactKind::VscodeExtension;
        if (chromeManifest) {
            auto j = nlohmann::json::parse(chromeManifest->bytes, nullptr, false);
            if (j.is_object() && j.contains("manifest_version"))
                return ArtifactKind::ChromeExtension;
        }
        throw Error(ErrorCode::UnknownArtifactKind, "zip archive without a VSIX or extension manifest");
    }
    if (has_gzip_magic(bytes)) {
        UnpackLimits limits;
        auto tar = gunzip(bytes, limits.maxTotalBytes);
        std::vector<UnpackDiagnostic> diags;
        for (auto& e : read_tar(tar, diags, limits)) {
            auto norm = normalize_entry_path(e.name);
            if (norm && *norm == "package/package.json")
                return ArtifactKind::NpmPackage;
        }
        throw Error(ErrorCode::UnknownArtifactKind, "tarball without package/package.json");
    }
    throw Error(ErrorCode::UnknownArtifactKind, "no magic-byte rule matched");
}

UnpackResult unpack_artifact(std::string_view bytes, ArtifactKind kind, const UnpackLimits& limits)
{
    UnpackResult result;
    std::vector<RawEntry> raw;
    switch (kind) {
    case ArtifactKind::ChromeExtension: {
        auto zip = has_crx_magic(bytes) ? crx_payload(bytes) : bytes;
        if (!has_zip_magic(zip))
            throw Error(ErrorCode::CorruptArchive, "chrome extension payload is not a zip");
        raw = read_zip(zip, result.diagnostics, limits);
        break;
    }
    case ArtifactKind::VscodeExtension:
        if (!has_zip_magic(bytes))
            throw Error(ErrorCode::CorruptArchive, "VSIX is not a zip");
        raw = read_zip(bytes, result.diagnostics, limits);
        break;
    case ArtifactKind::NpmPackage: {
        if (!has_gzip_magic(bytes))
            throw Error(ErrorCode::CorruptArchive, "npm tarball is not gzip");
        auto tar = gunzip(bytes, limits.maxTotalBytes);
        raw = read_tar(tar, result.diagnostics, limits);
        break;
    }
    }

    // npm tarballs nest everything under "package/"
    auto member_name = [&](std::string_view n) {
        if (kind != ArtifactKind::NpmPackage)
            return n;
        while (text::starts_with(n, "./"))
            n.remove_prefix(2);
        if (text::starts_with(n, "package/"))
            n.remove_prefix(8);
        return n;
    };

    std::map<std::string, std::string> byPath;
    for (auto& e : raw) {
        auto norm = normalize_entry_path(member_name(e.name));
        if (!norm) {
            result.diagnostics.push_back({e.name, "UnsafePath"});
            continue;
        }
        byPath[*norm] = std::move(e.bytes);
    }
    for (auto& [path, data] : byPath)
        result.files.push_back(make_file_entry(path, std::move(data)));
    return result;
}

std::string write_zip(const std::vector<ZipWriteEntry>& entries)
{
    std::string out;
    std::string central;
    for (auto& e : entries) {
        auto crc = crc32(0L, reinterpret_cast<const Bytef*>(e.bytes.data()), static_cast<uInt>(e.bytes.size()));
        std::string data;
        std::uint16_t method = 0;
        if (e.deflate && !e.bytes.empty()) {
            z_stream zs {};
            deflateInit2(&zs, 9, Z_DEFLATED, -MAX_WBITS, 8, Z_DEFAULT_STRATEGY);
            data.resize(deflateBound(&zs, static_cast<uLong>(e.bytes.size())));
            zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(e.bytes.data()));
            zs.avail_in = static_cast<uInt>(e.bytes.size());
            zs.next_out = reinterpret_cast<Bytef*>(data.data());
            zs.avail_out = static_cast<uInt>(data.size());
            deflate(&zs, Z_FINISH);
            data.resize(zs.total_out);
            deflateEnd(&zs);
            method = 8;
        } else {
            data = e.bytes;
        }
        auto localOff = static_cast<std::uint32_t>(out.size());
        auto header = [&](std::string& dst, bool isCentral) {
            wr32(dst, isCentral ? kCentralSig : kLocalSig);
            if (isCentral)
                wr16(dst, 20);
            wr16(dst, 20);
            wr16(dst, 0);
            wr16(dst, method);
            wr16(dst, 0);      // time
            wr16(dst, 0x21);   // 1980-01-01
            wr32(dst, static_cast<std::uint32_t>(crc));
            wr32(dst, static_cast<std::uint32_t>(data.size()));
            wr32(dst, static_cast<std::uint32_t>(e.bytes.size()));
            wr16(dst, static_cast<std::uint16_t>(e.name.size()));
            wr16(dst, 0);
            if (isCentral) {
                wr16(dst, 0);
                wr16(dst, 0);
                wr16(dst, 0);
                wr32(dst, 0);
                wr32(dst, localOff);
            }
            dst += e.name;
        };
        header(out, false);
        out += data;
        header(central, true);
    }
    auto cdOff = static_cast<std::uint32_t>(out.size());
    out += central;
    wr32(out, kEocdSig);
    wr16(out, 0);
    wr16(out, 0);
    wr16(out, static_cast<std::uint16_t>(entries.size()));
    wr16(out, static_cast<std::uint16_t>(entries.size()));
    wr32(out, static_cast<std::uint32_t>(central.size()));
    wr32(out, cdOff);
    wr16(out, 0);
    return out;
}

std::string write_tar(const std::vector<RawEntry>& entries)
{
    std::string out;
    for (auto& e : entries) {
        std::string block(512, '\0');
        std::string name = e.name;
        std::string prefix;
        if (name.size() > 100) {
            auto cut = name.rfind('/', 155);
            if (cut == std::string::npos || name.size() - cut - 1 > 100)
                throw Error(ErrorCode::CorruptArchive, "tar name too long: " + name);
            prefix = name.substr(0, cut);
            name = name.substr(cut + 1);
        }
        std::memcpy(block.data(), name.data(), name.size());
        std::snprintf(block.data() + 100, 8, "%07o", 0644);
        std::snprintf(block.data() + 108, 8, "%07o", 0);
        std::snprintf(block.data() + 116, 8, "%07o", 0);
        std::snprintf(block.data() + 124, 12, "%011llo", static_cast<unsigned long long>(e.bytes.size()));
        std::snprintf(block.data() + 136, 12, "%011o", 0);
        block[156] = '0';
        std::memcpy(block.data() + 257, "ustar", 5);
        block[263] = '0';
        block[264] = '0';
        std::memcpy(block.data() + 345, prefix.data(), prefix.size());
        std::memset(block.data() + 148, ' ', 8);
        unsigned sum = 0;
        for (char c : block)
            sum += static_cast<unsigned char>(c);
        std::snprintf(block.data() + 148, 8, "%06o", sum);
        block[155] = ' ';
        out += block;
        out += e.bytes;
        out.append((512 - e.bytes.size() % 512) % 512, '\0');
    }
    out.append(1024, '\0');
    return out;
}

std::string gzip_compress(std::string_view raw)
{
    z_stream zs {};
    deflateInit2(&zs, 9, Z_DEFLATED, 16 + MAX_WBITS, 8, Z_DEFAULT_STRATEGY);
    std::string out(deflateBound(&zs, static_cast<uLong>(raw.size())) + 32, '\0');
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(raw.data()));
    zs.avail_in = static_cast<uInt>(raw.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    deflate(&zs, Z_FINISH);
    out.resize(zs.total_out);
    deflateEnd(&zs);
    return out;
}

std::string write_crx3(std::string_view zip, std::string_view header)
{
    std::string out = "Cr24";
    wr32(out, 3);
    wr32(out, static_cast<std::uint32_t>(header.size()));
    out += header;
    out += zip;
    return out;
}

} // namespace extsleuth::ingest
